#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "imatch/market.hpp"

namespace imatch {

/// Every blocking (doctor, hospital) pair of a matching, sorted by doctor
/// then by hospital index.
struct BlockReport {
  std::vector<std::pair<int, int>> pairs;

  std::size_t count() const noexcept { return pairs.size(); }
};

/// Exact enumeration of blocking pairs against the full profile in `market`:
/// both sides strictly prefer each other to their assignment, with unmatched
/// agents comparing against their outside option.
BlockReport blocking_pairs(const Matching& matching, const Market& market);

// Same count as blocking_pairs(...).count() without materializing the pairs.
std::size_t count_blocking_pairs(const Matching& matching, const Market& market);

inline bool is_stable(const Matching& matching, const Market& market) {
  return count_blocking_pairs(matching, market) == 0;
}

/// No non-interviewing pair where each side has slack or holds a strictly
/// worse interview.
bool is_pairwise_stable(const InterviewMatching& interviews, const Market& market,
                        const Arrangement& arrangement);

/// Whether the two-step final matching of `arrangement` is stable under the
/// full profile.
bool is_adequate(const Market& market, const Arrangement& arrangement);

/// Filled positions over hospitals, in [0, 1].
double match_rate(const Matching& matching, const Market& market);

/// Largest total number of agents stable_set_bruteforce accepts.
inline constexpr int kBruteForceAgentLimit = 16;

/// All stable matchings of `market` (partial matchings included), found by
/// exhaustive enumeration. Throws BudgetExceeded above kBruteForceAgentLimit
/// agents. Order is deterministic.
std::vector<Matching> stable_set_bruteforce(const Market& market);

/// True when every doctor weakly prefers `candidate` to every matching in
/// `stable_set`.
bool is_doctor_optimal(const Matching& candidate, const std::vector<Matching>& stable_set,
                       const Market& market);

// CSV with header: doctor,hospital
void write_block_report_csv(std::ostream& out, const BlockReport& report);

}  // namespace imatch
