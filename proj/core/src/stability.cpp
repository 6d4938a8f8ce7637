#include "imatch/stability.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <string>

#include "imatch/engines.hpp"
#include "imatch/errors.hpp"

namespace imatch {

namespace {

void check_dims(const Matching& matching, const Market& market) {
  if (matching.n_doctors() != market.n_doctors() ||
      matching.n_hospitals() != market.n_hospitals()) {
    throw DimensionError("matching dimensions differ from market");
  }
}

// Visits each blocking pair. Only the prefix of a doctor's list that she
// strictly prefers to her assignment can block.
template <typename Visit>
void for_each_blocking_pair(const Matching& matching, const Market& market, Visit&& visit) {
  check_dims(matching, market);
  for (int d = 0; d < market.n_doctors(); ++d) {
    const auto doctor = AgentId::doctor(d);
    const auto current = matching.of_doctor(d);
    const auto acceptable = market.doctor(d).acceptable();
    const auto better = current ? market.rank(doctor, *current) : acceptable.size();
    for (std::size_t pos = 0; pos < better; ++pos) {
      const int h = acceptable[pos];
      if (market.prefers(AgentId::hospital(h), d, matching.of_hospital(h))) visit(d, h);
    }
  }
}

}  // namespace

BlockReport blocking_pairs(const Matching& matching, const Market& market) {
  BlockReport report;
  for_each_blocking_pair(matching, market, [&](int d, int h) { report.pairs.emplace_back(d, h); });
  std::ranges::sort(report.pairs);
  return report;
}

std::size_t count_blocking_pairs(const Matching& matching, const Market& market) {
  std::size_t count = 0;
  for_each_blocking_pair(matching, market, [&](int, int) { ++count; });
  return count;
}

bool is_pairwise_stable(const InterviewMatching& interviews, const Market& market,
                        const Arrangement& arrangement) {
  arrangement.check_dimensions(market);
  // An agent "wants" a partner if it has slack or holds a strictly worse interview.
  auto wants = [&](AgentId agent, int partner) {
    if (!market.accepts(agent, partner)) return false;
    const auto& current = interviews.of(agent);
    if (static_cast<int>(current.size()) < arrangement.cap(agent)) return true;
    const auto r = market.rank(agent, partner);
    return std::ranges::any_of(current, [&](int held) { return market.rank(agent, held) > r; });
  };
  for (int d = 0; d < market.n_doctors(); ++d) {
    for (int h = 0; h < market.n_hospitals(); ++h) {
      if (interviews.contains(d, h)) continue;
      if (wants(AgentId::doctor(d), h) && wants(AgentId::hospital(h), d)) return false;
    }
  }
  return true;
}

bool is_adequate(const Market& market, const Arrangement& arrangement) {
  return is_stable(run_two_step(market, arrangement).matching, market);
}

double match_rate(const Matching& matching, const Market& market) {
  check_dims(matching, market);
  return static_cast<double>(matching.matched_count()) / market.n_hospitals();
}

std::vector<Matching> stable_set_bruteforce(const Market& market) {
  const int agents = market.n_doctors() + market.n_hospitals();
  if (agents > kBruteForceAgentLimit) {
    throw BudgetExceeded("stable_set_bruteforce refuses markets with " + std::to_string(agents) +
                             " agents (limit " + std::to_string(kBruteForceAgentLimit) + ")",
                         static_cast<double>(agents));
  }
  const int n_d = market.n_doctors();
  const int n_h = market.n_hospitals();
  std::vector<Matching> stable;
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> used(static_cast<std::size_t>(n_h), false);

  // Each doctor is either unmatched or takes an unused mutually acceptable hospital.
  std::function<void(int)> extend = [&](int d) {
    if (d == n_d) {
      Matching candidate(n_d, n_h, pairs);
      if (is_stable(candidate, market)) stable.push_back(std::move(candidate));
      return;
    }
    extend(d + 1);
    for (int h = 0; h < n_h; ++h) {
      if (used[static_cast<std::size_t>(h)] || !market.mutually_acceptable(d, h)) continue;
      used[static_cast<std::size_t>(h)] = true;
      pairs.emplace_back(d, h);
      extend(d + 1);
      pairs.pop_back();
      used[static_cast<std::size_t>(h)] = false;
    }
  };
  extend(0);
  return stable;
}

bool is_doctor_optimal(const Matching& candidate, const std::vector<Matching>& stable_set,
                       const Market& market) {
  return std::ranges::all_of(stable_set, [&](const Matching& other) {
    return compare_welfare(candidate, other, market, Side::Doctor).prefers_b == 0;
  });
}

void write_block_report_csv(std::ostream& out, const BlockReport& report) {
  out << "doctor,hospital\n";
  for (const auto& [d, h] : report.pairs) out << d << ',' << h << '\n';
}

}  // namespace imatch
