#pragma once

// Property checks shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "imatch/choice.hpp"
#include "imatch/engines.hpp"
#include "imatch/market.hpp"
#include "imatch/prefgen.hpp"
#include "imatch/stability.hpp"

namespace imatch::testing {

struct MonotonicityCounts {
  int dropped_old = 0;  // a doctor rejects a hospital she interviewed with under the lower caps
  int better_new = 0;  // a new interview that the doctor ranks at or above her old match
  int better_new_matched = 0;  // the better_new cases where the doctor was matched before
  int dropped_preferred = 0;  // a hospital drops a doctor it prefers to one it newly keeps
};

// Runs (iota, kappa) and (iota, kappa_hi) on `market` and counts
// violations between them.
inline MonotonicityCounts check_cap_increase(const Market& market, const Arrangement& low,
                                const Arrangement& high) {
  MonotonicityCounts out;
  const auto before = run_two_step(market, low);
  Trace trace;
  const auto nu_hi = interview_da(market, high, &trace);

  for (const auto& e : trace) {
    if (e.outcome == Outcome::Rejected && before.interviews.contains(e.proposee, e.proposer)) {
      ++out.dropped_old;
    }
  }
  for (int d = 0; d < market.n_doctors(); ++d) {
    for (int h : nu_hi.of_doctor(d)) {
      if (before.interviews.contains(d, h)) continue;
      if (!market.prefers(AgentId::doctor(d), before.matching.of_doctor(d), h)) {
        ++out.better_new;
        out.better_new_matched += before.matching.of_doctor(d).has_value();
      }
    }
  }
  for (int h = 0; h < market.n_hospitals(); ++h) {
    const AgentId hospital = AgentId::hospital(h);
    for (int d : nu_hi.of_hospital(h)) {
      for (int d_old : before.interviews.of_hospital(h)) {
        if (market.prefers(hospital, d_old, d) && !nu_hi.contains(d_old, h)) ++out.dropped_preferred;
      }
    }
  }
  return out;
}

// Random componentwise increase of the doctor caps, each by 0..max_step, with
// at least one strict increase.
inline Arrangement raise_doctor_caps(const Arrangement& base, Rng& rng, int max_step) {
  auto caps = base.doctor_caps();
  bool raised = false;
  for (auto& c : caps) {
    const int step = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_step) + 1));
    c += step;
    raised |= step > 0;
  }
  if (!raised) caps[rng.below(caps.size())] += 1;
  return Arrangement(base.hospital_caps(), std::move(caps));
}

// All interview matchings within the caps that use mutually acceptable pairs
// only. Exponential; for markets with a handful of acceptable pairs.
inline std::vector<InterviewMatching> all_interview_matchings(const Market& market,
                                                              const Arrangement& arrangement) {
  std::vector<std::pair<int, int>> candidates;
  for (int d = 0; d < market.n_doctors(); ++d) {
    for (int h = 0; h < market.n_hospitals(); ++h) {
      if (market.mutually_acceptable(d, h)) candidates.emplace_back(d, h);
    }
  }
  std::vector<InterviewMatching> out;
  const std::uint32_t subsets = 1u << candidates.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::vector<int> load_d(static_cast<std::size_t>(market.n_doctors()));
    std::vector<int> load_h(static_cast<std::size_t>(market.n_hospitals()));
    std::vector<std::pair<int, int>> pairs;
    bool fits = true;
    for (std::size_t i = 0; i < candidates.size() && fits; ++i) {
      if (!(mask >> i & 1u)) continue;
      const auto [d, h] = candidates[i];
      fits = ++load_d[static_cast<std::size_t>(d)] <= arrangement.doctor_cap(d) &&
             ++load_h[static_cast<std::size_t>(h)] <= arrangement.hospital_cap(h);
      pairs.push_back(candidates[i]);
    }
    if (fits) out.emplace_back(market.n_doctors(), market.n_hospitals(), pairs);
  }
  return out;
}

// Hospital h's interview set in `best` is revealed preferred to its set in
// `other`: choosing from the union returns `best`'s set.
inline bool hospital_weakly_prefers(const Market& market, const Arrangement& arrangement, int h,
                                    const InterviewMatching& best, const InterviewMatching& other) {
  std::vector<int> offered = best.of_hospital(h);
  for (int d : other.of_hospital(h)) {
    if (std::ranges::find(offered, d) == offered.end()) offered.push_back(d);
  }
  auto chosen = choose(market, AgentId::hospital(h), offered, arrangement.hospital_cap(h));
  std::ranges::sort(chosen);
  return chosen == best.of_hospital(h);
}

}  // namespace imatch::testing
