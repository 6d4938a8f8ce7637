#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "../support/properties.hpp"
#include "imatch/engines.hpp"
#include "imatch/fixtures.hpp"
#include "imatch/prefgen.hpp"
#include "imatch/stability.hpp"
#include "imatch/theory.hpp"

namespace imatch {
namespace {

using Pairs = std::vector<std::pair<int, int>>;

// Two doctors and two hospitals where only d0 and h0 find each other acceptable.
Market single_pair_market() {
  return Market({Preference({0, 1}, 1), Preference({0, 1}, 0)},
                {Preference({0, 1}, 1), Preference({0, 1}, 0)});
}

TEST(InterviewDA, HoardingBefore) {
  const auto m = fixtures::hoarding_market();
  EXPECT_EQ(interview_da(m, fixtures::hoarding_before()), fixtures::hoarding_interviews_before());
}

TEST(InterviewDA, HoardingAfter) {
  const auto m = fixtures::hoarding_market();
  EXPECT_EQ(interview_da(m, fixtures::hoarding_after()), fixtures::hoarding_interviews_after());
}

TEST(InterviewDA, CommonThreeByThreeAtTwoTwo) {
  const auto m = common_market(3, 3);
  const auto nu = interview_da(m, Arrangement::homogeneous(m, 2, 2));
  EXPECT_EQ(nu.of_hospital(0), (std::vector<int>{0, 1}));
  EXPECT_EQ(nu.of_hospital(1), (std::vector<int>{0, 1}));
  EXPECT_EQ(nu.of_hospital(2), (std::vector<int>{2}));
}

TEST(InterviewDA, OutputIsValidAndPairwiseStable) {
  Rng rng(7);
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const int nd = 2 + static_cast<int>(rng.below(7));
    const int nh = 2 + static_cast<int>(rng.below(7));
    const auto m = sample_uniform_profile(nd, nh, seed, 0.3);
    std::vector<int> hc(static_cast<std::size_t>(nh)), dc(static_cast<std::size_t>(nd));
    for (auto& c : hc) c = 1 + static_cast<int>(rng.below(4));
    for (auto& c : dc) c = 1 + static_cast<int>(rng.below(4));
    const Arrangement a(hc, dc);
    const auto nu = interview_da(m, a);
    ASSERT_NO_THROW(nu.validate(m, a));
    ASSERT_TRUE(is_pairwise_stable(nu, m, a)) << "seed " << seed;
  }
}

TEST(InterviewDA, HospitalOptimalAmongPairwiseStable) {
  Rng rng(11);
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto m = sample_uniform_profile(3, 3, seed, 0.2);
    std::vector<int> hc(3), dc(3);
    for (auto& c : hc) c = 1 + static_cast<int>(rng.below(2));
    for (auto& c : dc) c = 1 + static_cast<int>(rng.below(2));
    const Arrangement a(hc, dc);
    const auto best = interview_da(m, a);
    for (const auto& other : testing::all_interview_matchings(m, a)) {
      if (!is_pairwise_stable(other, m, a)) continue;
      ++checked;
      for (int h = 0; h < 3; ++h) {
        ASSERT_TRUE(testing::hospital_weakly_prefers(m, a, h, best, other)) << "seed " << seed;
      }
    }
  }
  EXPECT_GT(checked, 150);
}

TEST(InterviewDA, Deterministic) {
  const auto m = sample_uniform_profile(8, 7, 5, 0.2);
  const auto a = Arrangement::homogeneous(m, 3, 2);
  Trace t1, t2;
  EXPECT_EQ(interview_da(m, a, &t1), interview_da(m, a, &t2));
  EXPECT_EQ(t1, t2);
}

Market relabel(const Market& m, const std::vector<int>& pd, const std::vector<int>& ph) {
  std::vector<Preference> doctors(pd.size()), hospitals(ph.size());
  for (std::size_t d = 0; d < pd.size(); ++d) {
    std::vector<int> ranked;
    for (int h : m.doctor(static_cast<int>(d)).ranked()) ranked.push_back(ph[static_cast<std::size_t>(h)]);
    doctors[static_cast<std::size_t>(pd[d])] = Preference(ranked, m.doctor(static_cast<int>(d)).acceptable_count());
  }
  for (std::size_t h = 0; h < ph.size(); ++h) {
    std::vector<int> ranked;
    for (int d : m.hospital(static_cast<int>(h)).ranked()) ranked.push_back(pd[static_cast<std::size_t>(d)]);
    hospitals[static_cast<std::size_t>(ph[h])] = Preference(ranked, m.hospital(static_cast<int>(h)).acceptable_count());
  }
  return Market(std::move(doctors), std::move(hospitals));
}

// Processing order inside a round must not matter: relabeling agents and
// mapping the result back gives the same interview matching.
TEST(InterviewDA, PermutationInvariant) {
  Rng rng(3);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto m = sample_uniform_profile(6, 5, seed, 0.3);
    std::vector<int> pd(6), ph(5);
    std::iota(pd.begin(), pd.end(), 0);
    std::iota(ph.begin(), ph.end(), 0);
    for (std::size_t j = pd.size(); j > 1; --j) std::swap(pd[j - 1], pd[rng.below(j)]);
    for (std::size_t j = ph.size(); j > 1; --j) std::swap(ph[j - 1], ph[rng.below(j)]);
    const auto a = Arrangement::homogeneous(m, 2, 3);
    const auto nu = interview_da(m, a);
    const auto nu_perm = interview_da(relabel(m, pd, ph), a);
    Pairs back;
    for (auto [d, h] : nu.pairs()) back.emplace_back(pd[static_cast<std::size_t>(d)], ph[static_cast<std::size_t>(h)]);
    EXPECT_EQ(nu_perm, InterviewMatching(6, 5, back)) << "seed " << seed;
  }
}

TEST(Trace, HoardingRoundOneRejection) {
  const auto m = fixtures::hoarding_market();
  Trace trace;
  interview_da(m, fixtures::hoarding_before(), &trace);
  const TraceEvent h2_to_d1{1, Side::Hospital, 1, 0, Outcome::Rejected};
  EXPECT_NE(std::ranges::find(trace, h2_to_d1), trace.end());
  for (const auto& e : trace) EXPECT_EQ(e.proposer_side, Side::Hospital);
  EXPECT_TRUE(std::ranges::is_sorted(trace, {}, &TraceEvent::round));
}

TEST(Trace, SingleMutuallyAcceptablePair) {
  const auto m = single_pair_market();
  Trace final_trace, interview_trace;
  const auto mu = doctor_da(m, &final_trace);
  ASSERT_EQ(final_trace.size(), 1u);
  EXPECT_EQ(final_trace[0], (TraceEvent{1, Side::Doctor, 0, 0, Outcome::Accepted}));
  EXPECT_EQ(mu, Matching(2, 2, Pairs{{0, 0}}));
  interview_da(m, Arrangement::homogeneous(m, 1, 1), &interview_trace);
  ASSERT_EQ(interview_trace.size(), 1u);
  EXPECT_EQ(interview_trace[0], (TraceEvent{1, Side::Hospital, 0, 0, Outcome::Accepted}));
}

TEST(Trace, ReplayReconstructsOutputs) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto m = sample_uniform_profile(7, 6, seed, 0.3);
    const auto a = Arrangement::homogeneous(m, 1 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 4));
    Trace ti, tf;
    const auto nu = interview_da(m, a, &ti);
    EXPECT_EQ(replay_interviews(ti, 7, 6), nu);
    const auto mu = doctor_da(restrict_profile(m, nu), &tf);
    EXPECT_EQ(replay_matching(tf, 7, 6), mu);
  }
}

TEST(Trace, Csv) {
  Trace trace{{1, Side::Hospital, 1, 0, Outcome::Rejected}, {2, Side::Doctor, 3, 2, Outcome::Accepted}};
  std::ostringstream out;
  write_trace_csv(out, trace);
  EXPECT_EQ(out.str(),
            "round,proposer_side,proposer,proposee,outcome\n"
            "1,hospital,1,0,rejected\n"
            "2,doctor,3,2,accepted\n");
}

TEST(DoctorDA, HoardingRestrictedProfiles) {
  const auto m = fixtures::hoarding_market();
  EXPECT_EQ(doctor_da(restrict_profile(m, fixtures::hoarding_interviews_before())),
            fixtures::hoarding_matching_before());
  EXPECT_EQ(doctor_da(restrict_profile(m, fixtures::hoarding_interviews_after())),
            fixtures::hoarding_matching_after());
}

TEST(DoctorDA, NothingAcceptable) {
  const Market m({Preference({0, 1}, 0), Preference({1, 0}, 0)},
                 {Preference({0, 1}, 2), Preference({1, 0}, 2)});
  EXPECT_EQ(doctor_da(m).matched_count(), 0);
}

TEST(DoctorDA, EqualsDoctorOptimalStableMatching) {
  Rng rng(99);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int nd = 2 + static_cast<int>(rng.below(3));
    const int nh = 2 + static_cast<int>(rng.below(3));
    const auto m = sample_uniform_profile(nd, nh, seed, 0.3);
    const auto mu = doctor_da(m);
    const auto stable = stable_set_bruteforce(m);
    ASSERT_NE(std::ranges::find(stable, mu), stable.end()) << "seed " << seed;
    ASSERT_TRUE(is_doctor_optimal(mu, stable, m)) << "seed " << seed;
  }
}

TEST(TwoStep, MatchesComposition) {
  const auto m = sample_uniform_profile(6, 6, 42, 0.2);
  const auto a = Arrangement::homogeneous(m, 2, 2);
  const auto out = run_two_step(m, a);
  EXPECT_EQ(out.interviews, interview_da(m, a));
  EXPECT_EQ(out.matching, doctor_da(restrict_profile(m, out.interviews)));
  for (auto [d, h] : out.matching.pairs()) EXPECT_TRUE(out.interviews.contains(d, h));
}

TEST(TwoStep, DimensionMismatch) {
  const auto m = common_market(3, 3);
  EXPECT_THROW(run_two_step(m, Arrangement::homogeneous(2, 3, 1, 1)), std::invalid_argument);
}

}  // namespace
}  // namespace imatch
