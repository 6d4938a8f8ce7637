#include <gtest/gtest.h>

#include <algorithm>

#include "imatch/choice.hpp"
#include "imatch/fixtures.hpp"
#include "imatch/prefgen.hpp"

namespace imatch {
namespace {

Market four_hospitals(std::vector<int> doctor0_list, std::size_t acceptable) {
  std::vector<Preference> doctors{Preference(std::move(doctor0_list), acceptable),
                                  Preference::all_acceptable({0, 1, 2, 3})};
  std::vector<Preference> hospitals(4, Preference::all_acceptable({0, 1}));
  return Market(std::move(doctors), std::move(hospitals));
}

TEST(Choose, KeepsBestWithinCapacity) {
  const auto m = four_hospitals({0, 1, 3, 2}, 4);
  const std::vector<int> offered{2, 0, 3};
  EXPECT_EQ(choose(m, AgentId::doctor(0), offered, 2), (std::vector<int>{0, 3}));
}

TEST(Choose, EmptyOffer) {
  const auto m = four_hospitals({0, 1, 3, 2}, 4);
  EXPECT_TRUE(choose(m, AgentId::doctor(0), {}, 3).empty());
}

TEST(Choose, HoardingDoctorOneRejectsTheRest) {
  const auto m = fixtures::hoarding_market();
  const std::vector<int> offered{0, 1, 2, 3};
  EXPECT_EQ(choose(m, AgentId::doctor(0), offered, 1), (std::vector<int>{0}));
}

TEST(Choose, NeverReturnsUnacceptable) {
  const auto m = four_hospitals({0, 1, 3, 2}, 2);
  const std::vector<int> offered{3, 2};
  EXPECT_TRUE(choose(m, AgentId::doctor(0), offered, 4).empty());
  const std::vector<int> mixed{3, 1, 2};
  EXPECT_EQ(choose(m, AgentId::doctor(0), mixed, 4), (std::vector<int>{1}));
}

TEST(Choose, AllWhenUnderCapacity) {
  const auto m = four_hospitals({0, 1, 3, 2}, 4);
  const std::vector<int> offered{2, 1};
  EXPECT_EQ(choose(m, AgentId::doctor(0), offered, 5), (std::vector<int>{1, 2}));
}

TEST(Choose, RejectsZeroCapacity) {
  const auto m = four_hospitals({0, 1, 3, 2}, 4);
  EXPECT_THROW(choose(m, AgentId::doctor(0), {}, 0), std::invalid_argument);
}

std::vector<int> subset(std::uint32_t mask, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1u) out.push_back(i);
  }
  return out;
}

bool contains(const std::vector<int>& xs, int x) { return std::ranges::find(xs, x) != xs.end(); }

// Capacity bound, monotone selection and substitutability over every offered
// set of random preferences.
TEST(Choose, Properties) {
  constexpr int kPartners = 6;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto m = sample_uniform_profile(kPartners, kPartners, seed, 0.5);
    for (int agent = 0; agent < kPartners; ++agent) {
      const auto who = AgentId::hospital(agent);
      for (int cap = 1; cap <= 3; ++cap) {
        for (std::uint32_t mask = 0; mask < (1u << kPartners); ++mask) {
          const auto offered = subset(mask, kPartners);
          const auto chosen = choose(m, who, offered, cap);
          ASSERT_LE(static_cast<int>(chosen.size()), cap);
          for (int x : offered) {
            if (contains(chosen, x) || !m.accepts(who, x)) continue;
            for (int c : chosen) ASSERT_TRUE(m.prefers(who, c, x));
          }
          for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
            const auto smaller = choose(m, who, subset(sub, kPartners), cap);
            for (int x : chosen) {
              if (sub >> x & 1u) ASSERT_TRUE(contains(smaller, x));
            }
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace imatch
