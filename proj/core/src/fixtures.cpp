#include "imatch/fixtures.hpp"

#include <utility>
#include <vector>

namespace imatch::fixtures {

Market hoarding_market() {
  std::vector<Preference> doctors{
      Preference::all_acceptable({0, 1, 3, 2}),
      Preference::all_acceptable({1, 2, 0, 3}),
      Preference::all_acceptable({1, 0, 2, 3}),
      Preference::all_acceptable({0, 1, 2, 3}),
  };
  std::vector<Preference> hospitals{
      Preference::all_acceptable({0, 1, 2, 3}),
      Preference::all_acceptable({0, 1, 3, 2}),
      Preference::all_acceptable({1, 0, 2, 3}),
      Preference::all_acceptable({0, 3, 2, 1}),
  };
  return Market(std::move(doctors), std::move(hospitals));
}

Arrangement hoarding_before() { return Arrangement({1, 1, 2, 2}, {1, 2, 1, 1}); }
Arrangement hoarding_after() { return Arrangement({1, 1, 2, 2}, {2, 2, 1, 1}); }

InterviewMatching hoarding_interviews_before() {
  const std::vector<std::pair<int, int>> pairs{{0, 0}, {1, 1}, {1, 2}, {2, 2}, {3, 3}};
  return InterviewMatching(4, 4, pairs);
}

InterviewMatching hoarding_interviews_after() {
  const std::vector<std::pair<int, int>> pairs{{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 2}, {3, 3}};
  return InterviewMatching(4, 4, pairs);
}

Matching hoarding_matching_before() {
  const std::vector<std::pair<int, int>> pairs{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  return Matching(4, 4, pairs);
}

Matching hoarding_matching_after() {
  const std::vector<std::pair<int, int>> pairs{{0, 0}, {1, 2}, {3, 3}};
  return Matching(4, 4, pairs);
}

Arrangement mixed_common_arrangement(int doctor, int hospital) {
  std::vector<int> hospital_caps(3, 2);
  std::vector<int> doctor_caps(4, 2);
  hospital_caps.at(static_cast<std::size_t>(hospital)) = 4;
  doctor_caps.at(static_cast<std::size_t>(doctor)) = 3;
  return Arrangement(std::move(hospital_caps), std::move(doctor_caps));
}

}  // namespace imatch::fixtures
