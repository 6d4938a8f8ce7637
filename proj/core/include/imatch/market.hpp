#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace imatch {

enum class Side : std::uint8_t { Doctor, Hospital };

constexpr Side opposite(Side side) noexcept {
  return side == Side::Doctor ? Side::Hospital : Side::Doctor;
}

std::string_view to_string(Side side) noexcept;

struct AgentId {
  Side side;
  int index;

  static constexpr AgentId doctor(int d) noexcept { return {Side::Doctor, d}; }
  static constexpr AgentId hospital(int h) noexcept { return {Side::Hospital, h}; }

  auto operator<=>(const AgentId&) const = default;
};

/// Strict ranking over opposite-side partners, most preferred first.
///
/// Only the first `acceptable_count()` entries are acceptable; the outside
/// option (remaining unmatched) sits immediately after them. Entries past the
/// prefix are ranked below the outside option and are never matched.
class Preference {
 public:
  Preference() = default;
  Preference(std::vector<int> ranked, std::size_t acceptable_count);

  static Preference all_acceptable(std::vector<int> ranked);

  const std::vector<int>& ranked() const noexcept { return ranked_; }
  std::span<const int> acceptable() const noexcept {
    return std::span<const int>(ranked_).first(acceptable_count_);
  }
  std::size_t acceptable_count() const noexcept { return acceptable_count_; }

  bool operator==(const Preference&) const = default;

 private:
  std::vector<int> ranked_;
  std::size_t acceptable_count_ = 0;
};

/// A two-sided market: doctors, hospitals and their strict preferences.
///
/// Construction validates every list against the opposite side's size and
/// precomputes inverse rank tables so that any pairwise comparison is O(1).
/// Instances are immutable.
class Market {
 public:
  static constexpr std::uint32_t kUnlisted = UINT32_MAX;

  Market(std::vector<Preference> doctors, std::vector<Preference> hospitals);

  int n_doctors() const noexcept { return static_cast<int>(doctors_.size()); }
  int n_hospitals() const noexcept { return static_cast<int>(hospitals_.size()); }
  int size(Side side) const noexcept {
    return side == Side::Doctor ? n_doctors() : n_hospitals();
  }

  const std::vector<Preference>& doctor_prefs() const noexcept { return doctors_; }
  const std::vector<Preference>& hospital_prefs() const noexcept { return hospitals_; }
  const Preference& doctor(int d) const { return doctors_.at(static_cast<std::size_t>(d)); }
  const Preference& hospital(int h) const { return hospitals_.at(static_cast<std::size_t>(h)); }
  const Preference& preference(AgentId agent) const {
    return agent.side == Side::Doctor ? doctor(agent.index) : hospital(agent.index);
  }

  // Position of `partner` in the agent's ranked list, kUnlisted if absent.
  std::uint32_t rank(AgentId agent, int partner) const noexcept {
    return agent.side == Side::Doctor
               ? doctor_rank_[static_cast<std::size_t>(agent.index) * hospitals_.size() +
                              static_cast<std::size_t>(partner)]
               : hospital_rank_[static_cast<std::size_t>(agent.index) * doctors_.size() +
                                static_cast<std::size_t>(partner)];
  }

  bool accepts(AgentId agent, int partner) const noexcept {
    return rank(agent, partner) < preference(agent).acceptable_count();
  }

  bool mutually_acceptable(int d, int h) const noexcept {
    return accepts(AgentId::doctor(d), h) && accepts(AgentId::hospital(h), d);
  }

  // Total order over the agent's options, smaller is better. The outside
  // option (nullopt) ranks at acceptable_count(); listed-but-unacceptable
  // partners rank after it.
  std::uint32_t option_rank(AgentId agent, std::optional<int> partner) const noexcept;

  bool prefers(AgentId agent, std::optional<int> a, std::optional<int> b) const noexcept {
    return option_rank(agent, a) < option_rank(agent, b);
  }

  bool operator==(const Market& other) const {
    return doctors_ == other.doctors_ && hospitals_ == other.hospitals_;
  }

 private:
  std::vector<Preference> doctors_;
  std::vector<Preference> hospitals_;
  std::vector<std::uint32_t> doctor_rank_;    // n_doctors x n_hospitals
  std::vector<std::uint32_t> hospital_rank_;  // n_hospitals x n_doctors
};

/// Interview capacities: one per hospital and one per doctor, all >= 1.
class Arrangement {
 public:
  Arrangement(std::vector<int> hospital_caps, std::vector<int> doctor_caps);

  // Every hospital interviews up to `l`, every doctor up to `k`.
  static Arrangement homogeneous(int n_doctors, int n_hospitals, int l, int k);
  static Arrangement homogeneous(const Market& market, int l, int k) {
    return homogeneous(market.n_doctors(), market.n_hospitals(), l, k);
  }

  int hospital_cap(int h) const { return hospital_caps_.at(static_cast<std::size_t>(h)); }
  int doctor_cap(int d) const { return doctor_caps_.at(static_cast<std::size_t>(d)); }
  int cap(AgentId agent) const {
    return agent.side == Side::Doctor ? doctor_cap(agent.index) : hospital_cap(agent.index);
  }
  const std::vector<int>& hospital_caps() const noexcept { return hospital_caps_; }
  const std::vector<int>& doctor_caps() const noexcept { return doctor_caps_; }

  // Throws DimensionError when the vector lengths differ from the market.
  void check_dimensions(const Market& market) const;

  bool operator==(const Arrangement&) const = default;
  auto operator<=>(const Arrangement&) const = default;

 private:
  std::vector<int> hospital_caps_;
  std::vector<int> doctor_caps_;
};

/// Many-to-many interview assignment. Each side's sets are kept sorted by
/// index; mutuality (h in of_doctor(d) iff d in of_hospital(h)) holds by
/// construction.
class InterviewMatching {
 public:
  InterviewMatching(int n_doctors, int n_hospitals);
  InterviewMatching(int n_doctors, int n_hospitals, std::span<const std::pair<int, int>> pairs);

  int n_doctors() const noexcept { return static_cast<int>(of_doctor_.size()); }
  int n_hospitals() const noexcept { return static_cast<int>(of_hospital_.size()); }

  const std::vector<int>& of_doctor(int d) const { return of_doctor_.at(static_cast<std::size_t>(d)); }
  const std::vector<int>& of_hospital(int h) const {
    return of_hospital_.at(static_cast<std::size_t>(h));
  }
  const std::vector<int>& of(AgentId agent) const {
    return agent.side == Side::Doctor ? of_doctor(agent.index) : of_hospital(agent.index);
  }
  bool contains(int d, int h) const;
  std::size_t pair_count() const noexcept;
  std::vector<std::pair<int, int>> pairs() const;

  // Throws InvariantError if a capacity is exceeded or a pair is not mutually
  // acceptable; DimensionError on size mismatch.
  void validate(const Market& market, const Arrangement& arrangement) const;

  bool operator==(const InterviewMatching&) const = default;

 private:
  std::vector<std::vector<int>> of_doctor_;
  std::vector<std::vector<int>> of_hospital_;
};

/// One-to-one assignment with an explicit unmatched state (nullopt).
class Matching {
 public:
  Matching(int n_doctors, int n_hospitals);
  Matching(int n_doctors, int n_hospitals, std::span<const std::pair<int, int>> pairs);

  int n_doctors() const noexcept { return static_cast<int>(of_doctor_.size()); }
  int n_hospitals() const noexcept { return static_cast<int>(of_hospital_.size()); }

  std::optional<int> of_doctor(int d) const { return of_doctor_.at(static_cast<std::size_t>(d)); }
  std::optional<int> of_hospital(int h) const {
    return of_hospital_.at(static_cast<std::size_t>(h));
  }
  std::optional<int> partner(AgentId agent) const {
    return agent.side == Side::Doctor ? of_doctor(agent.index) : of_hospital(agent.index);
  }
  int matched_count() const noexcept;
  std::vector<std::pair<int, int>> pairs() const;

  // Throws InvariantError if a matched pair is not mutually acceptable.
  void validate(const Market& market) const;

  bool operator==(const Matching&) const = default;

 private:
  std::vector<std::optional<int>> of_doctor_;
  std::vector<std::optional<int>> of_hospital_;
};

/// Keeps, for every agent, only the acceptable partners it interviews with,
/// in their original relative order.
Market restrict_profile(const Market& market, const InterviewMatching& interviews);

struct WelfareTally {
  int prefers_a = 0;
  int prefers_b = 0;
  int same = 0;

  bool operator==(const WelfareTally&) const = default;
};

/// Classifies each agent on `side` by its strict preference between its
/// assignment under `a` and under `b`.
WelfareTally compare_welfare(const Matching& a, const Matching& b, const Market& market, Side side);

}  // namespace imatch
