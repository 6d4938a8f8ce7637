#include "imatch/market.hpp"

#include <algorithm>
#include <string>

#include "imatch/errors.hpp"

namespace imatch {

std::string_view to_string(Side side) noexcept {
  return side == Side::Doctor ? "doctor" : "hospital";
}

Preference::Preference(std::vector<int> ranked, std::size_t acceptable_count)
    : ranked_(std::move(ranked)), acceptable_count_(acceptable_count) {
  if (acceptable_count_ > ranked_.size()) {
    throw InvariantError("acceptable_count " + std::to_string(acceptable_count_) +
                         " exceeds ranked list length " + std::to_string(ranked_.size()));
  }
}

Preference Preference::all_acceptable(std::vector<int> ranked) {
  const auto n = ranked.size();
  return Preference(std::move(ranked), n);
}

namespace {

std::vector<std::uint32_t> build_rank_table(const std::vector<Preference>& prefs, int n_partners,
                                            Side side) {
  std::vector<std::uint32_t> table(prefs.size() * static_cast<std::size_t>(n_partners),
                                   Market::kUnlisted);
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    const auto& ranked = prefs[i].ranked();
    for (std::size_t pos = 0; pos < ranked.size(); ++pos) {
      const int partner = ranked[pos];
      if (partner < 0 || partner >= n_partners) {
        throw InvariantError(std::string(to_string(side)) + " " + std::to_string(i) +
                             " ranks out-of-range partner " + std::to_string(partner));
      }
      auto& slot = table[i * static_cast<std::size_t>(n_partners) + static_cast<std::size_t>(partner)];
      if (slot != Market::kUnlisted) {
        throw InvariantError(std::string(to_string(side)) + " " + std::to_string(i) +
                             " ranks partner " + std::to_string(partner) + " twice");
      }
      slot = static_cast<std::uint32_t>(pos);
    }
  }
  return table;
}

}  // namespace

Market::Market(std::vector<Preference> doctors, std::vector<Preference> hospitals)
    : doctors_(std::move(doctors)), hospitals_(std::move(hospitals)) {
  if (doctors_.size() < 2 || hospitals_.size() < 2) {
    throw DimensionError("a market needs at least two doctors and two hospitals (got " +
                         std::to_string(doctors_.size()) + " x " +
                         std::to_string(hospitals_.size()) + ")");
  }
  doctor_rank_ = build_rank_table(doctors_, n_hospitals(), Side::Doctor);
  hospital_rank_ = build_rank_table(hospitals_, n_doctors(), Side::Hospital);
}

std::uint32_t Market::option_rank(AgentId agent, std::optional<int> partner) const noexcept {
  const auto cutoff = static_cast<std::uint32_t>(preference(agent).acceptable_count());
  if (!partner) return cutoff;
  const auto r = rank(agent, *partner);
  if (r == kUnlisted) return kUnlisted;
  return r < cutoff ? r : r + 1;
}

Arrangement::Arrangement(std::vector<int> hospital_caps, std::vector<int> doctor_caps)
    : hospital_caps_(std::move(hospital_caps)), doctor_caps_(std::move(doctor_caps)) {
  auto positive = [](int c) { return c >= 1; };
  if (!std::ranges::all_of(hospital_caps_, positive) || !std::ranges::all_of(doctor_caps_, positive)) {
    throw InvariantError("interview capacities must be >= 1");
  }
}

Arrangement Arrangement::homogeneous(int n_doctors, int n_hospitals, int l, int k) {
  return Arrangement(std::vector<int>(static_cast<std::size_t>(n_hospitals), l),
                     std::vector<int>(static_cast<std::size_t>(n_doctors), k));
}

void Arrangement::check_dimensions(const Market& market) const {
  if (static_cast<int>(hospital_caps_.size()) != market.n_hospitals() ||
      static_cast<int>(doctor_caps_.size()) != market.n_doctors()) {
    throw DimensionError("arrangement has " + std::to_string(hospital_caps_.size()) +
                         " hospital and " + std::to_string(doctor_caps_.size()) +
                         " doctor capacities for a " + std::to_string(market.n_doctors()) + " x " +
                         std::to_string(market.n_hospitals()) + " market");
  }
}

// --- InterviewMatching -------------------------------------------------------

InterviewMatching::InterviewMatching(int n_doctors, int n_hospitals)
    : of_doctor_(static_cast<std::size_t>(n_doctors)),
      of_hospital_(static_cast<std::size_t>(n_hospitals)) {}

InterviewMatching::InterviewMatching(int n_doctors, int n_hospitals,
                                     std::span<const std::pair<int, int>> pairs)
    : InterviewMatching(n_doctors, n_hospitals) {
  for (const auto& [d, h] : pairs) {
    if (d < 0 || d >= n_doctors || h < 0 || h >= n_hospitals) {
      throw DimensionError("interview pair (" + std::to_string(d) + ", " + std::to_string(h) +
                           ") out of range");
    }
    of_doctor_[static_cast<std::size_t>(d)].push_back(h);
    of_hospital_[static_cast<std::size_t>(h)].push_back(d);
  }
  auto normalize = [](std::vector<int>& set) {
    std::ranges::sort(set);
    if (std::ranges::adjacent_find(set) != set.end()) {
      throw InvariantError("duplicate interview pair");
    }
  };
  std::ranges::for_each(of_doctor_, normalize);
  std::ranges::for_each(of_hospital_, normalize);
}

bool InterviewMatching::contains(int d, int h) const {
  return std::ranges::binary_search(of_doctor(d), h);
}

std::size_t InterviewMatching::pair_count() const noexcept {
  std::size_t total = 0;
  for (const auto& set : of_doctor_) total += set.size();
  return total;
}

std::vector<std::pair<int, int>> InterviewMatching::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(pair_count());
  for (int d = 0; d < n_doctors(); ++d) {
    for (int h : of_doctor_[static_cast<std::size_t>(d)]) out.emplace_back(d, h);
  }
  return out;
}

void InterviewMatching::validate(const Market& market, const Arrangement& arrangement) const {
  if (n_doctors() != market.n_doctors() || n_hospitals() != market.n_hospitals()) {
    throw DimensionError("interview matching dimensions differ from market");
  }
  arrangement.check_dimensions(market);
  for (int d = 0; d < n_doctors(); ++d) {
    if (static_cast<int>(of_doctor(d).size()) > arrangement.doctor_cap(d)) {
      throw InvariantError("doctor " + std::to_string(d) + " exceeds interview capacity");
    }
    for (int h : of_doctor(d)) {
      if (!market.mutually_acceptable(d, h)) {
        throw InvariantError("interview (" + std::to_string(d) + ", " + std::to_string(h) +
                             ") is not mutually acceptable");
      }
    }
  }
  for (int h = 0; h < n_hospitals(); ++h) {
    if (static_cast<int>(of_hospital(h).size()) > arrangement.hospital_cap(h)) {
      throw InvariantError("hospital " + std::to_string(h) + " exceeds interview capacity");
    }
  }
}

// --- Matching ----------------------------------------------------------------

Matching::Matching(int n_doctors, int n_hospitals)
    : of_doctor_(static_cast<std::size_t>(n_doctors)),
      of_hospital_(static_cast<std::size_t>(n_hospitals)) {}

Matching::Matching(int n_doctors, int n_hospitals, std::span<const std::pair<int, int>> pairs)
    : Matching(n_doctors, n_hospitals) {
  for (const auto& [d, h] : pairs) {
    if (d < 0 || d >= n_doctors || h < 0 || h >= n_hospitals) {
      throw DimensionError("matched pair (" + std::to_string(d) + ", " + std::to_string(h) +
                           ") out of range");
    }
    auto& dslot = of_doctor_[static_cast<std::size_t>(d)];
    auto& hslot = of_hospital_[static_cast<std::size_t>(h)];
    if (dslot || hslot) {
      throw InvariantError("agent matched twice in pair (" + std::to_string(d) + ", " +
                           std::to_string(h) + ")");
    }
    dslot = h;
    hslot = d;
  }
}

int Matching::matched_count() const noexcept {
  return static_cast<int>(std::ranges::count_if(of_doctor_, [](const auto& p) { return p.has_value(); }));
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int d = 0; d < n_doctors(); ++d) {
    if (const auto h = of_doctor_[static_cast<std::size_t>(d)]) out.emplace_back(d, *h);
  }
  return out;
}

void Matching::validate(const Market& market) const {
  if (n_doctors() != market.n_doctors() || n_hospitals() != market.n_hospitals()) {
    throw DimensionError("matching dimensions differ from market");
  }
  for (const auto& [d, h] : pairs()) {
    if (!market.mutually_acceptable(d, h)) {
      throw InvariantError("matched pair (" + std::to_string(d) + ", " + std::to_string(h) +
                           ") is not mutually acceptable");
    }
  }
}

// --- operations ----------------------------------------------------------------

Market restrict_profile(const Market& market, const InterviewMatching& interviews) {
  if (interviews.n_doctors() != market.n_doctors() ||
      interviews.n_hospitals() != market.n_hospitals()) {
    throw DimensionError("interview matching is " + std::to_string(interviews.n_doctors()) + " x " +
                         std::to_string(interviews.n_hospitals()) + ", market is " +
                         std::to_string(market.n_doctors()) + " x " +
                         std::to_string(market.n_hospitals()));
  }
  auto restrict_side = [&](Side side) {
    std::vector<Preference> out;
    out.reserve(static_cast<std::size_t>(market.size(side)));
    for (int i = 0; i < market.size(side); ++i) {
      const AgentId agent{side, i};
      const auto& interviewed = interviews.of(agent);
      std::vector<int> kept;
      for (int partner : market.preference(agent).acceptable()) {
        if (std::ranges::binary_search(interviewed, partner)) kept.push_back(partner);
      }
      out.push_back(Preference::all_acceptable(std::move(kept)));
    }
    return out;
  };
  return Market(restrict_side(Side::Doctor), restrict_side(Side::Hospital));
}

WelfareTally compare_welfare(const Matching& a, const Matching& b, const Market& market, Side side) {
  if (a.n_doctors() != market.n_doctors() || a.n_hospitals() != market.n_hospitals() ||
      b.n_doctors() != market.n_doctors() || b.n_hospitals() != market.n_hospitals()) {
    throw DimensionError("matching dimensions differ from market");
  }
  WelfareTally tally;
  for (int i = 0; i < market.size(side); ++i) {
    const AgentId agent{side, i};
    const auto ra = market.option_rank(agent, a.partner(agent));
    const auto rb = market.option_rank(agent, b.partner(agent));
    if (ra < rb) {
      ++tally.prefers_a;
    } else if (rb < ra) {
      ++tally.prefers_b;
    } else {
      ++tally.same;
    }
  }
  return tally;
}

}  // namespace imatch
