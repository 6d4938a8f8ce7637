#include "imatch/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "imatch/engines.hpp"
#include "imatch/errors.hpp"
#include "imatch/parallel.hpp"
#include "imatch/stability.hpp"

namespace imatch {

Market common_market(int n_doctors, int n_hospitals) {
  std::vector<int> hospitals(static_cast<std::size_t>(n_hospitals));
  std::vector<int> doctors(static_cast<std::size_t>(n_doctors));
  std::iota(hospitals.begin(), hospitals.end(), 0);
  std::iota(doctors.begin(), doctors.end(), 0);
  return Market(std::vector<Preference>(static_cast<std::size_t>(n_doctors),
                                        Preference::all_acceptable(hospitals)),
                std::vector<Preference>(static_cast<std::size_t>(n_hospitals),
                                        Preference::all_acceptable(doctors)));
}

namespace {

void check_caps(int l, int k) {
  if (l < 1 || k < 1) throw std::invalid_argument("interview caps must be >= 1");
}

}  // namespace

ClosedFormPrediction predict_common(int l, int k, int n_doctors, int n_hospitals) {
  check_caps(l, k);
  const std::int64_t D = n_doctors;
  const std::int64_t H = n_hospitals;
  ClosedFormPrediction p;
  p.blocks = std::min(n_hospitals / k, n_doctors / l);
  const std::int64_t m = p.blocks;
  p.remainder = static_cast<int>(std::min(H - m * k, D - m * l));
  if (k == l) {
    p.matched_count = std::min(n_doctors, n_hospitals);
    return p;
  }
  const int small = std::min(l, k);
  const int large = std::max(l, k);
  p.matched_count = static_cast<int>(m * small + p.remainder);
  for (std::int64_t r = 0; r < m; ++r) {
    for (std::int64_t i = small + 1; i <= large; ++i) p.blocking_count += D - (r * large + i);
  }
  return p;
}

ClosedFormPrediction predict_common_exact(int l, int k, int n_doctors, int n_hospitals) {
  check_caps(l, k);
  const std::int64_t D = n_doctors;
  const std::int64_t H = n_hospitals;
  const std::int64_t c = std::min(l, k);
  ClosedFormPrediction p;
  p.blocks = std::min(n_hospitals / k, n_doctors / l);
  const std::int64_t m = p.blocks;
  const std::int64_t rest_h = H - m * k;
  const std::int64_t rest_d = D - m * l;
  const std::int64_t rem = std::min({rest_h, rest_d, c});
  p.remainder = static_cast<int>(rem);
  p.matched_count = static_cast<int>(m * c + rem);

  // Each full block leaves |k - l| agents of the over-supplied side unmatched;
  // each of them blocks with every agent of the other side placed in a later
  // block or left over. Leftovers of both sides block each other.
  const std::int64_t other = k > l ? D : H;
  const std::int64_t spread = std::abs(static_cast<std::int64_t>(k) - l);
  const std::int64_t per_block_sum = m * other - c * m * (m + 1) / 2;
  p.blocking_count = spread * per_block_sum + (rest_h - rem) * (rest_d - rem);
  return p;
}

// --- global adequacy ---------------------------------------------------------

namespace {

// Every strict ordering of {partners} + {outside option}, as Preferences.
std::vector<Preference> all_strict_orders(int n_partners) {
  std::vector<int> items(static_cast<std::size_t>(n_partners) + 1);
  std::iota(items.begin(), items.end(), 0);
  const int self = n_partners;
  std::vector<Preference> out;
  do {
    std::vector<int> ranked;
    std::size_t cutoff = 0;
    for (int item : items) {
      if (item == self) {
        cutoff = ranked.size();
      } else {
        ranked.push_back(item);
      }
    }
    out.emplace_back(std::move(ranked), cutoff);
  } while (std::next_permutation(items.begin(), items.end()));
  return out;
}

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Visits every profile; stops early when `visit` returns false.
template <typename Visit>
bool for_each_profile(int n_doctors, int n_hospitals, Visit&& visit) {
  const auto doctor_orders = all_strict_orders(n_hospitals);
  const auto hospital_orders = all_strict_orders(n_doctors);
  const auto agents = static_cast<std::size_t>(n_doctors + n_hospitals);
  std::vector<std::size_t> digit(agents, 0);
  auto radix = [&](std::size_t a) {
    return a < static_cast<std::size_t>(n_doctors) ? doctor_orders.size() : hospital_orders.size();
  };
  while (true) {
    std::vector<Preference> doctors;
    std::vector<Preference> hospitals;
    for (std::size_t a = 0; a < agents; ++a) {
      if (a < static_cast<std::size_t>(n_doctors)) {
        doctors.push_back(doctor_orders[digit[a]]);
      } else {
        hospitals.push_back(hospital_orders[digit[a]]);
      }
    }
    if (!visit(Market(std::move(doctors), std::move(hospitals)))) return false;
    std::size_t a = 0;
    while (a < agents && ++digit[a] == radix(a)) digit[a++] = 0;
    if (a == agents) return true;
  }
}

std::vector<Arrangement> all_arrangements(int n_doctors, int n_hospitals, int bound) {
  const auto agents = static_cast<std::size_t>(n_doctors + n_hospitals);
  std::vector<int> caps(agents, 1);
  std::vector<Arrangement> out;
  while (true) {
    out.emplace_back(std::vector<int>(caps.begin(), caps.begin() + n_hospitals),
                     std::vector<int>(caps.begin() + n_hospitals, caps.end()));
    std::size_t a = agents;
    while (a > 0 && ++caps[a - 1] > bound) caps[--a] = 1;
    if (a == 0) break;
  }
  return out;
}

}  // namespace

double count_strict_profiles(int n_doctors, int n_hospitals) {
  return std::pow(factorial(n_hospitals + 1), n_doctors) *
         std::pow(factorial(n_doctors + 1), n_hospitals);
}

std::vector<Arrangement> global_adequacy_enumerate(int n_doctors, int n_hospitals,
                                                   int capacity_bound, double budget,
                                                   int threads) {
  if (capacity_bound < 1) throw std::invalid_argument("capacity bound must be >= 1");
  const double arrangements = std::pow(static_cast<double>(capacity_bound), n_doctors + n_hospitals);
  const double estimate = count_strict_profiles(n_doctors, n_hospitals) * arrangements;
  if (estimate > budget) {
    throw BudgetExceeded("global adequacy enumeration needs ~" + std::to_string(estimate) +
                             " pipeline runs (budget " + std::to_string(budget) + ")",
                         estimate);
  }
  const auto candidates = all_arrangements(n_doctors, n_hospitals, capacity_bound);
  std::vector<char> adequate_everywhere(candidates.size(), 0);
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    adequate_everywhere[i] = for_each_profile(n_doctors, n_hospitals, [&](const Market& market) {
      return is_adequate(market, candidates[i]);
    });
  });
  std::vector<Arrangement> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (adequate_everywhere[i]) out.push_back(candidates[i]);
  }
  std::ranges::sort(out);
  return out;
}

// --- degradation & oracle -------------------------------------------------------

DegradationReport monotone_degradation_check(int l, std::span<const int> k_list, int n_doctors,
                                             int n_hospitals) {
  const auto market = common_market(n_doctors, n_hospitals);
  DegradationReport report;
  for (int k : k_list) {
    const auto outcome = run_two_step(market, Arrangement::homogeneous(market, l, k));
    DegradationRow row{k, outcome.matching.matched_count(),
                       static_cast<std::int64_t>(count_blocking_pairs(outcome.matching, market))};
    if (!report.rows.empty()) {
      const auto& prev = report.rows.back();
      report.matched_non_increasing &= row.matched <= prev.matched;
      report.blocking_non_decreasing &= row.blocking >= prev.blocking;
    }
    report.rows.push_back(row);
  }
  return report;
}

std::vector<OracleRow> oracle_grid(int max_size, int max_cap, int threads) {
  struct Cell {
    int d, h;
  };
  std::vector<Cell> cells;
  for (int d = 2; d <= max_size; ++d) {
    for (int h = 2; h <= max_size; ++h) cells.push_back({d, h});
  }
  const auto per_cell = static_cast<std::size_t>(max_cap) * static_cast<std::size_t>(max_cap);
  std::vector<OracleRow> rows(cells.size() * per_cell);
  parallel_for(cells.size(), threads, [&](std::size_t c) {
    const auto [d, h] = cells[c];
    const auto market = common_market(d, h);
    std::size_t slot = c * per_cell;
    for (int l = 1; l <= max_cap; ++l) {
      for (int k = 1; k <= max_cap; ++k) {
        const auto outcome = run_two_step(market, Arrangement::homogeneous(market, l, k));
        auto& row = rows[slot++];
        row.n_doctors = d;
        row.n_hospitals = h;
        row.l = l;
        row.k = k;
        row.predicted = predict_common(l, k, d, h);
        row.exact = predict_common_exact(l, k, d, h);
        row.observed_matched = outcome.matching.matched_count();
        row.observed_blocking =
            static_cast<std::int64_t>(count_blocking_pairs(outcome.matching, market));
        row.adequate = row.observed_blocking == 0;
      }
    }
  });
  return rows;
}

void write_oracle_csv(std::ostream& out, std::span<const OracleRow> rows) {
  out << "n_doctors,n_hospitals,l,k,predicted_matched,observed_matched,predicted_blocking,"
         "observed_blocking,exact_matched,exact_blocking,adequate\n";
  for (const auto& r : rows) {
    out << r.n_doctors << ',' << r.n_hospitals << ',' << r.l << ',' << r.k << ','
        << r.predicted.matched_count << ',' << r.observed_matched << ','
        << r.predicted.blocking_count << ',' << r.observed_blocking << ','
        << r.exact.matched_count << ',' << r.exact.blocking_count << ',' << (r.adequate ? 1 : 0)
        << '\n';
  }
}

OracleSummary summarize(std::span<const OracleRow> rows) {
  OracleSummary s;
  s.rows = rows.size();
  for (const auto& r : rows) {
    const bool matched_ok = r.predicted.matched_count == r.observed_matched;
    const bool blocking_ok = r.predicted.blocking_count == r.observed_blocking;
    if (r.k > r.l) {
      s.matched_mismatch_k_gt_l += !matched_ok;
      s.blocking_mismatch_k_gt_l += !blocking_ok;
    } else if (r.k < r.l) {
      s.matched_mismatch_k_lt_l += !matched_ok;
      s.blocking_mismatch_k_lt_l += !blocking_ok;
    }
    s.exact_mismatch += r.exact.matched_count != r.observed_matched ||
                        r.exact.blocking_count != r.observed_blocking;
    const int smaller = std::min(r.n_doctors, r.n_hospitals);
    const bool predicted_adequate = r.l == r.k || (r.l >= smaller && r.k >= smaller);
    s.adequacy_mismatch += predicted_adequate != r.adequate;
  }
  return s;
}

}  // namespace imatch
