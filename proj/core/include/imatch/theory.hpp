#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "imatch/market.hpp"

namespace imatch {

/// Common preferences: every doctor ranks h0 > h1 > ..., every hospital ranks
/// d0 > d1 > ..., everyone acceptable. The unique stable matching pairs equal
/// indices up to min(n_doctors, n_hospitals).
Market common_market(int n_doctors, int n_hospitals);

/// Closed-form counts for the (l, k)-matching of a common market.
struct ClosedFormPrediction {
  int blocks = 0;            // min(floor(H / k), floor(D / l))
  int remainder = 0;         // agents matched outside the full blocks
  int matched_count = 0;     // matched hospitals
  std::int64_t blocking_count = 0;

  bool operator==(const ClosedFormPrediction&) const = default;
};

/// The closed form as usually stated, evaluated literally:
///   remainder = min(H - mk, D - ml)
///   k > l: matched = ml + remainder, blocking = sum_{r<m} sum_{i=l+1..k} (D - (rk + i))
///   k < l: matched = mk + remainder, blocking = sum_{r<m} sum_{i=k+1..l} (D - (rl + i))
///   k = l: matched = min(D, H), blocking = 0
/// It disagrees with the pipeline on part of the parameter space; see
/// predict_common_exact and the oracle report.
ClosedFormPrediction predict_common(int l, int k, int n_doctors, int n_hospitals);

/// Exact counts derived from the block structure of the interview stage.
/// With m full blocks, c = min(l, k), H' = H - mk, D' = D - ml and
/// remainder = min(H', D', c):
///   matched  = m c + remainder
///   blocking = |k - l| * sum_{r<m} (S - (r + 1) c) + (H' - remainder)(D' - remainder)
/// where S = D when k > l and S = H when k < l.
ClosedFormPrediction predict_common_exact(int l, int k, int n_doctors, int n_hospitals);

/// Arrangements with every capacity in [1, capacity_bound] that are adequate
/// at every strict profile of an n_doctors x n_hospitals market (each agent
/// ranks all partners plus its outside option). Refuses with BudgetExceeded
/// when profiles x arrangements exceeds `budget`. Output is sorted.
std::vector<Arrangement> global_adequacy_enumerate(int n_doctors, int n_hospitals,
                                                   int capacity_bound, double budget = 5e7,
                                                   int threads = 1);

// Number of strict profiles global_adequacy_enumerate visits.
double count_strict_profiles(int n_doctors, int n_hospitals);

struct DegradationRow {
  int k = 0;
  int matched = 0;
  std::int64_t blocking = 0;
};

struct DegradationReport {
  std::vector<DegradationRow> rows;
  bool matched_non_increasing = true;
  bool blocking_non_decreasing = true;

  bool monotone() const noexcept { return matched_non_increasing && blocking_non_decreasing; }
};

/// Runs the (l, k) pipeline on common_market for each k in order and checks
/// that matches never rise and blocking pairs never fall along the list.
/// `k_list` should move away from l on one side.
DegradationReport monotone_degradation_check(int l, std::span<const int> k_list, int n_doctors,
                                             int n_hospitals);

struct OracleRow {
  int n_doctors = 0;
  int n_hospitals = 0;
  int l = 0;
  int k = 0;
  ClosedFormPrediction predicted;  // stated form
  ClosedFormPrediction exact;      // predict_common_exact
  int observed_matched = 0;
  std::int64_t observed_blocking = 0;
  bool adequate = false;

  bool operator==(const OracleRow&) const = default;
};

/// Pipeline vs. closed forms on common markets with sizes in [2, max_size]
/// and caps in [1, max_cap]. Rows ordered by (D, H, l, k).
std::vector<OracleRow> oracle_grid(int max_size, int max_cap, int threads = 1);

// CSV with header:
// n_doctors,n_hospitals,l,k,predicted_matched,observed_matched,predicted_blocking,
// observed_blocking,exact_matched,exact_blocking,adequate
void write_oracle_csv(std::ostream& out, std::span<const OracleRow> rows);

struct OracleSummary {
  std::size_t rows = 0;
  std::size_t matched_mismatch_k_gt_l = 0;
  std::size_t matched_mismatch_k_lt_l = 0;
  std::size_t blocking_mismatch_k_gt_l = 0;
  std::size_t blocking_mismatch_k_lt_l = 0;  // stated k < l sum vs. pipeline
  std::size_t exact_mismatch = 0;
  std::size_t adequacy_mismatch = 0;  // adequate != (l == k || l, k >= min(D, H))
};

OracleSummary summarize(std::span<const OracleRow> rows);

}  // namespace imatch
