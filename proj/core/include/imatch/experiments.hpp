#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "imatch/prefgen.hpp"

namespace imatch {

// Replication r always samples its market from replication_seed(gen.seed, r),
// and every arm/cap within a replication reuses that market. Results are
// ordered by replication, then by the swept parameter, whatever `threads` is.

struct SweepConfig {
  GenParams gen;
  int l = 25;
  int k_min = 1;
  int k_max = 100;
  int replications = 100;
  int k_policy = 5;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct SweepRow {
  int k = 0;
  int replication = 0;
  double match_rate = 0;
  std::int64_t blocking_pairs = 0;
  int doctors_zero_interviews = 0;
  double mean_interviews_per_doctor = 0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepAggRow {
  int k = 0;
  double mean_match_rate = 0;
  double sd_match_rate = 0;
  double mean_blocking_pairs = 0;
  double sd_blocking_pairs = 0;
  int n_reps = 0;

  bool operator==(const SweepAggRow&) const = default;
};

std::vector<SweepRow> sweep_k(const SweepConfig& config);

// Per-k means and sample standard deviations (0 for a single replication).
std::vector<SweepAggRow> aggregate(std::span<const SweepRow> rows);

struct CompareRow {
  int replication = 0;
  int doctors_prefer_capped = 0;
  int doctors_prefer_uncapped = 0;
  int hospitals_prefer_capped = 0;
  int hospitals_prefer_uncapped = 0;
  std::int64_t excess_blocking_pairs = 0;  // uncapped minus capped
  int zero_interviews_capped = 0;
  int zero_interviews_uncapped = 0;

  bool operator==(const CompareRow&) const = default;
};

struct HistRow {
  std::string arm;  // "capped" or "uncapped"
  int interviews = 0;
  int doctor_count = 0;
  int replication = 0;

  bool operator==(const HistRow&) const = default;
};

struct PolicyComparison {
  std::vector<CompareRow> rows;
  std::vector<HistRow> histogram;
};

/// Per replication, the (l, k_cap) arrangement against doctors capped only
/// by the number of hospitals, on the same market.
PolicyComparison compare_policies(const GenParams& gen, int l, int k_cap, int replications,
                                  int threads = 0);

struct IdealRow {
  int replication = 0;
  int doctors_prefer_capped = 0;
  int doctors_prefer_ideal = 0;
  int hospitals_prefer_capped = 0;
  int hospitals_prefer_ideal = 0;

  bool operator==(const IdealRow&) const = default;
};

/// Per replication, the (l, k_cap) matching against doctor-proposing DA on
/// the full profile (no interview stage).
std::vector<IdealRow> ideal_comparison(const GenParams& gen, int l, int k_cap, int replications,
                                       int threads = 0);

struct HeatmapCell {
  int l = 0;
  int k = 0;
  double mean_match_rate = 0;
  int n_reps = 0;

  bool operator==(const HeatmapCell&) const = default;
};

struct Range {
  int lo = 1;
  int hi = 1;
};

/// Mean match rate of every (l, k) in the ranges, ordered by l then k.
std::vector<HeatmapCell> heatmap_lk(const GenParams& gen, Range l_range, Range k_range,
                                    int replications, int threads = 0);

// Writers for the CSV contracts (header row first, '.' decimal point).
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_sweep_agg_csv(std::ostream& out, std::span<const SweepAggRow> rows);
void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows);
void write_hist_csv(std::ostream& out, std::span<const HistRow> rows);
void write_ideal_csv(std::ostream& out, std::span<const IdealRow> rows);
void write_heatmap_csv(std::ostream& out, std::span<const HeatmapCell> cells);

}  // namespace imatch
