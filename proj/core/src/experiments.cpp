#include "imatch/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "imatch/csv.hpp"
#include "imatch/engines.hpp"
#include "imatch/parallel.hpp"
#include "imatch/stability.hpp"

namespace imatch {

void SweepConfig::validate() const {
  if (k_min < 1 || k_max < k_min) throw std::invalid_argument("need 1 <= k_min <= k_max");
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (k_policy < 1) throw std::invalid_argument("k_policy must be >= 1");
}

namespace {

Market replication_market(const GenParams& gen, int replication) {
  GenParams p = gen;
  p.seed = replication_seed(gen.seed, static_cast<std::uint64_t>(replication));
  return sample_market(p).market;
}

void check_positive(int value, const char* name) {
  if (value < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
}

int zero_interview_doctors(const InterviewMatching& nu) {
  int zero = 0;
  for (int d = 0; d < nu.n_doctors(); ++d) zero += nu.of_doctor(d).empty();
  return zero;
}

void append_histogram(std::vector<HistRow>& out, const InterviewMatching& nu, const char* arm,
                      int replication) {
  std::vector<int> bins;
  for (int d = 0; d < nu.n_doctors(); ++d) {
    const auto n = nu.of_doctor(d).size();
    if (n >= bins.size()) bins.resize(n + 1, 0);
    ++bins[n];
  }
  for (std::size_t i = 0; i < bins.size(); ++i) {
    out.push_back({arm, static_cast<int>(i), bins[i], replication});
  }
}

}  // namespace

std::vector<SweepRow> sweep_k(const SweepConfig& config) {
  config.validate();
  const auto n_k = static_cast<std::size_t>(config.k_max - config.k_min + 1);
  std::vector<SweepRow> rows(static_cast<std::size_t>(config.replications) * n_k);
  parallel_for(static_cast<std::size_t>(config.replications), config.threads, [&](std::size_t r) {
    const int rep = static_cast<int>(r);
    const auto market = replication_market(config.gen, rep);
    for (std::size_t i = 0; i < n_k; ++i) {
      const int k = config.k_min + static_cast<int>(i);
      const auto outcome = run_two_step(market, Arrangement::homogeneous(market, config.l, k));
      auto& row = rows[r * n_k + i];
      row.k = k;
      row.replication = rep;
      row.match_rate = match_rate(outcome.matching, market);
      row.blocking_pairs = static_cast<std::int64_t>(count_blocking_pairs(outcome.matching, market));
      row.doctors_zero_interviews = zero_interview_doctors(outcome.interviews);
      row.mean_interviews_per_doctor =
          static_cast<double>(outcome.interviews.pair_count()) / market.n_doctors();
    }
  });
  return rows;
}

std::vector<SweepAggRow> aggregate(std::span<const SweepRow> rows) {
  struct Acc {
    std::vector<double> rate, blocking;
  };
  std::map<int, Acc> by_k;
  for (const auto& row : rows) {
    auto& acc = by_k[row.k];
    acc.rate.push_back(row.match_rate);
    acc.blocking.push_back(static_cast<double>(row.blocking_pairs));
  }
  auto mean_sd = [](const std::vector<double>& xs) {
    double sum = 0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return std::pair{mean, 0.0};
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::pair{mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
  };
  std::vector<SweepAggRow> out;
  for (const auto& [k, acc] : by_k) {
    const auto [rate_mean, rate_sd] = mean_sd(acc.rate);
    const auto [block_mean, block_sd] = mean_sd(acc.blocking);
    out.push_back({k, rate_mean, rate_sd, block_mean, block_sd, static_cast<int>(acc.rate.size())});
  }
  return out;
}

PolicyComparison compare_policies(const GenParams& gen, int l, int k_cap, int replications,
                                  int threads) {
  check_positive(l, "l");
  check_positive(k_cap, "k_cap");
  check_positive(replications, "replications");
  std::vector<CompareRow> rows(static_cast<std::size_t>(replications));
  std::vector<std::vector<HistRow>> hist(static_cast<std::size_t>(replications));
  parallel_for(rows.size(), threads, [&](std::size_t r) {
    const int rep = static_cast<int>(r);
    const auto market = replication_market(gen, rep);
    const auto capped = run_two_step(market, Arrangement::homogeneous(market, l, k_cap));
    const auto uncapped =
        run_two_step(market, Arrangement::homogeneous(market, l, market.n_hospitals()));
    const auto docs = compare_welfare(capped.matching, uncapped.matching, market, Side::Doctor);
    const auto hosps = compare_welfare(capped.matching, uncapped.matching, market, Side::Hospital);
    auto& row = rows[r];
    row.replication = rep;
    row.doctors_prefer_capped = docs.prefers_a;
    row.doctors_prefer_uncapped = docs.prefers_b;
    row.hospitals_prefer_capped = hosps.prefers_a;
    row.hospitals_prefer_uncapped = hosps.prefers_b;
    row.excess_blocking_pairs =
        static_cast<std::int64_t>(count_blocking_pairs(uncapped.matching, market)) -
        static_cast<std::int64_t>(count_blocking_pairs(capped.matching, market));
    row.zero_interviews_capped = zero_interview_doctors(capped.interviews);
    row.zero_interviews_uncapped = zero_interview_doctors(uncapped.interviews);
    append_histogram(hist[r], capped.interviews, "capped", rep);
    append_histogram(hist[r], uncapped.interviews, "uncapped", rep);
  });
  PolicyComparison out{std::move(rows), {}};
  for (auto& part : hist) out.histogram.insert(out.histogram.end(), part.begin(), part.end());
  return out;
}

std::vector<IdealRow> ideal_comparison(const GenParams& gen, int l, int k_cap, int replications,
                                       int threads) {
  check_positive(l, "l");
  check_positive(k_cap, "k_cap");
  check_positive(replications, "replications");
  std::vector<IdealRow> rows(static_cast<std::size_t>(replications));
  parallel_for(rows.size(), threads, [&](std::size_t r) {
    const int rep = static_cast<int>(r);
    const auto market = replication_market(gen, rep);
    const auto capped = run_two_step(market, Arrangement::homogeneous(market, l, k_cap)).matching;
    const auto ideal = doctor_da(market);
    const auto docs = compare_welfare(capped, ideal, market, Side::Doctor);
    const auto hosps = compare_welfare(capped, ideal, market, Side::Hospital);
    rows[r] = {rep, docs.prefers_a, docs.prefers_b, hosps.prefers_a, hosps.prefers_b};
  });
  return rows;
}

std::vector<HeatmapCell> heatmap_lk(const GenParams& gen, Range l_range, Range k_range,
                                    int replications, int threads) {
  check_positive(l_range.lo, "l range");
  check_positive(k_range.lo, "k range");
  check_positive(replications, "replications");
  if (l_range.hi < l_range.lo || k_range.hi < k_range.lo) {
    throw std::invalid_argument("empty l or k range");
  }
  const auto n_l = static_cast<std::size_t>(l_range.hi - l_range.lo + 1);
  const auto n_k = static_cast<std::size_t>(k_range.hi - k_range.lo + 1);
  // rates[r][cell]; summed in replication order afterwards for a fixed
  // floating-point evaluation order.
  std::vector<std::vector<double>> rates(static_cast<std::size_t>(replications),
                                         std::vector<double>(n_l * n_k));
  parallel_for(rates.size(), threads, [&](std::size_t r) {
    const auto market = replication_market(gen, static_cast<int>(r));
    for (std::size_t i = 0; i < n_l; ++i) {
      for (std::size_t j = 0; j < n_k; ++j) {
        const int l = l_range.lo + static_cast<int>(i);
        const int k = k_range.lo + static_cast<int>(j);
        const auto outcome = run_two_step(market, Arrangement::homogeneous(market, l, k));
        rates[r][i * n_k + j] = match_rate(outcome.matching, market);
      }
    }
  });
  std::vector<HeatmapCell> cells;
  for (std::size_t i = 0; i < n_l; ++i) {
    for (std::size_t j = 0; j < n_k; ++j) {
      double sum = 0;
      for (const auto& rep : rates) sum += rep[i * n_k + j];
      cells.push_back({l_range.lo + static_cast<int>(i), k_range.lo + static_cast<int>(j),
                       sum / replications, replications});
    }
  }
  return cells;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "k,replication,match_rate,blocking_pairs,doctors_zero_interviews,"
         "mean_interviews_per_doctor\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.replication << ',' << csv::number(r.match_rate) << ',' << r.blocking_pairs
        << ',' << r.doctors_zero_interviews << ',' << csv::number(r.mean_interviews_per_doctor)
        << '\n';
  }
}

void write_sweep_agg_csv(std::ostream& out, std::span<const SweepAggRow> rows) {
  out << "k,mean_match_rate,sd_match_rate,mean_blocking_pairs,sd_blocking_pairs,n_reps\n";
  for (const auto& r : rows) {
    out << r.k << ',' << csv::number(r.mean_match_rate) << ',' << csv::number(r.sd_match_rate)
        << ',' << csv::number(r.mean_blocking_pairs) << ',' << csv::number(r.sd_blocking_pairs)
        << ',' << r.n_reps << '\n';
  }
}

void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows) {
  out << "replication,doctors_prefer_capped,doctors_prefer_uncapped,hospitals_prefer_capped,"
         "hospitals_prefer_uncapped,excess_blocking_pairs\n";
  for (const auto& r : rows) {
    out << r.replication << ',' << r.doctors_prefer_capped << ',' << r.doctors_prefer_uncapped
        << ',' << r.hospitals_prefer_capped << ',' << r.hospitals_prefer_uncapped << ','
        << r.excess_blocking_pairs << '\n';
  }
}

void write_hist_csv(std::ostream& out, std::span<const HistRow> rows) {
  out << "arm,interviews,doctor_count,replication\n";
  for (const auto& r : rows) {
    out << r.arm << ',' << r.interviews << ',' << r.doctor_count << ',' << r.replication << '\n';
  }
}

void write_ideal_csv(std::ostream& out, std::span<const IdealRow> rows) {
  out << "replication,doctors_prefer_capped,doctors_prefer_ideal,hospitals_prefer_capped,"
         "hospitals_prefer_ideal\n";
  for (const auto& r : rows) {
    out << r.replication << ',' << r.doctors_prefer_capped << ',' << r.doctors_prefer_ideal << ','
        << r.hospitals_prefer_capped << ',' << r.hospitals_prefer_ideal << '\n';
  }
}

void write_heatmap_csv(std::ostream& out, std::span<const HeatmapCell> cells) {
  out << "l,k,mean_match_rate,n_reps\n";
  for (const auto& c : cells) {
    out << c.l << ',' << c.k << ',' << csv::number(c.mean_match_rate) << ',' << c.n_reps << '\n';
  }
}

}  // namespace imatch
