#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "imatch/market.hpp"

namespace imatch {

// Default master seed for every seeded routine.
inline constexpr std::uint64_t kDefaultSeed = 20210101;

/// Portable random stream.
///
/// std::mt19937_64 has a standard-mandated output sequence; the conversions
/// to real numbers below are done by hand (53-bit mantissa) so that draws are
/// bit-identical across standard libraries. <random> distributions are not
/// used because their algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  // [0, 1)
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }
  // (0, 1), never 0 or 1
  double uniform_open() { return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53; }
  // Standard logistic via inverse CDF.
  double logistic();
  // Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for replication `r` of a run with `master` seed. Independent of how
/// replications are scheduled.
std::uint64_t replication_seed(std::uint64_t master, std::uint64_t replication) noexcept;

struct GenParams {
  double beta = 40.0;   // weight on the partner's common quality
  double gamma = 20.0;  // weight on the squared fit distance
  int n_doctors = 470;
  int n_hospitals = 400;
  std::uint64_t seed = kDefaultSeed;
};

/// Latent draws behind a sampled market. Noise matrices are row-major:
/// hospital_noise[h * D + d] is the hospital's taste shock for doctor d,
/// doctor_noise[d * H + h] the doctor's shock for hospital h.
struct LatentDraw {
  std::vector<double> doctor_common, doctor_fit;
  std::vector<double> hospital_common, hospital_fit;
  std::vector<double> hospital_noise;
  std::vector<double> doctor_noise;
};

struct SampledMarket {
  Market market;
  LatentDraw latent;
};

/// Random-utility market:
///   u_h(d) = beta * xC_d - gamma * (xF_h - xF_d)^2 + e_hd
///   u_d(h) = beta * xC_h - gamma * (xF_h - xF_d)^2 + e_dh
/// with xC, xF ~ U[0,1] and e ~ standard logistic, all independent. Each
/// agent ranks every partner by descending utility (ties by index) and
/// finds all of them acceptable.
///
/// Draw order from Rng(params.seed): per doctor (xC, xF); per hospital
/// (xC, xF); e_hd for h then d; e_dh for d then h.
SampledMarket sample_market(const GenParams& params);

/// Uniformly random strict profile for property tests. With probability
/// `truncation` an agent's acceptable prefix length is drawn uniformly from
/// [0, n]; otherwise every partner is acceptable.
Market sample_uniform_profile(int n_doctors, int n_hospitals, std::uint64_t seed,
                              double truncation = 0.0);

// CSV with header: side,index,xC,xF
void write_latent_csv(std::ostream& out, const LatentDraw& latent);

}  // namespace imatch
