#include "imatch/prefgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "imatch/csv.hpp"

namespace imatch {

double Rng::logistic() {
  const double u = uniform_open();
  return std::log(u / (1.0 - u));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = bits();
  while (x >= limit) x = bits();
  return x % n;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t master, std::uint64_t replication) noexcept {
  return mix64(mix64(master) ^ mix64(replication + 0x632be59bd9b4e019ULL));
}

namespace {

std::vector<double> draw(Rng& rng, std::size_t n, double (Rng::*fn)()) {
  std::vector<double> out(n);
  for (auto& x : out) x = (rng.*fn)();
  return out;
}

// Partners sorted by descending utility; exact ties keep ascending index.
std::vector<int> rank_by_utility(const std::vector<double>& utility) {
  std::vector<int> order(utility.size());
  std::iota(order.begin(), order.end(), 0);
  std::ranges::stable_sort(order, [&](int a, int b) {
    return utility[static_cast<std::size_t>(a)] > utility[static_cast<std::size_t>(b)];
  });
  return order;
}

}  // namespace

SampledMarket sample_market(const GenParams& params) {
  if (params.n_doctors < 2 || params.n_hospitals < 2) {
    throw std::invalid_argument("market sides must have at least two agents");
  }
  if (params.beta < 0 || params.gamma < 0) {
    throw std::invalid_argument("beta and gamma must be non-negative");
  }
  const auto n_d = static_cast<std::size_t>(params.n_doctors);
  const auto n_h = static_cast<std::size_t>(params.n_hospitals);
  Rng rng(params.seed);
  LatentDraw z;
  z.doctor_common.resize(n_d);
  z.doctor_fit.resize(n_d);
  for (std::size_t d = 0; d < n_d; ++d) {
    z.doctor_common[d] = rng.uniform();
    z.doctor_fit[d] = rng.uniform();
  }
  z.hospital_common.resize(n_h);
  z.hospital_fit.resize(n_h);
  for (std::size_t h = 0; h < n_h; ++h) {
    z.hospital_common[h] = rng.uniform();
    z.hospital_fit[h] = rng.uniform();
  }
  z.hospital_noise = draw(rng, n_h * n_d, &Rng::logistic);
  z.doctor_noise = draw(rng, n_d * n_h, &Rng::logistic);

  auto fit_loss = [&](std::size_t d, std::size_t h) {
    const double gap = z.hospital_fit[h] - z.doctor_fit[d];
    return params.gamma * gap * gap;
  };

  std::vector<Preference> doctors;
  doctors.reserve(n_d);
  std::vector<double> utility(n_h);
  for (std::size_t d = 0; d < n_d; ++d) {
    for (std::size_t h = 0; h < n_h; ++h) {
      utility[h] = params.beta * z.hospital_common[h] - fit_loss(d, h) + z.doctor_noise[d * n_h + h];
    }
    doctors.push_back(Preference::all_acceptable(rank_by_utility(utility)));
  }
  std::vector<Preference> hospitals;
  hospitals.reserve(n_h);
  utility.resize(n_d);
  for (std::size_t h = 0; h < n_h; ++h) {
    for (std::size_t d = 0; d < n_d; ++d) {
      utility[d] = params.beta * z.doctor_common[d] - fit_loss(d, h) + z.hospital_noise[h * n_d + d];
    }
    hospitals.push_back(Preference::all_acceptable(rank_by_utility(utility)));
  }
  return {Market(std::move(doctors), std::move(hospitals)), std::move(z)};
}

Market sample_uniform_profile(int n_doctors, int n_hospitals, std::uint64_t seed, double truncation) {
  Rng rng(seed);
  auto side = [&](int n_agents, int n_partners) {
    std::vector<Preference> prefs;
    for (int i = 0; i < n_agents; ++i) {
      std::vector<int> ranked(static_cast<std::size_t>(n_partners));
      std::iota(ranked.begin(), ranked.end(), 0);
      // Fisher-Yates; std::shuffle is implementation-defined.
      for (std::size_t j = ranked.size(); j > 1; --j) {
        std::swap(ranked[j - 1], ranked[rng.below(j)]);
      }
      auto cutoff = ranked.size();
      if (truncation > 0 && rng.uniform() < truncation) cutoff = rng.below(ranked.size() + 1);
      prefs.emplace_back(std::move(ranked), cutoff);
    }
    return prefs;
  };
  auto doctors = side(n_doctors, n_hospitals);
  auto hospitals = side(n_hospitals, n_doctors);
  return Market(std::move(doctors), std::move(hospitals));
}

void write_latent_csv(std::ostream& out, const LatentDraw& latent) {
  out << "side,index,xC,xF\n";
  for (std::size_t d = 0; d < latent.doctor_common.size(); ++d) {
    out << "doctor," << d << ',' << csv::number(latent.doctor_common[d]) << ','
        << csv::number(latent.doctor_fit[d]) << '\n';
  }
  for (std::size_t h = 0; h < latent.hospital_common.size(); ++h) {
    out << "hospital," << h << ',' << csv::number(latent.hospital_common[h]) << ','
        << csv::number(latent.hospital_fit[h]) << '\n';
  }
}

}  // namespace imatch
