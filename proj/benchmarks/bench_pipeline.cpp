#include <benchmark/benchmark.h>

#include "imatch/engines.hpp"
#include "imatch/prefgen.hpp"
#include "imatch/stability.hpp"
#include "imatch/theory.hpp"

namespace {

imatch::Market default_market(int n_doctors, int n_hospitals) {
  imatch::GenParams p;
  p.n_doctors = n_doctors;
  p.n_hospitals = n_hospitals;
  return imatch::sample_market(p).market;
}

void BM_SampleMarket(benchmark::State& state) {
  imatch::GenParams p;
  p.n_doctors = static_cast<int>(state.range(0));
  p.n_hospitals = static_cast<int>(state.range(0) * 400 / 470);
  for (auto _ : state) benchmark::DoNotOptimize(imatch::sample_market(p));
}
BENCHMARK(BM_SampleMarket)->Arg(94)->Arg(470)->Unit(benchmark::kMillisecond);

void BM_InterviewDA(benchmark::State& state) {
  const auto market = default_market(470, 400);
  const auto arrangement = imatch::Arrangement::homogeneous(market, 25, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(imatch::interview_da(market, arrangement));
}
BENCHMARK(BM_InterviewDA)->Arg(5)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TwoStep(benchmark::State& state) {
  const auto market = default_market(470, 400);
  const auto arrangement = imatch::Arrangement::homogeneous(market, 25, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(imatch::run_two_step(market, arrangement));
}
BENCHMARK(BM_TwoStep)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_CountBlocking(benchmark::State& state) {
  const auto market = default_market(470, 400);
  const auto outcome = imatch::run_two_step(market, imatch::Arrangement::homogeneous(market, 25, 5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(imatch::count_blocking_pairs(outcome.matching, market));
  }
}
BENCHMARK(BM_CountBlocking)->Unit(benchmark::kMicrosecond);

void BM_CommonMarketPipeline(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto market = imatch::common_market(n, n);
  const auto arrangement = imatch::Arrangement::homogeneous(market, 3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(imatch::run_two_step(market, arrangement));
}
BENCHMARK(BM_CommonMarketPipeline)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
