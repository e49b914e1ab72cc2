#include "kstat/estimators.hpp"
#include "kstat/evaluate.hpp"
#include "kstat/moments.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace kstat;

static void BM_KStatisticFast(benchmark::State& state) {
  const auto i = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(k_statistic_fast(i));
}
BENCHMARK(BM_KStatisticFast)->DenseRange(8, 28, 4)->Unit(benchmark::kMillisecond);

static void BM_KStatisticGeneral(benchmark::State& state) {
  const auto i = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(k_statistic(i));
}
BENCHMARK(BM_KStatisticGeneral)->DenseRange(4, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_Polykay(benchmark::State& state) {
  const auto a = static_cast<unsigned>(state.range(0));
  const unsigned orders[] = {a, a};
  for (auto _ : state) benchmark::DoNotOptimize(polykay(orders));
}
BENCHMARK(BM_Polykay)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_BivariateK(benchmark::State& state) {
  const auto a = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(multivariate_k({a, a}, 2));
}
BENCHMARK(BM_BivariateK)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_VerifyUnbiased(benchmark::State& state) {
  const auto spec = EstimatorSpec::univariate(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_unbiased(spec));
}
BENCHMARK(BM_VerifyUnbiased)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_EvaluateExact(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-50, 50);
  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(state.range(0)), std::vector<Rational>(1));
  for (auto& r : rows) r[0] = d(rng);
  const Dataset data({"x"}, rows);
  const auto k6 = k_statistic(6);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_estimator(k6, data));
}
BENCHMARK(BM_EvaluateExact)->RangeMultiplier(10)->Range(10, 10000);
BENCHMARK_MAIN();
