#include <benchmark/benchmark.h>

#include <random>

#include "schroeder_tails/power_series.hpp"

using namespace schroeder_tails;

namespace {

PowerSeries random_series(std::size_t order, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<double> c(order + 1);
  for (double& v : c) v = coeff(gen);
  return PowerSeries(std::move(c));
}

}  // namespace

static void SeriesMultiply(benchmark::State& state) {
  const auto order = std::size_t(state.range(0));
  const PowerSeries a = random_series(order, 1);
  const PowerSeries b = random_series(order, 2);
  for (auto _ : state) {
    auto c = multiply(a, b, order);
    benchmark::DoNotOptimize(c);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SeriesMultiply)->RangeMultiplier(2)->Range(32, 512)->Complexity();

static void SeriesComposePgf(benchmark::State& state) {
  const auto order = std::size_t(state.range(0));
  const std::vector<double> pgf = {0.0, 0.1, 0.5, 0.4};
  const PowerSeries s = random_series(order, 3);
  for (auto _ : state) {
    auto c = compose_poly(pgf, s, order);
    benchmark::DoNotOptimize(c);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SeriesComposePgf)->RangeMultiplier(2)->Range(32, 512)->Complexity();
