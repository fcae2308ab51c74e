#include <benchmark/benchmark.h>

#include "schroeder_tails/offspring.hpp"
#include "schroeder_tails/schroeder.hpp"

using namespace schroeder_tails;

static void IteratePgfDirect(benchmark::State& state) {
  const auto d = OffspringDistribution::validate(std::vector<double>{0.0, 0.1, 0.5, 0.4});
  IterateOptions opts;
  opts.method = IterationMethod::direct;
  const int t = int(state.range(0));
  for (auto _ : state) {
    auto table = iterate_pgf(d, t, opts);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(IteratePgfDirect)->DenseRange(4, 8, 1)->Unit(benchmark::kMillisecond);

static void IteratePgfFft(benchmark::State& state) {
  const auto d = OffspringDistribution::validate(std::vector<double>{0.0, 0.1, 0.5, 0.4});
  IterateOptions opts;
  opts.method = IterationMethod::fft;
  const int t = int(state.range(0));
  for (auto _ : state) {
    auto table = iterate_pgf(d, t, opts);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(IteratePgfFft)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

static void SchroederRecursion(benchmark::State& state) {
  const auto d = OffspringDistribution::validate(std::vector<double>{0.0, 0.1, 0.5, 0.4});
  const auto order = std::size_t(state.range(0));
  for (auto _ : state) {
    auto s = schroeder_coeffs(d, order);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(SchroederRecursion)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);
