#include <benchmark/benchmark.h>

#include "schroeder_tails/simulate.hpp"

using namespace schroeder_tails;

static void BinomialDraw(benchmark::State& state) {
  SplitRng rng(99, 0);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    auto k = sample_binomial(rng, n, 0.3);
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(BinomialDraw)->Arg(50)->Arg(5000)->Arg(1 << 20)->Arg(std::int64_t(1) << 32);

static void GwTree(benchmark::State& state) {
  const auto d = OffspringDistribution::validate(std::vector<double>{0.0, 0.1, 0.5, 0.4});
  const int t = int(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    SplitRng rng(7, stream++);
    auto z = gw_population(d, t, rng);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(GwTree)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);
