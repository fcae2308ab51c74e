#include <benchmark/benchmark.h>

#include <complex>

#include "schroeder_tails/density.hpp"
#include "schroeder_tails/spectral.hpp"

using namespace schroeder_tails;

namespace {

struct Pipeline {
  OffspringDistribution d;
  SchroederSeries phi;
  PoincareEvaluator pi;

  Pipeline()
      : d(OffspringDistribution::validate(std::vector<double>{0.0, 0.1, 0.5, 0.4})),
        phi(schroeder_series(d)),
        pi(poincare_coeffs(d)) {}
};

const Pipeline& pipeline() {
  static Pipeline p;
  return p;
}

}  // namespace

static void PiEvalImaginaryAxis(benchmark::State& state) {
  const auto& p = pipeline();
  const double y = double(state.range(0));
  for (auto _ : state) {
    auto v = pi_eval(p.pi, std::complex<double>(0.0, y));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(PiEvalImaginaryAxis)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

static void KstarSample(benchmark::State& state) {
  const auto& p = pipeline();
  double z = 0.0;
  for (auto _ : state) {
    z += 0.37;
    auto v = kstar_eval(p.phi, p.pi, z);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(KstarSample);

static void SpectrumBuild(benchmark::State& state) {
  const auto& p = pipeline();
  const auto grid = std::size_t(state.range(0));
  for (auto _ : state) {
    auto pm = build_periodic_multiplier(p.phi, p.pi, grid);
    benchmark::DoNotOptimize(pm);
  }
}
BENCHMARK(SpectrumBuild)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void FourierDensityPoint(benchmark::State& state) {
  const auto& p = pipeline();
  const FourierDensity fourier(p.pi);
  double x = 0.04;
  for (auto _ : state) {
    x = x < 1.0 ? x + 0.03 : 0.04;
    auto v = fourier(x);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(FourierDensityPoint);
