#pragma once

#include <cstdint>
#include <vector>

#include "schroeder_tails/density.hpp"
#include "schroeder_tails/offspring.hpp"

namespace schroeder_tails {

/// Splittable deterministic stream: every draw is fixed by (seed, stream),
/// independent of scheduling. xoshiro256++ seeded through splitmix64.
class SplitRng {
 public:
  SplitRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_double();  // uniform [0, 1)
  double next_normal();  // standard normal (polar method)

 private:
  std::uint64_t s_[4];
};

/// Exact binomial draw for any n >= 0, p in [0, 1]: inversion for small
/// n*min(p,1-p), recursive order-statistic (beta) splitting otherwise.
std::int64_t sample_binomial(SplitRng& rng, std::int64_t n, double p);

/// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang) and Beta(a, b) from two
/// gammas; exposed as the binomial splitter's building blocks for tests.
double sample_gamma(SplitRng& rng, double shape);
double sample_beta(SplitRng& rng, double a, double b);

inline constexpr std::uint64_t kDefaultPopulationCap = std::uint64_t(1) << 53;

/// One generation-t population realization Z_t (X_0 = 1). Offspring counts
/// follow d; the per-generation aggregate is drawn as multinomial category
/// counts via a chain of binomials, which matches i.i.d. per-individual
/// sampling in distribution at O(t * N) draws per tree.
std::int64_t gw_population(const OffspringDistribution& d, int generations, SplitRng& rng,
                           std::uint64_t population_cap = kDefaultPopulationCap);

struct SimulationRun {
  int generations = 0;
  std::uint64_t trees = 0;
  std::uint64_t seed = 0;
  std::vector<double> w_samples;  // E^{-t} Z_t per tree
};

struct SimulateOptions {
  std::uint64_t population_cap = kDefaultPopulationCap;
  int threads = 0;
};

SimulationRun run_simulation(const OffspringDistribution& d, int generations,
                             std::uint64_t trees, std::uint64_t seed,
                             const SimulateOptions& options = {});

/// Kolmogorov-Smirnov statistic between the empirical CDF of the samples and
/// the trapezoid CDF of a density grid. The grid must cover the sample range
/// up to 1e-3 tail mass (GridCoverage otherwise).
double ks_distance(const SimulationRun& run, const DensityGrid& grid);

}  // namespace schroeder_tails
