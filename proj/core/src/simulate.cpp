#include "schroeder_tails/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "schroeder_tails/errors.hpp"
#include "schroeder_tails/parallel.hpp"

namespace schroeder_tails {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

SplitRng::SplitRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = stream;
  x = seed ^ splitmix64(x);
  s_[0] = splitmix64(x);
  s_[1] = splitmix64(x);
  s_[2] = splitmix64(x);
  s_[3] = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t SplitRng::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double SplitRng::next_double() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double SplitRng::next_normal() {
  for (;;) {
    const double u = 2.0 * next_double() - 1.0;
    const double v = 2.0 * next_double() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double sample_gamma(SplitRng& rng, double shape) {
  if (!(shape >= 1.0)) fail(errc::invalid_argument, "sample_gamma needs shape >= 1");
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_double();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_beta(SplitRng& rng, double a, double b) {
  const double ga = sample_gamma(rng, a);
  const double gb = sample_gamma(rng, b);
  const double sum = ga + gb;
  if (sum <= 0.0) return 0.5;
  return ga / sum;
}

namespace {

// BINV: cumulative inversion walk, cheap when n q is small.
std::int64_t binomial_inversion(SplitRng& rng, std::int64_t n, double q) {
  const double s = q / (1.0 - q);
  double f = std::pow(1.0 - q, double(n));
  double u = rng.next_double();
  std::int64_t k = 0;
  while (u > f && k < n) {
    u -= f;
    ++k;
    f *= s * double(n - k + 1) / double(k);
  }
  return k;
}

// Order-statistic splitting: the median of n uniforms is Beta((n+1)/2, ...),
// and conditioning on it halves the problem. Depth O(log n), each level one
// beta draw, exact at every stage.
std::int64_t binomial_recursive(SplitRng& rng, std::int64_t n, double q) {
  if (n <= 0 || q <= 0.0) return 0;
  if (q >= 1.0) return n;
  if (q > 0.5) return n - binomial_recursive(rng, n, 1.0 - q);
  if (n <= 64 || double(n) * q <= 30.0) return binomial_inversion(rng, n, q);
  const std::int64_t i = (n + 1) / 2;
  double v = sample_beta(rng, double(i), double(n - i + 1));
  v = std::clamp(v, 1e-300, 1.0 - 1e-16);
  if (q < v) return binomial_recursive(rng, i - 1, q / v);
  return i + binomial_recursive(rng, n - i, (q - v) / (1.0 - v));
}

}  // namespace

std::int64_t sample_binomial(SplitRng& rng, std::int64_t n, double p) {
  if (n <= 0) return 0;
  if (!(p > 0.0)) return 0;
  if (p >= 1.0) return n;
  return binomial_recursive(rng, n, p);
}

std::int64_t gw_population(const OffspringDistribution& d, int generations, SplitRng& rng,
                           std::uint64_t population_cap) {
  if (generations < 0) fail(errc::invalid_argument, "generations must be >= 0");
  const std::size_t n_max = d.max_family_size();
  std::int64_t z = 1;
  for (int g = 0; g < generations; ++g) {
    std::int64_t remaining = z;
    std::int64_t z_next = 0;
    double mass = 1.0;
    for (std::size_t j = 1; j < n_max && remaining > 0; ++j) {
      const double pj = d.p(j);
      if (pj <= 0.0) continue;
      const double r = std::clamp(pj / mass, 0.0, 1.0);
      const std::int64_t c = sample_binomial(rng, remaining, r);
      z_next += std::int64_t(j) * c;
      remaining -= c;
      mass -= pj;
    }
    z_next += std::int64_t(n_max) * remaining;
    z = z_next;
    if (std::uint64_t(z) > population_cap) {
      std::ostringstream msg;
      msg << "population " << z << " at generation " << (g + 1) << " over the cap "
          << population_cap;
      fail(errc::population_overflow, msg.str());
    }
  }
  return z;
}

SimulationRun run_simulation(const OffspringDistribution& d, int generations,
                             std::uint64_t trees, std::uint64_t seed,
                             const SimulateOptions& options) {
  if (trees == 0) fail(errc::invalid_argument, "need at least one tree");
  SimulationRun run;
  run.generations = generations;
  run.trees = trees;
  run.seed = seed;
  run.w_samples.assign(trees, 0.0);
  const double scale = std::pow(d.mean(), -double(generations));
  parallel_for(trees, options.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      SplitRng rng(seed, i);
      run.w_samples[i] = scale * double(gw_population(d, generations, rng, options.population_cap));
    }
  });
  return run;
}

double ks_distance(const SimulationRun& run, const DensityGrid& grid) {
  if (grid.xs.size() < 2) fail(errc::invalid_argument, "density grid too small");
  std::vector<double> w(run.w_samples);
  std::sort(w.begin(), w.end());

  const double lo = grid.xs.front(), hi = grid.xs.back();
  std::size_t outside = 0;
  for (double v : w)
    if (v < lo || v > hi) ++outside;
  if (double(outside) > 1e-3 * double(w.size())) {
    std::ostringstream msg;
    msg << outside << " of " << w.size() << " samples outside the grid range [" << lo << ", "
        << hi << "] (over the 1e-3 tail-mass allowance)";
    fail(errc::grid_coverage, msg.str());
  }

  // Cumulative trapezoid CDF at the grid nodes.
  std::vector<double> cdf(grid.xs.size(), 0.0);
  for (std::size_t i = 1; i < grid.xs.size(); ++i)
    cdf[i] = cdf[i - 1] +
             0.5 * (grid.ps[i] + grid.ps[i - 1]) * (grid.xs[i] - grid.xs[i - 1]);

  auto cdf_at = [&](double x) {
    if (x <= lo) return 0.0;
    if (x >= hi) return cdf.back();
    const auto it = std::upper_bound(grid.xs.begin(), grid.xs.end(), x);
    const std::size_t k = std::size_t(it - grid.xs.begin());
    const double frac = (x - grid.xs[k - 1]) / (grid.xs[k] - grid.xs[k - 1]);
    return cdf[k - 1] + frac * (cdf[k] - cdf[k - 1]);
  };

  double dist = 0.0;
  const double n = double(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double f = cdf_at(w[i]);
    dist = std::max(dist, std::abs(double(i + 1) / n - f));
    dist = std::max(dist, std::abs(double(i) / n - f));
  }
  return dist;
}

}  // namespace schroeder_tails
