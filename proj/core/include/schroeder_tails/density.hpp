#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schroeder_tails/offspring.hpp"
#include "schroeder_tails/poincare.hpp"
#include "schroeder_tails/spectral.hpp"

namespace schroeder_tails {

enum class DensityMethod { iteration, fourier, monte_carlo, asymptotic };

const char* density_method_name(DensityMethod m);

/// Sampled density p(x) of the martingale limit W on an increasing x grid,
/// with method provenance. mass and mean are full-support Riemann sums and
/// only populated for the iteration method (both should be 1).
struct DensityGrid {
  std::vector<double> xs;
  std::vector<double> ps;
  DensityMethod method = DensityMethod::iteration;
  int generations = 0;           // iteration
  double quad_step = 0.0;        // fourier: step cap actually used
  double tail_cutoff = 0.0;      // fourier: achieved Y
  std::uint64_t sample_count = 0;  // monte carlo
  double mass = 0.0;
  double mean = 0.0;
  std::size_t clamped = 0;
};

struct XRange {
  double xmin = 0.0;
  double xmax = 0.0;
};

/// p(x) ~= E^t p_{t,[x E^t]} from an existing coefficient table; 0 outside
/// the support (in particular for x < 0). Binning follows the integer part
/// exactly; no interpolation.
double iteration_density_at(const CoefficientTable& table, const OffspringDistribution& d,
                            double x);

/// Density grid at spacing E^{-t} restricted to [range.xmin, range.xmax].
DensityGrid density_by_iteration(const OffspringDistribution& d, int t, XRange range,
                                 const IterateOptions& options = {});
DensityGrid density_grid_from_table(const CoefficientTable& table,
                                    const OffspringDistribution& d, XRange range);

struct QuadratureSpec {
  double max_step = 0.05;                // absolute cap on the y step
  double points_per_oscillation = 64.0;  // step <= 2*pi/(this * x)
  double tail_threshold = 1e-8;          // |Pi(iy)| must stay below this ...
  double y_max = 2e5;                    // ... before y_max, else error
};

/// Inverse-Fourier density: p(x) = (1/pi) Re int_0^Y Pi(iy) e^{ixy} dy with
/// composite Simpson quadrature. The table of Pi(iy) on the capped step is
/// shared across evaluations.
class FourierDensity {
 public:
  explicit FourierDensity(const PoincareEvaluator& pi, QuadratureSpec spec = {});

  double operator()(double x) const;
  double tail_cutoff() const { return y_end_; }  // Y actually used
  const QuadratureSpec& spec() const { return spec_; }

  DensityGrid grid(std::span<const double> xs, int threads = 0) const;

 private:
  double eval_raw(double x) const;

  const PoincareEvaluator& pi_;
  QuadratureSpec spec_;
  std::vector<std::complex<double>> table_;  // Pi(i j h), h = max_step
  double y_end_;
};

/// Single-point convenience wrapper (rebuilds the Pi table each call).
double density_by_fourier(const PoincareEvaluator& pi, double x, const QuadratureSpec& spec = {});

/// First asymptotic term x^alpha V(x).
double asymptotic_density(const PeriodicMultiplier& pm, const OffspringDistribution& d, double x);

struct CompareRow {
  double x = 0.0;
  double p_iteration = 0.0;
  double p_fourier = 0.0;
  double p_asymptotic = 0.0;
  double ratio = 0.0;  // p_iteration / p_asymptotic
};

struct CompareTable {
  std::vector<CompareRow> rows;
  int generations = 0;
  bool with_fourier = true;
  double mass = 0.0;  // full-support checks from the iteration table
  double mean = 0.0;
  double fourier_tail_cutoff = 0.0;
};

struct CompareOptions {
  std::size_t points = 200;  // log-spaced in [xmin, xmax]
  bool with_fourier = true;
  IterateOptions iterate;
  QuadratureSpec quadrature;
  std::size_t spectral_grid = 1024;
  int threads = 0;
};

/// The exact-vs-asymptotic table: rows (x, p_iter, p_fourier, p_asym, ratio).
CompareTable compare(const OffspringDistribution& d, int t, XRange range,
                     const CompareOptions& options = {});

/// Histogram density from Monte Carlo samples (bin width dx).
DensityGrid histogram_density(std::span<const double> w_samples, double bin_width);

}  // namespace schroeder_tails
