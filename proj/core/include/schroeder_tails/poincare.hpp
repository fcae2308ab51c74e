#pragma once

#include <complex>
#include <cstddef>

#include "schroeder_tails/offspring.hpp"
#include "schroeder_tails/power_series.hpp"

namespace schroeder_tails {

/// The entire Poincare function solving P(Pi(z)) = Pi(Ez), Pi(0) = 1,
/// Pi'(0) = -1. Pi(iy) is the Fourier transform of the martingale-limit
/// density. Series around 0 plus an argument-reduced evaluator.
class PoincareEvaluator {
 public:
  PoincareEvaluator(PowerSeries series, OffspringDistribution d);

  const PowerSeries& series() const { return series_; }
  const OffspringDistribution& distribution() const { return dist_; }
  std::size_t order() const { return series_.order(); }

  /// Direct-summation radius: largest R0 with |pi_M| R0^M < 1e-13.
  double trusted_radius() const { return radius_; }

  /// max |P(Pi(z)) - Pi(Ez)| over 32 probe points with |z| = R0/E,
  /// computed at construction.
  double residual() const { return residual_; }

 private:
  PowerSeries series_;
  OffspringDistribution dist_;
  double radius_;
  double residual_;
};

/// Coefficients pi_0..pi_M by matching powers in the functional equation:
/// pi_n = (lower-order contributions)/(E^n - E).
PoincareEvaluator poincare_coeffs(const OffspringDistribution& d, std::size_t order = 128);

/// Pi(z) anywhere: pick the smallest k >= 0 with |E^{-k} z| <= R0, sum the
/// series there, then apply P pointwise k times.
std::complex<double> pi_eval(const PoincareEvaluator& ev, std::complex<double> z);
double pi_eval(const PoincareEvaluator& ev, double x);

/// Independent oracle, Pi(z) = lim_t P∘...∘P(1 - E^{-t} z). Iterates the
/// deviation from the fixed point 1 so the tiny initial offset E^{-t} z is
/// never lost to rounding.
std::complex<double> pi_via_limit(const OffspringDistribution& d, std::complex<double> z, int depth);

}  // namespace schroeder_tails
