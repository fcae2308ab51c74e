#pragma once

#include <cstddef>

#include "schroeder_tails/offspring.hpp"
#include "schroeder_tails/power_series.hpp"

namespace schroeder_tails {

/// Taylor coefficients of the Schroeder function solving
/// Phi(P(z)) = p1 Phi(z), Phi(0) = 0, Phi'(0) = 1. The coefficients are the
/// relative limit densities lim_t p_{t,n}/p_{t,1}.
class SchroederSeries {
 public:
  SchroederSeries(PowerSeries phi, OffspringDistribution d);

  const PowerSeries& phi() const { return phi_; }
  const OffspringDistribution& distribution() const { return dist_; }
  std::size_t order() const { return phi_.order(); }

  /// max |Phi(P(z)) - p1 Phi(z)| over 32 probe points with |z| = 0.3,
  /// computed at construction.
  double residual() const { return residual_; }

 private:
  PowerSeries phi_;
  OffspringDistribution dist_;
  double residual_;
};

/// Coefficients phi_0..phi_M by matching powers in the functional equation:
/// phi_n = (lower-order contributions)/(p1 - p1^n). Streaming evaluation,
/// O(M) memory, so large M (1e5-scale) is fine.
SchroederSeries schroeder_coeffs(const OffspringDistribution& d, std::size_t order);

/// Adaptive order: doubles M until the series tail at the residual probe
/// radius 0.3 drops under 1e-14 (capped at 512).
SchroederSeries schroeder_series(const OffspringDistribution& d);

/// Independent oracle: Taylor coefficients of p1^{-t} P∘...∘P (t-fold),
/// truncated at `order`.
PowerSeries phi_via_limit(const OffspringDistribution& d, int depth, std::size_t order);

/// Phi(w) for real w in [0, 1): apply P until the iterate drops below the
/// direct-summation radius 0.1, sum the series there, scale by p1^{-k}.
double phi_eval(const SchroederSeries& s, double w);

namespace schroeder_constants {
inline constexpr double kDirectRadius = 0.1;
inline constexpr double kResidualRadius = 0.3;
inline constexpr std::size_t kAdaptiveCap = 512;
inline constexpr int kMaxReductionSteps = 10000;
}  // namespace schroeder_constants

}  // namespace schroeder_tails
