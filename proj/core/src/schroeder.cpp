#include "schroeder_tails/schroeder.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "schroeder_tails/errors.hpp"

namespace schroeder_tails {

using namespace schroeder_constants;

namespace {

double functional_equation_residual(const PowerSeries& phi, const OffspringDistribution& d) {
  double worst = 0.0;
  for (int j = 0; j < 32; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / 32.0;
    const std::complex<double> z = std::polar(kResidualRadius, angle);
    const std::complex<double> lhs = series_eval(phi, pgf_eval(d, z));
    const std::complex<double> rhs = d.p1() * series_eval(phi, z);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace

SchroederSeries::SchroederSeries(PowerSeries phi, OffspringDistribution d)
    : phi_(std::move(phi)), dist_(std::move(d)),
      residual_(functional_equation_residual(phi_, dist_)) {}

SchroederSeries schroeder_coeffs(const OffspringDistribution& d, std::size_t order) {
  if (order < 2) fail(errc::invalid_argument, "schroeder_coeffs needs order >= 2");
  const std::span<const double> p = d.probs();
  const std::size_t n_max = d.max_family_size();
  const double p1 = d.p1();

  std::vector<double> phi(order + 1, 0.0);
  phi[1] = 1.0;

  // acc accumulates sum_{k<=n} phi_k P(z)^k truncated at `order`; pw holds
  // P(z)^n with its leading n-1 entries exactly zero (P has valuation 1).
  std::vector<double> acc(order + 1, 0.0);
  std::vector<double> pw(order + 1, 0.0);
  std::vector<double> pw_next(order + 1, 0.0);
  for (std::size_t j = 0; j <= std::min(order, n_max); ++j) pw[j] = p[j];
  for (std::size_t j = 0; j <= order; ++j) acc[j] = pw[j];

  double p1_pow = p1;  // p1^n
  for (std::size_t n = 2; n <= order; ++n) {
    p1_pow *= p1;
    phi[n] = acc[n] / (p1 - p1_pow);
    if (n == order) break;

    // pw <- pw * P, valuation n; only indices [n, order] can be nonzero.
    for (std::size_t i = n; i <= order; ++i) {
      double s = 0.0;
      const std::size_t j_hi = std::min(n_max, i - (n - 1));
      for (std::size_t j = 1; j <= j_hi; ++j) s += p[j] * pw[i - j];
      pw_next[i] = s;
    }
    for (std::size_t i = n; i <= order; ++i) {
      pw[i] = pw_next[i];
      acc[i] += phi[n] * pw[i];
    }
  }
  return SchroederSeries(PowerSeries(std::move(phi)), d);
}

SchroederSeries schroeder_series(const OffspringDistribution& d) {
  std::size_t order = 32;
  for (;;) {
    SchroederSeries s = schroeder_coeffs(d, order);
    const double tail = std::abs(s.phi()[order]) * std::pow(kResidualRadius, double(order));
    if (tail < 1e-14 || order >= kAdaptiveCap) return s;
    order *= 2;
  }
}

PowerSeries phi_via_limit(const OffspringDistribution& d, int depth, std::size_t order) {
  if (depth < 1) fail(errc::invalid_argument, "phi_via_limit needs depth >= 1");
  PowerSeries composed = PowerSeries::identity(order);
  for (int s = 0; s < depth; ++s) composed = compose_poly(d.probs(), composed, order);
  const double scale = std::pow(d.p1(), -double(depth));
  std::vector<double> out(order + 1);
  for (std::size_t i = 0; i <= order; ++i) out[i] = scale * composed[i];
  return PowerSeries(std::move(out));
}

double phi_eval(const SchroederSeries& s, double w) {
  if (!(w >= 0.0 && w < 1.0))
    fail(errc::invalid_argument, "phi_eval needs w in [0, 1)");
  const OffspringDistribution& d = s.distribution();
  int k = 0;
  while (w > kDirectRadius) {
    w = pgf_eval(d, w);
    if (++k > kMaxReductionSteps)
      fail(errc::no_convergence, "phi_eval argument reduction did not reach the series radius");
  }
  return std::pow(d.p1(), -double(k)) * series_eval(s.phi(), w);
}

}  // namespace schroeder_tails
