#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace schroeder_tails {

/// Truncated real-coefficient power series c0 + c1 z + ... + cM z^M.
/// The truncation order is always explicit in the arithmetic below;
/// nothing ever reads past the requested order.
class PowerSeries {
 public:
  PowerSeries() : c_(1, 0.0) {}
  explicit PowerSeries(std::vector<double> coeffs);

  /// Series 0 + 0 z + ... with the given order.
  static PowerSeries zero(std::size_t order);
  /// The identity series z, truncated at `order` (order >= 1).
  static PowerSeries identity(std::size_t order);

  std::size_t order() const { return c_.size() - 1; }
  double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
  double& coeff(std::size_t i) { return c_[i]; }
  std::span<const double> coeffs() const { return c_; }

  /// Copy truncated (or zero-extended) to the given order.
  PowerSeries truncated(std::size_t order) const;

 private:
  std::vector<double> c_;
};

/// Cauchy product truncated at `order`.
PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, std::size_t order);

/// p(s(z)) truncated at `order`, Horner over the polynomial coefficients
/// with truncated multiplies.
PowerSeries compose_poly(std::span<const double> poly, const PowerSeries& s, std::size_t order);

/// Full (untruncated) polynomial composition a(b(z)). Quadratic cost;
/// meant for modest degrees and for test oracles.
std::vector<double> compose_full(std::span<const double> a, std::span<const double> b);

double series_eval(const PowerSeries& s, double x);
std::complex<double> series_eval(const PowerSeries& s, std::complex<double> z);

double poly_eval(std::span<const double> coeffs, double x);
std::complex<double> poly_eval(std::span<const double> coeffs, std::complex<double> z);

}  // namespace schroeder_tails
