#include "schroeder_tails/power_series.hpp"

#include <algorithm>

#include "schroeder_tails/errors.hpp"

namespace schroeder_tails {

PowerSeries::PowerSeries(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.assign(1, 0.0);
}

PowerSeries PowerSeries::zero(std::size_t order) {
  return PowerSeries(std::vector<double>(order + 1, 0.0));
}

PowerSeries PowerSeries::identity(std::size_t order) {
  if (order < 1) fail(errc::invalid_argument, "identity series needs order >= 1");
  std::vector<double> c(order + 1, 0.0);
  c[1] = 1.0;
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
  std::vector<double> c(order + 1, 0.0);
  const std::size_t n = std::min(order + 1, c_.size());
  std::copy_n(c_.begin(), n, c.begin());
  return PowerSeries(std::move(c));
}

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b, std::size_t order) {
  std::vector<long double> acc(order + 1, 0.0L);
  const std::size_t na = std::min(a.order(), order);
  for (std::size_t i = 0; i <= na; ++i) {
    const long double ai = a[i];
    if (ai == 0.0L) continue;
    const std::size_t nb = std::min(b.order(), order - i);
    for (std::size_t j = 0; j <= nb; ++j) acc[i + j] += ai * b[j];
  }
  std::vector<double> out(order + 1);
  for (std::size_t i = 0; i <= order; ++i) out[i] = static_cast<double>(acc[i]);
  return PowerSeries(std::move(out));
}

PowerSeries compose_poly(std::span<const double> poly, const PowerSeries& s, std::size_t order) {
  if (poly.empty()) return PowerSeries::zero(order);
  PowerSeries acc = PowerSeries::zero(order);
  acc.coeff(0) = poly.back();
  for (std::size_t k = poly.size() - 1; k-- > 0;) {
    acc = multiply(acc, s, order);
    acc.coeff(0) += poly[k];
  }
  return acc;
}

std::vector<double> compose_full(std::span<const double> a, std::span<const double> b) {
  if (a.empty()) return {0.0};
  const std::size_t deg_b = b.empty() ? 0 : b.size() - 1;
  const std::size_t deg_out = (a.size() - 1) * deg_b;
  std::vector<double> acc(1, a.back());
  acc.reserve(deg_out + 1);
  std::vector<double> next;
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    next.assign(std::min(deg_out, (acc.size() - 1) + deg_b) + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      const double ci = acc[i];
      if (ci == 0.0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) next[i + j] += ci * b[j];
    }
    next[0] += a[k];
    acc.swap(next);
  }
  return acc;
}

double series_eval(const PowerSeries& s, double x) {
  return poly_eval(s.coeffs(), x);
}

std::complex<double> series_eval(const PowerSeries& s, std::complex<double> z) {
  return poly_eval(s.coeffs(), z);
}

double poly_eval(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

std::complex<double> poly_eval(std::span<const double> coeffs, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

}  // namespace schroeder_tails
