#include "schroeder_tails/poincare.hpp"

#include <cmath>
#include <numbers>

#include "schroeder_tails/errors.hpp"

namespace schroeder_tails {

namespace {

constexpr double kRadiusTarget = 1e-13;
// The coefficients alternate in sign, so summation at radius r cancels down
// from terms as large as max_n |pi_n| r^n; keeping that below 1e2 bounds the
// cancellation error near 1e2 * eps.
constexpr double kConditioningCap = 1e2;

double find_trusted_radius(const PowerSeries& s) {
  std::size_t m = s.order();
  while (m > 2 && std::abs(s[m]) < 1e-300) --m;
  double radius = std::pow(kRadiusTarget / std::abs(s[m]), 1.0 / double(m));
  for (std::size_t n = 1; n <= m; ++n) {
    const double mag = std::abs(s[n]);
    if (mag > 0.0)
      radius = std::min(radius, std::pow(kConditioningCap / mag, 1.0 / double(n)));
  }
  return radius;
}

double functional_equation_residual(const PowerSeries& s, const OffspringDistribution& d,
                                    double radius) {
  const double probe = radius / d.mean();
  double worst = 0.0;
  for (int j = 0; j < 32; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / 32.0;
    const std::complex<double> z = std::polar(probe, angle);
    const std::complex<double> lhs = pgf_eval(d, series_eval(s, z));
    const std::complex<double> rhs = series_eval(s, d.mean() * z);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace

PoincareEvaluator::PoincareEvaluator(PowerSeries series, OffspringDistribution d)
    : series_(std::move(series)), dist_(std::move(d)),
      radius_(find_trusted_radius(series_)),
      residual_(functional_equation_residual(series_, dist_, radius_)) {}

PoincareEvaluator poincare_coeffs(const OffspringDistribution& d, std::size_t order) {
  if (order < 2) fail(errc::invalid_argument, "poincare_coeffs needs order >= 2");
  const std::span<const double> a = d.taylor_about_one();  // P about 1
  const std::size_t n_max = d.max_family_size();
  const double mean = d.mean();

  // Pi = 1 + u with u(0) = 0; matching P(1 + u(z)) = Pi(Ez) gives
  // u_n = sum_{k=2..N} a_k [z^n](u^k) / (E^n - E). The powers u^k are filled
  // progressively: [z^n](u^k) only needs u-coefficients below n.
  std::vector<std::vector<double>> pow_u(n_max + 1);
  for (std::size_t k = 1; k <= n_max; ++k) pow_u[k].assign(order + 1, 0.0);
  pow_u[1][1] = -1.0;  // u_1 = Pi'(0) = -1

  double mean_pow = mean;  // E^n
  for (std::size_t n = 2; n <= order; ++n) {
    mean_pow *= mean;
    for (std::size_t k = 2; k <= std::min(n, n_max); ++k) {
      double s = 0.0;
      for (std::size_t i = k - 1; i <= n - 1; ++i)
        s += pow_u[k - 1][i] * pow_u[1][n - i];
      pow_u[k][n] = s;
    }
    double rhs = 0.0;
    for (std::size_t k = 2; k <= std::min(n, n_max); ++k) rhs += a[k] * pow_u[k][n];
    pow_u[1][n] = rhs / (mean_pow - mean);
  }

  std::vector<double> pi(order + 1, 0.0);
  pi[0] = 1.0;
  for (std::size_t n = 1; n <= order; ++n) pi[n] = pow_u[1][n];
  return PoincareEvaluator(PowerSeries(std::move(pi)), d);
}

std::complex<double> pi_eval(const PoincareEvaluator& ev, std::complex<double> z) {
  const double r0 = ev.trusted_radius();
  const OffspringDistribution& d = ev.distribution();
  int k = 0;
  double mag = std::abs(z);
  if (mag > r0) {
    k = static_cast<int>(std::ceil(std::log(mag / r0) / d.log_mean()));
    if (k < 0) k = 0;
  }
  std::complex<double> w = series_eval(ev.series(), z * std::pow(d.mean(), -double(k)));
  for (int s = 0; s < k; ++s) w = pgf_eval(d, w);
  return w;
}

double pi_eval(const PoincareEvaluator& ev, double x) {
  const double r0 = ev.trusted_radius();
  const OffspringDistribution& d = ev.distribution();
  int k = 0;
  if (std::abs(x) > r0) {
    k = static_cast<int>(std::ceil(std::log(std::abs(x) / r0) / d.log_mean()));
    if (k < 0) k = 0;
  }
  double w = series_eval(ev.series(), x * std::pow(d.mean(), -double(k)));
  for (int s = 0; s < k; ++s) w = pgf_eval(d, w);
  return w;
}

std::complex<double> pi_via_limit(const OffspringDistribution& d, std::complex<double> z, int depth) {
  if (depth < 1) fail(errc::invalid_argument, "pi_via_limit needs depth >= 1");
  const std::span<const double> a = d.taylor_about_one();
  // Iterate the deviation from the fixed point: with x = 1 - dev,
  // 1 - P(1 - dev) = dev * H(-dev) where H is Horner over a_1..a_N.
  std::complex<double> dev = z * std::pow(d.mean(), -double(depth));
  for (int s = 0; s < depth; ++s) {
    const std::complex<double> minus_dev = -dev;
    std::complex<double> h = a[a.size() - 1];
    for (std::size_t k = a.size() - 1; k-- > 1;) h = h * minus_dev + a[k];
    dev *= h;
  }
  return 1.0 - dev;
}

}  // namespace schroeder_tails
