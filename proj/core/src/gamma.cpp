#include "schroeder_tails/gamma.hpp"

#include <cmath>
#include <numbers>

#include "schroeder_tails/errors.hpp"

namespace schroeder_tails {

namespace {

// B_{2n}/(2n(2n-1)) for the Stirling series of ln Gamma.
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
};

constexpr double kShiftRadius = 12.0;

// ln Gamma(w) for |w| >= 12, Re w > 0.
std::complex<double> log_gamma_stirling(std::complex<double> w) {
  const std::complex<double> log_w = std::log(w);
  std::complex<double> acc = (w - 0.5) * log_w - w + 0.5 * std::log(2.0 * std::numbers::pi);
  const std::complex<double> w2 = w * w;
  std::complex<double> term = 1.0 / w;
  for (double c : kStirling) {
    acc += c * term;
    term /= w2;
  }
  return acc;
}

std::complex<double> gamma_right_half(std::complex<double> z) {
  std::complex<double> divisor = 1.0;
  while (std::abs(z) < kShiftRadius) {
    divisor *= z;
    z += 1.0;
  }
  return std::exp(log_gamma_stirling(z)) / divisor;
}

}  // namespace

std::complex<double> complex_gamma(std::complex<double> z) {
  if (z.real() < 0.5) {
    if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
      fail(errc::pole_argument, "gamma pole at a nonpositive integer");
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const std::complex<double> s = std::sin(std::numbers::pi * z);
    return std::numbers::pi / (s * gamma_right_half(1.0 - z));
  }
  return gamma_right_half(z);
}

}  // namespace schroeder_tails
