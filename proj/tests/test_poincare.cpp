#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "schroeder_tails/errors.hpp"
#include "schroeder_tails/poincare.hpp"

using namespace schroeder_tails;
using cdouble = std::complex<double>;

namespace {
const std::vector<double> kExample1 = {0.0, 0.1, 0.5, 0.4};
const std::vector<double> kExample2 = {0.0, 0.1, 0.1, 0.5, 0.3};
}  // namespace

TEST_CASE("normalization and the z^2 coefficient") {
  const auto d = OffspringDistribution::validate(kExample1);
  const auto ev = poincare_coeffs(d, 64);
  CHECK(ev.series()[0] == 1.0);
  CHECK(ev.series()[1] == -1.0);
  // pi_2 = P''(1) / (2 E (E-1)) = 3.4 / 5.98
  CHECK(ev.series()[2] == doctest::Approx(3.4 / 5.98).epsilon(1e-13));
}

TEST_CASE("functional equation residual on the trusted disk") {
  for (const auto& probs : {kExample1, kExample2}) {
    const auto d = OffspringDistribution::validate(probs);
    const auto ev = poincare_coeffs(d, 128);
    CHECK(ev.trusted_radius() > 1.0);
    CHECK(ev.residual() < 1e-10);
  }
}

TEST_CASE("pi_eval basics") {
  const auto d = OffspringDistribution::validate(kExample1);
  const auto ev = poincare_coeffs(d);
  CHECK(pi_eval(ev, cdouble(0.0, 0.0)) == cdouble(1.0, 0.0));

  // real positive axis: values in (0,1), strictly decreasing
  CHECK(pi_eval(ev, 10.0) < pi_eval(ev, 1.0));
  CHECK(pi_eval(ev, 1.0) < 1.0);
  double prev = 1.0;
  for (double x = 1e-2; x < 1e3; x *= 1.6) {
    const double v = pi_eval(ev, x);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("argument reduction is step-count independent") {
  const auto d = OffspringDistribution::validate(kExample1);
  const auto ev = poincare_coeffs(d);
  // supported domain: the real and imaginary axes, |z| up to 1e3
  for (double mag : {0.5, 3.0, 47.0, 1000.0}) {
    for (const cdouble z : {cdouble(mag, 0.0), cdouble(0.0, mag)}) {
      // k and k+1 reduction steps: evaluate at z/E with one fewer hop, then
      // map through P once more by the functional equation P(Pi(z/E)) = Pi(z)
      const cdouble direct = pi_eval(ev, z);
      const cdouble lifted = pgf_eval(d, pi_eval(ev, z / d.mean()));
      CHECK(std::abs(direct - lifted) < 1e-10);
    }
  }
  // off-axis arguments carry no tight guarantee but must stay consistent in
  // relative terms at moderate magnitude
  for (double angle : {0.7, 2.3, 4.0}) {
    const cdouble z = std::polar(2.5, angle);
    const cdouble direct = pi_eval(ev, z);
    const cdouble lifted = pgf_eval(d, pi_eval(ev, z / d.mean()));
    CHECK(std::abs(direct - lifted) < 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("limit oracle matches the evaluator") {
  for (const auto& probs : {kExample1, kExample2}) {
    const auto d = OffspringDistribution::validate(probs);
    const auto ev = poincare_coeffs(d);
    CHECK(pi_via_limit(d, cdouble(0.0, 0.0), 17) == cdouble(1.0, 0.0));
    CHECK(std::abs(pi_via_limit(d, cdouble(1.0, 0.0), 40) - pi_eval(ev, cdouble(1.0, 0.0))) <
          1e-8);
    CHECK(std::abs(pi_via_limit(d, cdouble(0.0, 5.0), 40) - pi_eval(ev, cdouble(0.0, 5.0))) <
          1e-7);
    for (int i = 0; i <= 25; ++i) {
      const double v = 20.0 * i / 25.0;
      CHECK(std::abs(pi_via_limit(d, cdouble(v, 0.0), 40) - pi_eval(ev, cdouble(v, 0.0))) < 1e-7);
      CHECK(std::abs(pi_via_limit(d, cdouble(0.0, v), 40) - pi_eval(ev, cdouble(0.0, v))) < 1e-7);
    }
  }
}

TEST_CASE("limit depth t = 40 sits on the Cauchy plateau") {
  for (const auto& probs : {kExample1, kExample2}) {
    const auto d = OffspringDistribution::validate(probs);
    for (const cdouble z : {cdouble(1.0, 0.0), cdouble(7.0, 0.0), cdouble(0.0, 12.0)}) {
      const cdouble a = pi_via_limit(d, z, 40);
      const cdouble b = pi_via_limit(d, z, 41);
      CHECK(std::abs(a - b) < 1e-9);
    }
  }
}

TEST_CASE("characteristic-function bound on the imaginary axis") {
  for (const auto& probs : {kExample1, kExample2}) {
    const auto d = OffspringDistribution::validate(probs);
    const auto ev = poincare_coeffs(d);
    for (double y = 0.0; y <= 1000.0; y += 7.3) {
      const double mag = std::abs(pi_eval(ev, cdouble(0.0, y)));
      CHECK(mag <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("order precondition") {
  const auto d = OffspringDistribution::validate(kExample1);
  CHECK_THROWS_AS(poincare_coeffs(d, 1), Error);
  CHECK_THROWS_AS(pi_via_limit(d, cdouble(1.0, 0.0), 0), Error);
}
