#include "schroeder_tails/offspring.hpp"

#include <cmath>
#include <sstream>

#include "pgf_fft.hpp"
#include "schroeder_tails/errors.hpp"
#include "schroeder_tails/power_series.hpp"

namespace schroeder_tails {

namespace {

constexpr double kSumTolerance = 1e-12;
// Below this size the direct Horner composition is cheap and exact-prefix
// splicing is moot; above it the FFT step takes over.
constexpr std::size_t kDirectSizeLimit = 4096;
// FFT rounding can leave tiny negatives where the true coefficient has
// underflowed; anything more negative than this means the transform failed.
constexpr double kClampFloor = -1e-13;

}  // namespace

OffspringDistribution OffspringDistribution::validate(std::span<const double> probs) {
  std::vector<double> p(probs.begin(), probs.end());
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  if (p.size() < 3)
    fail(errc::invalid_argument, "need max family size N >= 2 (at least p0, p1, p2 with p_N > 0)");
  for (double v : p)
    if (!std::isfinite(v) || v < 0.0)
      fail(errc::invalid_argument, "probabilities must be finite and nonnegative");
  if (p[0] != 0.0)
    fail(errc::non_zero_p0,
         "p0 must be 0; the Harris-Sevastyanov reduction of p0 > 0 laws is not supported here");
  if (!(p[1] > 0.0 && p[1] < 1.0))
    fail(errc::p1_out_of_range, "need 0 < p1 < 1 (Schroeder case)");

  long double sum = 0.0L;
  for (double v : p) sum += v;
  if (std::fabs(static_cast<double>(sum) - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << static_cast<double>(sum)
        << "; must equal 1 within " << kSumTolerance;
    fail(errc::not_normalized, msg.str());
  }
  for (double& v : p) v = static_cast<double>(v / sum);

  bool adjacent = false;
  for (std::size_t k = 1; k + 1 < p.size(); ++k)
    if (p[k] != 0.0 && p[k + 1] != 0.0) { adjacent = true; break; }
  if (!adjacent)
    fail(errc::periodic_support, "no k >= 1 with p_k and p_{k+1} both nonzero (periodic support)");

  long double mean = 0.0L;
  for (std::size_t j = 1; j < p.size(); ++j) mean += static_cast<long double>(j) * p[j];
  if (!(mean > 1.0L)) {
    std::ostringstream msg;
    msg << "mean offspring E = " << static_cast<double>(mean) << " <= 1; process not supercritical";
    fail(errc::subcritical, msg.str());
  }

  OffspringDistribution d;
  d.probs_ = std::move(p);
  d.mean_ = static_cast<double>(mean);
  d.log_mean_ = std::log(d.mean_);
  d.log_p1_ = std::log(d.probs_[1]);
  d.tail_exponent_ = -std::log(d.mean_ * d.probs_[1]) / std::log(d.mean_);

  // a_k = P^(k)(1)/k! = sum_j p_j C(j, k)
  const std::size_t n = d.probs_.size();
  d.about_one_.assign(n, 0.0);
  std::vector<long double> binom(n, 0.0L);  // C(j, k) column for fixed k
  for (std::size_t k = 0; k < n; ++k) {
    long double a = 0.0L;
    for (std::size_t j = k; j < n; ++j) {
      if (k == 0) {
        binom[j] = 1.0L;
      } else {
        // C(j, k) = C(j-1, k-1) * j / (j - k + ... ) -- use multiplicative update
        binom[j] = binom[j] * static_cast<long double>(j - k + 1) / static_cast<long double>(k);
      }
      a += binom[j] * d.probs_[j];
    }
    d.about_one_[k] = static_cast<double>(a);
  }
  return d;
}

double pgf_eval(const OffspringDistribution& d, double x) {
  return poly_eval(d.probs(), x);
}

std::complex<double> pgf_eval(const OffspringDistribution& d, std::complex<double> z) {
  return poly_eval(d.probs(), z);
}

double pgf_derivative(const OffspringDistribution& d, double x) {
  const auto p = d.probs();
  double acc = 0.0;
  for (std::size_t j = p.size(); j-- > 1;)
    acc = acc * x + static_cast<double>(j) * p[j];
  return acc;
}

std::uint64_t iterate_degree(const OffspringDistribution& d, int t, std::uint64_t cap) {
  const auto n = static_cast<unsigned __int128>(d.max_family_size());
  unsigned __int128 deg = 1;
  for (int s = 0; s < t; ++s) {
    deg *= n;
    if (deg > cap) {
      std::ostringstream msg;
      msg << "t = " << t << " needs N^t = " << d.max_family_size() << "^" << t
          << " coefficients, over the cap " << cap;
      fail(errc::cap_exceeded, msg.str());
    }
  }
  return static_cast<std::uint64_t>(deg);
}

CoefficientTable iterate_pgf(const OffspringDistribution& d, int t, const IterateOptions& options) {
  if (t < 1) fail(errc::invalid_argument, "iteration depth t must be >= 1");
  const std::uint64_t degree = iterate_degree(d, t, options.coefficient_cap);

  IterationMethod method = options.method;
  if (method == IterationMethod::automatic)
    method = degree + 1 <= kDirectSizeLimit ? IterationMethod::direct : IterationMethod::fft;

  CoefficientTable table;
  table.generations = t;

  const std::span<const double> pgf = d.probs();
  std::vector<double> cur(pgf.begin(), pgf.end());

  if (method == IterationMethod::direct) {
    for (int s = 1; s < t; ++s) cur = compose_full(pgf, cur);
    table.coeffs = std::move(cur);
    return table;
  }

  const std::size_t prefix = std::min<std::size_t>(options.exact_prefix, degree);
  PowerSeries pref = PowerSeries(std::vector<double>(pgf.begin(), pgf.end())).truncated(prefix);
  for (int s = 1; s < t; ++s) {
    if ((cur.size() - 1) * d.max_family_size() + 1 <= kDirectSizeLimit)
      cur = compose_full(pgf, cur);
    else
      cur = detail::pgf_step_fft(pgf, cur);
    pref = compose_poly(pgf, pref, prefix);
    const std::size_t keep = std::min(prefix, cur.size() - 1);
    for (std::size_t i = 0; i <= keep; ++i) cur[i] = pref[i];
  }

  for (double& c : cur) {
    if (c < 0.0) {
      if (c < kClampFloor)
        fail(errc::negative_density, "fft composition produced a coefficient below the noise floor");
      c = 0.0;
      ++table.clamped;
    }
  }
  table.coeffs = std::move(cur);
  return table;
}

double table_sum(const CoefficientTable& table) {
  long double s = 0.0L;
  for (double c : table.coeffs) s += c;
  return static_cast<double>(s);
}

double table_first_moment(const CoefficientTable& table) {
  long double s = 0.0L;
  for (std::size_t n = 0; n < table.coeffs.size(); ++n)
    s += static_cast<long double>(n) * table.coeffs[n];
  return static_cast<double>(s);
}

}  // namespace schroeder_tails
