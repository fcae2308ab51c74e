#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace schroeder_tails {

/// Validated offspring law p0..pN (p0 = 0, 0 < p1 < 1, sum 1, supercritical,
/// aperiodic support) with the derived mean E = P'(1) and left-tail exponent
/// alpha = -ln(E p1)/ln E.
class OffspringDistribution {
 public:
  /// Validates and normalizes a probability vector. Rejections:
  /// NonZeroP0, P1OutOfRange, NotNormalized, PeriodicSupport, Subcritical.
  static OffspringDistribution validate(std::span<const double> probs);

  std::span<const double> probs() const { return probs_; }
  std::size_t max_family_size() const { return probs_.size() - 1; }  // N
  double p(std::size_t j) const { return j < probs_.size() ? probs_[j] : 0.0; }
  double p1() const { return probs_[1]; }
  double mean() const { return mean_; }                    // E
  double tail_exponent() const { return tail_exponent_; }  // alpha
  double log_mean() const { return log_mean_; }            // ln E
  double log_p1() const { return log_p1_; }                // ln p1 (< 0)

  /// Taylor coefficients of P about 1: a_k = P^(k)(1)/k!, k = 0..N.
  /// a_0 = 1, a_1 = E.
  std::span<const double> taylor_about_one() const { return about_one_; }

 private:
  OffspringDistribution() = default;
  std::vector<double> probs_;
  std::vector<double> about_one_;
  double mean_ = 0.0;
  double tail_exponent_ = 0.0;
  double log_mean_ = 0.0;
  double log_p1_ = 0.0;
};

double pgf_eval(const OffspringDistribution& d, double x);
std::complex<double> pgf_eval(const OffspringDistribution& d, std::complex<double> z);
double pgf_derivative(const OffspringDistribution& d, double x);

/// Coefficients p_{t,0}..p_{t,N^t} of the t-fold composition of the PGF:
/// the law of the generation-t population.
struct CoefficientTable {
  int generations = 0;
  std::vector<double> coeffs;
  std::size_t clamped = 0;  // tiny FFT negatives snapped to zero
};

enum class IterationMethod { automatic, direct, fft };

struct IterateOptions {
  std::uint64_t coefficient_cap = std::uint64_t(1) << 24;
  IterationMethod method = IterationMethod::automatic;
  std::size_t exact_prefix = 128;
};

/// Number of the highest coefficient, N^t, or CapExceeded if it would
/// exceed the cap.
std::uint64_t iterate_degree(const OffspringDistribution& d, int t, std::uint64_t cap);

CoefficientTable iterate_pgf(const OffspringDistribution& d, int t,
                             const IterateOptions& options = {});

/// Compensated sum of all coefficients (should be 1).
double table_sum(const CoefficientTable& table);
/// Compensated first moment sum n * p_{t,n} (should be E^t).
double table_first_moment(const CoefficientTable& table);

}  // namespace schroeder_tails
