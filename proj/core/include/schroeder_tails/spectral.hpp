#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "schroeder_tails/poincare.hpp"
#include "schroeder_tails/schroeder.hpp"

namespace schroeder_tails {

/// Fourier coefficients theta_m of the 1-periodic Karlin-McGregor function
/// K*(z) = Phi(Pi(E^z)) p1^{-z}, truncated where |theta_m| falls under
/// 1e-14 |theta_0|.
struct KarlinMcGregorSpectrum {
  std::vector<std::complex<double>> theta;  // m = -max_mode .. max_mode
  int max_mode = 0;                         // M_f
  std::size_t grid_size = 0;                // number of K* samples used
  double decay_rate = 0.0;  // -slope/(2*pi) of ln|theta_m|; strip-width proxy
  double noise_floor = 0.0;  // median |theta| over the upper half-band

  std::complex<double> coeff(int m) const { return theta[std::size_t(m + max_mode)]; }
  double theta0() const { return coeff(0).real(); }
};

/// K*(z), valid for any real z (1-periodic). The argument is reduced to
/// [0,1) and then shifted by an integer s chosen so Pi(E^{z+s}) lands inside
/// the Schroeder series' direct-summation radius.
double kstar_eval(const SchroederSeries& phi, const PoincareEvaluator& pi, double z);

/// Test hook: same value computed with `extra_shift` additional reduction
/// steps (functional-equation consistency).
double kstar_eval_shifted(const SchroederSeries& phi, const PoincareEvaluator& pi, double z,
                          int extra_shift);

/// K* sampled at z = g/G, g = 0..G-1.
std::vector<double> kstar_samples(const SchroederSeries& phi, const PoincareEvaluator& pi,
                                  std::size_t grid_size, int threads = 0);

/// DFT of uniform K* samples over [0,1), normalized by 1/G and re-indexed to
/// signed m. G must be a power of two. Throws AliasingSuspected when the
/// Nyquist band carries more than 1e-10 |theta_0|.
KarlinMcGregorSpectrum fourier_coeffs(std::span<const double> samples);

/// The spectrum together with the cached Gamma weights of
/// K0(z) = sum theta_m e^{2 pi i m z} / Gamma(-(2 pi i m + ln p1)/ln E).
///
/// 1/|Gamma| grows like e^{pi^2 m / ln E}, so the sum converges only while
/// the weighted terms decay; modes where the measured |theta_m / Gamma_m|
/// stops decreasing are sample noise in disguise and are excluded from
/// evaluation (modes_used() <= spectrum().max_mode).
class PeriodicMultiplier {
 public:
  /// `trusted_modes` >= 0 marks a spectrum whose modes were already
  /// noise-validated by the builder (the local-leakage gate is skipped);
  /// -1 applies the full gating to a raw spectrum.
  PeriodicMultiplier(KarlinMcGregorSpectrum spectrum, const OffspringDistribution& d,
                     int trusted_modes = -1);

  const KarlinMcGregorSpectrum& spectrum() const { return spectrum_; }
  double log_mean() const { return log_mean_; }
  double log_p1() const { return log_p1_; }
  int modes_used() const { return modes_used_; }
  std::complex<double> gamma_weight(int m) const {
    return gamma_[std::size_t(m + spectrum_.max_mode)];
  }

 private:
  KarlinMcGregorSpectrum spectrum_;
  double log_mean_;
  double log_p1_;
  int modes_used_;
  std::vector<std::complex<double>> gamma_;
};

/// Convenience pipeline: sample K*, transform, attach Gamma weights.
PeriodicMultiplier build_periodic_multiplier(const SchroederSeries& phi,
                                             const PoincareEvaluator& pi,
                                             std::size_t grid_size = 1024, int threads = 0);

/// The full complex sum (diagnostic; imaginary part is the symmetry residue).
std::complex<double> k0_eval_full(const PeriodicMultiplier& pm, double z);

/// K0(z): real part of the sum; throws ImagResidueTooLarge if the imaginary
/// residue exceeds 1e-10.
double k0_eval(const PeriodicMultiplier& pm, double z);

/// V(x) = K0(-ln x / ln E), x > 0. Multiplicatively periodic with period E.
double v_eval(const PeriodicMultiplier& pm, double x);

namespace spectral_constants {
inline constexpr double kThetaTruncation = 1e-14;   // relative to |theta_0|
inline constexpr double kAliasingGuard = 1e-10;     // relative to |theta_0|
inline constexpr double kImagResidueTolerance = 1e-10;
}  // namespace spectral_constants

}  // namespace schroeder_tails
