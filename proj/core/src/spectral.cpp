#include "schroeder_tails/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "schroeder_tails/errors.hpp"
#include "schroeder_tails/gamma.hpp"
#include "schroeder_tails/parallel.hpp"

namespace schroeder_tails {

using namespace spectral_constants;

namespace {

constexpr int kMaxShift = 64;

// Long-double evaluation path for K* sampling. The series coefficients stay
// double; doing the arithmetic in long double pushes the per-sample jitter
// floor from ~1e-13 down to ~1e-17 relative.
using cld = std::complex<long double>;

cld poly_eval_cld(std::span<const double> coeffs, cld x) {
  cld acc = 0.0L;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + (long double)coeffs[k];
  return acc;
}

// Long-double sampler along the line Im z = -tau (tau = 0 gives the real
// line), with one fixed shift and one fixed reduction depth for the whole
// period. Per-z recomputation makes s(z) and the reduction count jump as z
// sweeps; each jump leaves a ~1e-15 step (the double-rounded series
// coefficients satisfy the functional equations only that well), and steps
// leak ~1/m into every Fourier mode. With frozen (s*, k*) the systematic
// error is smooth in z, and subtracting the measured wrap jump knocks the
// remaining periodization leakage down to second order.
//
// Sampling below the real axis (0 < tau < strip half-width) re-weights mode
// m by e^{2 pi m tau}, which is what makes exponentially small genuine
// coefficients measurable.
std::vector<cld> kstar_samples_smooth_ld(const SchroederSeries& phi,
                                         const PoincareEvaluator& pi, std::size_t grid_size,
                                         long double tau, int threads) {
  const OffspringDistribution& d = phi.distribution();
  const long double log_mean = logl((long double)d.mean());
  const long double log_p1 = logl((long double)d.p1());
  const double r0 = pi.trusted_radius();
  // Off the real axis the Schroeder series is summed directly, so the
  // argument must stay well inside its disk; the adaptive order targets
  // radius 0.3, giving full accuracy through 0.25.
  const long double w_cap =
      tau == 0.0L ? (long double)schroeder_constants::kDirectRadius : 0.25L;

  // smallest s with |Pi(E^{z+s-i tau})| under the cap for every z: probe a
  // coarse grid, then fall back to a larger shift if the fine pass trips.
  int shift = 0;
  for (;; ++shift) {
    if (shift > kMaxShift)
      fail(errc::no_convergence, "kstar shift search did not contract Pi below the radius");
    int steps = 0;
    while (std::pow(d.mean(), 1.0 + double(shift) - double(steps)) > r0) ++steps;
    bool ok = true;
    for (int probe = 0; probe <= 16 && ok; ++probe) {
      const cld z(probe / 16.0L, -tau);
      cld w = poly_eval_cld(pi.series().coeffs(),
                            std::exp(log_mean * (z + (long double)(shift - steps))));
      for (int s = 0; s < steps; ++s) w = poly_eval_cld(d.probs(), w);
      ok = std::isfinite(std::abs(w)) && std::abs(w) <= 0.9L * w_cap;
    }
    if (ok) break;
  }
  int steps = 0;
  while (std::pow(d.mean(), 1.0 + double(shift) - double(steps)) > r0) ++steps;

  auto sample_at = [&](long double re) {
    const cld z(re, -tau);
    cld w = poly_eval_cld(pi.series().coeffs(),
                          std::exp(log_mean * (z + (long double)(shift - steps))));
    for (int s = 0; s < steps; ++s) w = poly_eval_cld(d.probs(), w);
    if (!(std::abs(w) <= w_cap))
      fail(errc::no_convergence, "shifted K* sampling left the Schroeder series disk");
    const cld value =
        poly_eval_cld(phi.phi().coeffs(), w) * std::exp(-log_p1 * (z + (long double)shift));
    if (!std::isfinite(std::abs(value)))
      fail(errc::no_convergence, "shifted K* sampling produced a non-finite value");
    return value;
  };

  std::vector<cld> samples(grid_size);
  parallel_for(grid_size, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t g = lo; g < hi; ++g)
      samples[g] = sample_at((long double)g / (long double)grid_size);
  });

  const cld jump = sample_at(1.0L) - samples[0];
  for (std::size_t g = 0; g < grid_size; ++g) {
    const long double z = (long double)g / (long double)grid_size;
    samples[g] -= jump * (z - 0.5L);
  }
  return samples;
}

// e^{2 pi i m z} with the phase reduced mod 1 first, so z and z+1 give
// bitwise-identical factors for integer m.
std::complex<double> unit_phase(int m, double z) {
  const double mz = double(m) * z;
  const double frac = mz - std::floor(mz);
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

double kstar_reduced(const SchroederSeries& phi, const PoincareEvaluator& pi, double z,
                     int extra_shift) {
  const OffspringDistribution& d = phi.distribution();
  // Shift right until Pi(E^{z+s}) is inside the direct-summation radius, so
  // phi_eval sums its series without further reduction steps.
  int shift = 0;
  double w = pi_eval(pi, std::exp(d.log_mean() * z));
  while (w >= schroeder_constants::kDirectRadius) {
    ++shift;
    if (shift > kMaxShift)
      fail(errc::no_convergence, "kstar_eval shift search did not contract Pi below the radius");
    w = pi_eval(pi, std::exp(d.log_mean() * (z + shift)));
  }
  for (int s = 0; s < extra_shift; ++s) {
    ++shift;
    w = pi_eval(pi, std::exp(d.log_mean() * (z + shift)));
  }
  return phi_eval(phi, w) * std::exp(-d.log_p1() * (z + shift));
}

}  // namespace

double kstar_eval(const SchroederSeries& phi, const PoincareEvaluator& pi, double z) {
  return kstar_reduced(phi, pi, z - std::floor(z), 0);
}

double kstar_eval_shifted(const SchroederSeries& phi, const PoincareEvaluator& pi, double z,
                          int extra_shift) {
  return kstar_reduced(phi, pi, z - std::floor(z), extra_shift);
}

std::vector<double> kstar_samples(const SchroederSeries& phi, const PoincareEvaluator& pi,
                                  std::size_t grid_size, int threads) {
  std::vector<double> samples(grid_size);
  parallel_for(grid_size, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t g = lo; g < hi; ++g)
      samples[g] = kstar_eval(phi, pi, double(g) / double(grid_size));
  });
  return samples;
}

namespace {

// Shared DFT/truncation machinery. `rel_threshold` is the coefficient
// cutoff relative to |theta_0|; with `noise_multiplier` > 0 the cutoff is
// raised to that multiple of the measured upper-band noise floor.
KarlinMcGregorSpectrum fourier_coeffs_impl(std::vector<std::complex<long double>> buf,
                                           double rel_threshold, double noise_multiplier) {
  const std::size_t g = buf.size();
  if (g < 4 || (g & (g - 1)) != 0)
    fail(errc::invalid_argument, "sample grid size must be a power of two (>= 4)");

  fftwl_plan plan = fftwl_plan_dft_1d(static_cast<int>(g),
                                      reinterpret_cast<fftwl_complex*>(buf.data()),
                                      reinterpret_cast<fftwl_complex*>(buf.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
  if (!plan) fail(errc::no_convergence, "fftw plan creation failed");
  fftwl_execute(plan);
  fftwl_destroy_plan(plan);

  const long double scale = 1.0L / static_cast<long double>(g);
  // signed index m in [-G/2, G/2), stored bin (m + G) mod G
  const int half = static_cast<int>(g / 2);
  auto coeff = [&](int m) {
    const std::size_t bin = std::size_t((m + int(g)) % int(g));
    return std::complex<double>(static_cast<double>(buf[bin].real() * scale),
                                static_cast<double>(buf[bin].imag() * scale));
  };

  const double theta0 = std::abs(coeff(0));

  // Aliasing guard: the top band must have decayed to numerical dust.
  const int band = std::max(1, int(g) / 32);
  double nyquist = 0.0;
  for (int m = half - band; m <= half; ++m) {
    nyquist = std::max(nyquist, std::abs(coeff(m)));
    nyquist = std::max(nyquist, std::abs(coeff(-m)));
  }
  if (nyquist > kAliasingGuard * theta0) {
    std::ostringstream msg;
    msg << "Nyquist-band energy " << nyquist << " exceeds " << kAliasingGuard
        << " * |theta_0| = " << kAliasingGuard * theta0 << "; grid too coarse";
    fail(errc::aliasing_suspected, msg.str());
  }

  // Numerical noise floor: the upper half-band carries no genuine content
  // (the aliasing guard above enforces that), so its median magnitude is
  // the per-bin noise level of the sample pipeline.
  double noise_floor = 0.0;
  {
    std::vector<double> upper;
    for (int m = half / 2; m <= half; ++m) {
      upper.push_back(std::abs(coeff(m)));
      upper.push_back(std::abs(coeff(-m)));
    }
    std::nth_element(upper.begin(), upper.begin() + upper.size() / 2, upper.end());
    noise_floor = upper[upper.size() / 2];
  }

  double cutoff = rel_threshold * theta0;
  if (noise_multiplier > 0.0) cutoff = std::max(cutoff, noise_multiplier * noise_floor);

  int max_mode = 0;
  for (int m = 1; m < half; ++m)
    if (std::abs(coeff(m)) >= cutoff || std::abs(coeff(-m)) >= cutoff) max_mode = m;

  KarlinMcGregorSpectrum spec;
  spec.grid_size = g;
  spec.max_mode = max_mode;
  spec.noise_floor = noise_floor;
  spec.theta.resize(std::size_t(2 * max_mode + 1));
  for (int m = -max_mode; m <= max_mode; ++m)
    spec.theta[std::size_t(m + max_mode)] = coeff(m);

  // Least-squares slope of ln|theta_m| vs m, decay proxy for the strip
  // width. Fit only the steeply decreasing prefix that sits clearly above
  // the noise floor; the flat noise plateau would otherwise drag the fit.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  double prev = theta0;
  for (int m = 1; m <= max_mode; ++m) {
    const double mag = std::abs(spec.coeff(m));
    if (mag < 30.0 * spec.noise_floor || mag > 0.5 * prev) break;
    const double x = double(m), y = std::log(mag);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++count;
    prev = mag;
  }
  if (count >= 2) {
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    spec.decay_rate = -slope / (2.0 * std::numbers::pi);
  } else if (count == 1) {
    spec.decay_rate = -std::log(std::abs(spec.coeff(1)) / theta0) / (2.0 * std::numbers::pi);
  } else {
    spec.decay_rate = std::numeric_limits<double>::quiet_NaN();
  }
  return spec;
}

}  // namespace

KarlinMcGregorSpectrum fourier_coeffs(std::span<const double> samples) {
  std::vector<std::complex<long double>> buf(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) buf[i] = samples[i];
  return fourier_coeffs_impl(std::move(buf), kThetaTruncation, 0.0);
}

PeriodicMultiplier::PeriodicMultiplier(KarlinMcGregorSpectrum spectrum,
                                       const OffspringDistribution& d, int trusted_modes)
    : spectrum_(std::move(spectrum)), log_mean_(d.log_mean()), log_p1_(d.log_p1()) {
  const int mf = spectrum_.max_mode;
  gamma_.resize(std::size_t(2 * mf + 1));
  for (int m = -mf; m <= mf; ++m) {
    const std::complex<double> arg(-log_p1_ / log_mean_,
                                   -2.0 * std::numbers::pi * m / log_mean_);
    gamma_[std::size_t(m + mf)] = complex_gamma(arg);
  }
  // Convergence guard: keep the prefix of modes whose weighted terms still
  // decay, and (for raw spectra) whose magnitude clears the local leakage
  // envelope. Sampling error leaks into mode m roughly like
  // noise_floor * (band/m)^2; a measured theta at or under that envelope,
  // or a weighted term that grows again, is noise.
  modes_used_ = 0;
  const int cap = trusted_modes >= 0 ? std::min(trusted_modes, mf) : mf;
  const double band_center = 0.375 * double(spectrum_.grid_size);
  double prev = std::abs(spectrum_.coeff(0)) / std::abs(gamma_weight(0));
  for (int m = 1; m <= cap; ++m) {
    const double term = std::abs(spectrum_.coeff(m)) / std::abs(gamma_weight(m));
    if (term >= prev) break;
    if (trusted_modes < 0) {
      const double envelope = band_center / double(m);
      if (std::abs(spectrum_.coeff(m)) < 3.0 * spectrum_.noise_floor * envelope * envelope)
        break;
    }
    modes_used_ = m;
    prev = term;
  }

  // Trim stored noise modes beyond the break, keeping two as witnesses.
  const int keep = std::min(mf, modes_used_ + 2);
  if (keep < mf) {
    std::vector<std::complex<double>> theta(std::size_t(2 * keep + 1));
    std::vector<std::complex<double>> gamma(std::size_t(2 * keep + 1));
    for (int m = -keep; m <= keep; ++m) {
      theta[std::size_t(m + keep)] = spectrum_.coeff(m);
      gamma[std::size_t(m + keep)] = gamma_weight(m);
    }
    spectrum_.theta = std::move(theta);
    spectrum_.max_mode = keep;
    gamma_ = std::move(gamma);
  }
}

PeriodicMultiplier build_periodic_multiplier(const SchroederSeries& phi,
                                             const PoincareEvaluator& pi,
                                             std::size_t grid_size, int threads) {
  // Long-double jump-free sampling: the cutoff can sit at the (much lower)
  // measured noise floor instead of the double-precision 1e-14.
  const KarlinMcGregorSpectrum real_spec = fourier_coeffs_impl(
      kstar_samples_smooth_ld(phi, pi, grid_size, 0.0L, threads), 1e-18, 30.0);
  const std::complex<double> theta0 = real_spec.coeff(0);

  // Contour-shift refinement: K* is analytic on |Im z| < strip half-width,
  // so sampling along Im z = -tau re-weights mode m by e^{2 pi m tau} and
  // lifts exponentially small genuine coefficients far above the sampling
  // noise. The back-mapped modes must agree with the real-line values on
  // the overlap, and the empirical decay rate bounds tau; any trouble falls
  // back to the real-line spectrum.
  const double tau0 = std::min(0.85 * real_spec.decay_rate, 1.5);
  if (!(tau0 > 0.05)) return PeriodicMultiplier(real_spec, phi.distribution());

  for (const double tau : {tau0, 0.5 * tau0}) {
    try {
      const KarlinMcGregorSpectrum lifted = fourier_coeffs_impl(
          kstar_samples_smooth_ld(phi, pi, grid_size, (long double)tau, threads), 1e-18,
          30.0);
      if (std::abs(lifted.coeff(0) - theta0) > 1e-6 * std::abs(theta0))
        fail(errc::no_convergence, "contour shift moved theta_0");

      // trusted modes: the uninterrupted prefix above the lifted cutoff
      const double cutoff =
          std::max(1e-18 * std::abs(lifted.coeff(0)), 30.0 * lifted.noise_floor);
      int trusted = 0;
      for (int m = 1; m <= lifted.max_mode; ++m) {
        if (std::abs(lifted.coeff(m)) < cutoff) break;
        trusted = m;
      }
      if (trusted < 1) continue;

      KarlinMcGregorSpectrum merged;
      merged.grid_size = grid_size;
      merged.max_mode = trusted;
      merged.noise_floor = real_spec.noise_floor;
      merged.theta.assign(std::size_t(2 * trusted + 1), 0.0);
      merged.theta[std::size_t(trusted)] = theta0;
      for (int m = 1; m <= trusted; ++m) {
        const std::complex<double> theta_m =
            lifted.coeff(m) * std::exp(-2.0 * std::numbers::pi * double(m) * tau);
        merged.theta[std::size_t(trusted + m)] = theta_m;
        merged.theta[std::size_t(trusted - m)] = std::conj(theta_m);
      }

      // overlap validation against the solidly measured real-line modes
      for (int m = 1; m <= std::min(trusted, real_spec.max_mode); ++m) {
        const double real_mag = std::abs(real_spec.coeff(m));
        if (real_mag < 1e5 * real_spec.noise_floor) break;
        if (std::abs(merged.coeff(m) - real_spec.coeff(m)) > 1e-3 * real_mag)
          fail(errc::no_convergence, "contour shift disagrees with the real-line modes");
      }

      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (int m = 1; m <= trusted; ++m) {
        const double x = double(m), y = std::log(std::abs(merged.coeff(m)));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
      }
      merged.decay_rate =
          trusted >= 2 ? -(trusted * sxy - sx * sy) / (trusted * sxx - sx * sx) /
                             (2.0 * std::numbers::pi)
                       : real_spec.decay_rate;
      return PeriodicMultiplier(merged, phi.distribution(), trusted);
    } catch (const Error&) {
      continue;  // tighter shift, then the real-line spectrum
    }
  }
  return PeriodicMultiplier(real_spec, phi.distribution());
}

std::complex<double> k0_eval_full(const PeriodicMultiplier& pm, double z) {
  const int mf = pm.modes_used();
  std::complex<double> acc = 0.0;
  for (int m = -mf; m <= mf; ++m)
    acc += pm.spectrum().coeff(m) * unit_phase(m, z) / pm.gamma_weight(m);
  return acc;
}

double k0_eval(const PeriodicMultiplier& pm, double z) {
  const std::complex<double> value = k0_eval_full(pm, z);
  if (std::abs(value.imag()) > kImagResidueTolerance) {
    std::ostringstream msg;
    msg << "K0 imaginary residue " << value.imag() << " at z = " << z
        << " exceeds " << kImagResidueTolerance << "; spectrum inconsistent";
    fail(errc::imag_residue_too_large, msg.str());
  }
  return value.real();
}

double v_eval(const PeriodicMultiplier& pm, double x) {
  if (!(x > 0.0)) fail(errc::non_positive_x, "V(x) needs x > 0");
  return k0_eval(pm, -std::log(x) / pm.log_mean());
}

}  // namespace schroeder_tails
