#include "schroeder_tails/density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "schroeder_tails/errors.hpp"
#include "schroeder_tails/parallel.hpp"

namespace schroeder_tails {

namespace {

constexpr double kNegativeTolerance = 1e-9;

double clamp_density_value(double p, std::size_t* clamped) {
  if (p >= 0.0) return p;
  if (p < -kNegativeTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density value " << p << " below -" << kNegativeTolerance;
    fail(errc::negative_density, msg.str());
  }
  if (clamped) ++*clamped;
  return 0.0;
}

}  // namespace

const char* density_method_name(DensityMethod m) {
  switch (m) {
    case DensityMethod::iteration: return "iteration";
    case DensityMethod::fourier: return "fourier";
    case DensityMethod::monte_carlo: return "monte-carlo";
    case DensityMethod::asymptotic: return "asymptotic";
  }
  return "unknown";
}

double iteration_density_at(const CoefficientTable& table, const OffspringDistribution& d,
                            double x) {
  if (x < 0.0) return 0.0;
  const double scale = std::pow(d.mean(), double(table.generations));
  const double idx = std::floor(x * scale);
  if (idx >= double(table.coeffs.size())) return 0.0;
  return scale * table.coeffs[std::size_t(idx)];
}

DensityGrid density_grid_from_table(const CoefficientTable& table,
                                    const OffspringDistribution& d, XRange range) {
  if (!(range.xmin <= range.xmax))
    fail(errc::invalid_argument, "x range is empty");
  const double scale = std::pow(d.mean(), double(table.generations));
  const double spacing = 1.0 / scale;

  auto n_lo = static_cast<std::size_t>(std::max(0.0, std::ceil(range.xmin * scale)));
  auto n_hi = static_cast<std::size_t>(
      std::min(double(table.coeffs.size() - 1), std::floor(range.xmax * scale)));
  if (n_lo > n_hi) fail(errc::invalid_argument, "x range contains no grid points");

  DensityGrid grid;
  grid.method = DensityMethod::iteration;
  grid.generations = table.generations;
  grid.clamped = table.clamped;
  grid.mass = table_sum(table);
  grid.mean = table_first_moment(table) / scale;
  grid.xs.reserve(n_hi - n_lo + 1);
  grid.ps.reserve(n_hi - n_lo + 1);
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    grid.xs.push_back(double(n) * spacing);
    grid.ps.push_back(scale * table.coeffs[n]);
  }
  return grid;
}

DensityGrid density_by_iteration(const OffspringDistribution& d, int t, XRange range,
                                 const IterateOptions& options) {
  const CoefficientTable table = iterate_pgf(d, t, options);
  return density_grid_from_table(table, d, range);
}

FourierDensity::FourierDensity(const PoincareEvaluator& pi, QuadratureSpec spec)
    : pi_(pi), spec_(spec) {
  const double h = spec_.max_step;
  const double mean = pi.distribution().mean();
  // Extend the Pi(iy) table until |Pi| has stayed under the tail threshold
  // for a full multiplicative period (the envelope is log-periodic, so a
  // dip alone must not stop the scan).
  double y_loud = 0.0;  // last y with |Pi(iy)| >= threshold
  std::size_t j = 0;
  for (;;) {
    const double y = double(j) * h;
    if (y > spec_.y_max) {
      double achieved = 0.0;
      for (std::size_t k = table_.size() - std::min<std::size_t>(table_.size(), 1024);
           k < table_.size(); ++k)
        achieved = std::max(achieved, std::abs(table_[k]));
      std::ostringstream msg;
      msg.precision(6);
      msg << "|Pi(iy)| did not stay below " << spec_.tail_threshold << " by y_max = "
          << spec_.y_max << "; achieved tail bound " << achieved;
      fail(errc::truncation_not_reached, msg.str());
    }
    const std::complex<double> value = pi_eval(pi_, std::complex<double>(0.0, y));
    table_.push_back(value);
    if (std::abs(value) >= spec_.tail_threshold) y_loud = y;
    if (y >= mean * (y_loud + 1.0)) break;
    ++j;
  }
  if (table_.size() % 2 == 0) {  // Simpson wants an even interval count
    table_.push_back(pi_eval(pi_, std::complex<double>(0.0, double(table_.size()) * h)));
  }
  y_end_ = double(table_.size() - 1) * h;
}

namespace {

// Composite Simpson of Re(values[j] * e^{i x j h}) * (1/pi) over [0, (J-1) h].
double simpson_density(std::span<const std::complex<double>> values, double h, double x) {
  const std::size_t count = values.size();
  const std::complex<double> rot = std::polar(1.0, x * h);
  std::complex<double> phase = 1.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    if (j % 4096 == 0) phase = std::polar(1.0, x * (double(j) * h));  // drift refresh
    const double f = (values[j] * phase).real();
    const double w = (j == 0 || j + 1 == count) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    acc += w * f;
    phase *= rot;
  }
  return acc * h / 3.0 / std::numbers::pi;
}

}  // namespace

double FourierDensity::eval_raw(double x) const {
  if (!(x > 0.0)) fail(errc::non_positive_x, "density_by_fourier needs x > 0");
  const double h_wanted =
      std::min(2.0 * std::numbers::pi / (spec_.points_per_oscillation * x), spec_.max_step);
  if (h_wanted >= spec_.max_step) return simpson_density(table_, spec_.max_step, x);
  // x large enough to need a finer oscillation step: dedicated pass.
  std::size_t count = static_cast<std::size_t>(std::ceil(y_end_ / h_wanted)) + 1;
  if (count % 2 == 0) ++count;
  const double h = y_end_ / double(count - 1);
  std::vector<std::complex<double>> values(count);
  for (std::size_t j = 0; j < count; ++j)
    values[j] = pi_eval(pi_, std::complex<double>(0.0, double(j) * h));
  return simpson_density(values, h, x);
}

double FourierDensity::operator()(double x) const {
  return clamp_density_value(eval_raw(x), nullptr);
}

DensityGrid FourierDensity::grid(std::span<const double> xs, int threads) const {
  DensityGrid out;
  out.method = DensityMethod::fourier;
  out.quad_step = spec_.max_step;
  out.tail_cutoff = y_end_;
  out.mass = std::numeric_limits<double>::quiet_NaN();
  out.mean = std::numeric_limits<double>::quiet_NaN();
  out.xs.assign(xs.begin(), xs.end());
  out.ps.assign(xs.size(), 0.0);
  std::atomic<std::size_t> clamped{0};
  parallel_for(xs.size(), threads, [&](std::size_t lo, std::size_t hi) {
    std::size_t local = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      out.ps[i] = clamp_density_value(eval_raw(out.xs[i]), &local);
    }
    clamped.fetch_add(local);
  });
  out.clamped = clamped.load();
  return out;
}

double density_by_fourier(const PoincareEvaluator& pi, double x, const QuadratureSpec& spec) {
  return FourierDensity(pi, spec)(x);
}

double asymptotic_density(const PeriodicMultiplier& pm, const OffspringDistribution& d,
                          double x) {
  if (!(x > 0.0)) fail(errc::non_positive_x, "asymptotic_density needs x > 0");
  return std::pow(x, d.tail_exponent()) * v_eval(pm, x);
}

CompareTable compare(const OffspringDistribution& d, int t, XRange range,
                     const CompareOptions& options) {
  if (!(range.xmin > 0.0) || !(range.xmax > range.xmin) || options.points == 0)
    fail(errc::invalid_argument, "compare needs 0 < xmin < xmax and points >= 1");
  const double resolution = 10.0 * std::pow(d.mean(), -double(t));
  if (range.xmin < resolution) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "xmin = " << range.xmin << " below the iteration-grid resolution floor 10 E^-t = "
        << resolution;
    fail(errc::invalid_argument, msg.str());
  }

  const CoefficientTable table = iterate_pgf(d, t, options.iterate);
  const SchroederSeries phi = schroeder_series(d);
  const PoincareEvaluator pi = poincare_coeffs(d);
  const PeriodicMultiplier pm =
      build_periodic_multiplier(phi, pi, options.spectral_grid, options.threads);

  CompareTable out;
  out.generations = t;
  out.with_fourier = options.with_fourier;
  out.mass = table_sum(table);
  out.mean = table_first_moment(table) * std::pow(d.mean(), -double(t));

  std::vector<double> xs(options.points);
  if (options.points == 1) {
    xs[0] = range.xmin;
  } else {
    const double log_lo = std::log(range.xmin);
    const double log_hi = std::log(range.xmax);
    for (std::size_t i = 0; i < options.points; ++i)
      xs[i] = std::exp(log_lo + (log_hi - log_lo) * double(i) / double(options.points - 1));
  }

  out.rows.resize(xs.size());
  if (options.with_fourier) {
    const FourierDensity fourier(pi, options.quadrature);
    out.fourier_tail_cutoff = fourier.tail_cutoff();
    parallel_for(xs.size(), options.threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        CompareRow& row = out.rows[i];
        row.x = xs[i];
        row.p_iteration = iteration_density_at(table, d, row.x);
        row.p_fourier = fourier(row.x);
        row.p_asymptotic = asymptotic_density(pm, d, row.x);
        row.ratio = row.p_iteration / row.p_asymptotic;
      }
    });
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CompareRow& row = out.rows[i];
      row.x = xs[i];
      row.p_iteration = iteration_density_at(table, d, row.x);
      row.p_fourier = std::numeric_limits<double>::quiet_NaN();
      row.p_asymptotic = asymptotic_density(pm, d, row.x);
      row.ratio = row.p_iteration / row.p_asymptotic;
    }
  }
  return out;
}

DensityGrid histogram_density(std::span<const double> w_samples, double bin_width) {
  if (w_samples.empty() || !(bin_width > 0.0))
    fail(errc::invalid_argument, "histogram needs samples and a positive bin width");
  const double w_max = *std::max_element(w_samples.begin(), w_samples.end());
  const auto bins = static_cast<std::size_t>(std::floor(w_max / bin_width)) + 1;
  std::vector<double> counts(bins, 0.0);
  for (double w : w_samples) {
    auto b = static_cast<std::size_t>(std::floor(w / bin_width));
    if (b >= bins) b = bins - 1;
    counts[b] += 1.0;
  }
  DensityGrid grid;
  grid.method = DensityMethod::monte_carlo;
  grid.sample_count = w_samples.size();
  grid.xs.resize(bins);
  grid.ps.resize(bins);
  const double scale = 1.0 / (double(w_samples.size()) * bin_width);
  for (std::size_t b = 0; b < bins; ++b) {
    grid.xs[b] = (double(b) + 0.5) * bin_width;
    grid.ps[b] = counts[b] * scale;
  }
  grid.mass = 1.0;
  grid.mean = std::numeric_limits<double>::quiet_NaN();
  return grid;
}

}  // namespace schroeder_tails
