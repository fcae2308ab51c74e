// Acceptance suite: runs every pipeline-level criterion at its pinned
// tolerance and prints one pass/fail line per criterion. Returns nonzero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "schroeder_tails/density.hpp"
#include "schroeder_tails/errors.hpp"
#include "schroeder_tails/io.hpp"
#include "schroeder_tails/simulate.hpp"

namespace st = schroeder_tails;
using cdouble = std::complex<double>;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

struct Example {
  std::string name;
  st::OffspringDistribution d;
  st::SchroederSeries phi;
  st::PoincareEvaluator pi;
  st::PeriodicMultiplier pm;
  int deep_t;  // deepest iteration depth within the default coefficient cap
  std::optional<st::CoefficientTable> table12;
  std::optional<st::CoefficientTable> table_deep;

  Example(std::string label, const std::vector<double>& probs, int deepest)
      : name(std::move(label)),
        d(st::OffspringDistribution::validate(probs)),
        phi(st::schroeder_series(d)),
        pi(st::poincare_coeffs(d)),
        pm(st::build_periodic_multiplier(phi, pi)),
        deep_t(deepest) {}

  const st::CoefficientTable& at_t12() {
    if (!table12) table12 = st::iterate_pgf(d, 12);
    return *table12;
  }
  const st::CoefficientTable& at_deep() {
    if (deep_t == 12) return at_t12();
    if (!table_deep) table_deep = st::iterate_pgf(d, deep_t);
    return *table_deep;
  }

  double max_v() const {
    double vmax = 0.0;
    for (int i = 0; i < 512; ++i)
      vmax = std::max(vmax, st::k0_eval(pm, double(i) / 512.0));
    return vmax;
  }
};

void criterion_1(std::vector<Example>& examples) {
  bool pass = true;
  std::string detail = "functional-equation residuals <= 1e-10:";
  for (const auto& ex : examples) {
    Stopwatch timer;
    const st::SchroederSeries phi = st::schroeder_series(ex.d);
    const st::PoincareEvaluator pi = st::poincare_coeffs(ex.d);
    const double elapsed = timer.seconds();
    pass = pass && phi.residual() <= 1e-10 && pi.residual() <= 1e-10 && elapsed < 1.0;
    detail += fmt(" %s phi %.1e pi %.1e (%.2f s)", ex.name.c_str(), phi.residual(),
                  pi.residual(), elapsed);
  }
  report(1, pass, detail);
}

void criterion_2(std::vector<Example>& examples) {
  bool pass = true;
  std::string detail = "phi recursion vs limit oracle (t=40, n<=32) rel 1e-8:";
  for (const auto& ex : examples) {
    const auto s = st::schroeder_coeffs(ex.d, 32);
    const auto lim = st::phi_via_limit(ex.d, 40, 32);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 32; ++n)
      worst = std::max(worst, std::abs(lim[n] / s.phi()[n] - 1.0));
    pass = pass && worst <= 1e-8;
    detail += fmt(" %s %.2e", ex.name.c_str(), worst);
  }
  report(2, pass, detail);
}

void criterion_3(std::vector<Example>& examples) {
  bool pass = true;
  std::string detail = "pi_eval vs limit oracle (t=40, 50 pts) within 1e-7:";
  for (const auto& ex : examples) {
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
      const double v = 20.0 * double(i) / 24.0;
      worst = std::max(worst, std::abs(st::pi_eval(ex.pi, cdouble(v, 0.0)) -
                                       st::pi_via_limit(ex.d, cdouble(v, 0.0), 40)));
      worst = std::max(worst, std::abs(st::pi_eval(ex.pi, cdouble(0.0, v)) -
                                       st::pi_via_limit(ex.d, cdouble(0.0, v), 40)));
    }
    pass = pass && worst <= 1e-7;
    detail += fmt(" %s %.2e", ex.name.c_str(), worst);
  }
  report(3, pass, detail);
}

void criterion_4(std::vector<Example>& examples) {
  bool pass = true;
  std::string detail = "spectrum symmetry/decay/aliasing/reconstruction:";
  for (const auto& ex : examples) {
    bool aliasing_silent = true;
    std::optional<st::KarlinMcGregorSpectrum> spec;
    try {
      spec = st::fourier_coeffs(st::kstar_samples(ex.phi, ex.pi, 1024));
    } catch (const st::Error&) {
      aliasing_silent = false;
    }
    if (!spec) {
      pass = false;
      detail += fmt(" %s aliasing-guard-tripped", ex.name.c_str());
      continue;
    }
    double hermitian = 0.0;
    for (int m = 1; m <= spec->max_mode; ++m)
      hermitian = std::max(hermitian, std::abs(spec->coeff(-m) - std::conj(spec->coeff(m))));
    const bool decay = spec->max_mode >= 1 && spec->decay_rate > 0.0;
    double reconstruction = 0.0;
    for (int j = 0; j < 64; ++j) {
      const double z = (double(j) + 0.5) / 64.0;
      cdouble acc = 0.0;
      for (int m = -spec->max_mode; m <= spec->max_mode; ++m)
        acc += spec->coeff(m) * std::polar(1.0, 2.0 * std::numbers::pi * double(m) * z);
      reconstruction =
          std::max(reconstruction, std::abs(acc.real() - st::kstar_eval(ex.phi, ex.pi, z)));
    }
    pass = pass && aliasing_silent && decay && hermitian <= 1e-12 && reconstruction <= 1e-11;
    detail += fmt(" %s herm %.1e rec %.1e decay %.2f", ex.name.c_str(), hermitian,
                  reconstruction, spec->decay_rate);
  }
  report(4, pass, detail);
}

void criterion_5(std::vector<Example>& examples) {
  bool pass = true;
  std::string detail = "K0 real/periodic/positive, V multiplicative:";
  for (const auto& ex : examples) {
    double imag_residue = 0.0, period_defect = 0.0, v_defect = 0.0, k0_min = 1e300;
    for (int i = 0; i < 512; ++i) {
      const double z = double(i) / 512.0;
      const cdouble full = st::k0_eval_full(ex.pm, z);
      imag_residue = std::max(imag_residue, std::abs(full.imag()));
      period_defect =
          std::max(period_defect, std::abs(st::k0_eval(ex.pm, z + 1.0) - full.real()));
      k0_min = std::min(k0_min, full.real());
    }
    for (int i = 1; i <= 30; ++i) {
      const double x = 0.003 * double(i) * double(i);
      v_defect = std::max(
          v_defect, std::abs(st::v_eval(ex.pm, x * ex.d.mean()) - st::v_eval(ex.pm, x)));
    }
    pass = pass && imag_residue <= 1e-10 && period_defect <= 1e-12 && k0_min > 0.0 &&
           v_defect <= 1e-12;
    detail += fmt(" %s imag %.1e per %.1e min %.3f vper %.1e", ex.name.c_str(), imag_residue,
                  period_defect, k0_min, v_defect);
  }
  report(5, pass, detail);
}

void criterion_6(std::vector<Example>& examples) {
  Stopwatch timer;
  bool pass = true;
  std::string detail = "t=12 normalization (mass 1e-3, mean 5e-3):";
  for (auto& ex : examples) {
    const auto& table = ex.at_t12();
    const double mass = st::table_sum(table);
    const double mean = st::table_first_moment(table) * std::pow(ex.d.mean(), -12.0);
    pass = pass && std::abs(mass - 1.0) <= 1e-3 && std::abs(mean - 1.0) <= 5e-3;
    detail += fmt(" %s mass-1 %.1e mean-1 %.1e", ex.name.c_str(), mass - 1.0, mean - 1.0);
  }
  const double elapsed = timer.seconds();
  pass = pass && elapsed < 30.0;
  detail += fmt(" (%.1f s)", elapsed);
  report(6, pass, detail);
}

void criterion_7(std::vector<Example>& examples) {
  bool pass = true;
  std::string detail = "iteration vs fourier within 2e-3 on [0.05, 1]:";
  for (auto& ex : examples) {
    const auto& table = ex.at_t12();
    const st::FourierDensity fourier(ex.pi);
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double x = 0.05 + 0.95 * double(i) / 20.0;
      worst = std::max(worst, std::abs(st::iteration_density_at(table, ex.d, x) - fourier(x)));
    }
    pass = pass && worst <= 2e-3;
    detail += fmt(" %s %.2e", ex.name.c_str(), worst);
  }
  report(7, pass, detail);
}

void criterion_8(std::vector<Example>& examples) {
  bool pass = true;
  std::string detail = "V is the periodic multiplier (decade trend):";
  for (auto& ex : examples) {
    const auto& table = ex.at_deep();
    const double e_mean = ex.d.mean();
    const double alpha = ex.d.tail_exponent();
    const double scale = std::pow(e_mean, double(table.generations));

    auto decade_max = [&](double x0) {
      const auto lo = std::size_t(std::ceil(x0 / e_mean * scale));
      const auto hi = std::size_t(std::floor(x0 * scale));
      double worst = 0.0;
      for (std::size_t n = lo; n <= hi; ++n) {
        const double x = double(n) / scale;
        const double r =
            scale * table.coeffs[n] * std::pow(x, -alpha) - st::v_eval(ex.pm, x);
        worst = std::max(worst, std::abs(r));
      }
      return worst;
    };

    const double m1 = decade_max(0.5);
    const double m2 = decade_max(0.5 / e_mean);
    const double m3 = decade_max(0.5 / (e_mean * e_mean));
    const double v_cap = 0.05 * ex.max_v();
    const bool ok = m1 > m2 && m2 > m3 && m3 < v_cap;
    pass = pass && ok;
    detail += fmt(" %s(t=%d) %.3e > %.3e > %.3e (cap %.3e)", ex.name.c_str(),
                  table.generations, m1, m2, m3, v_cap);
  }
  report(8, pass, detail);
}

void criterion_9(std::vector<Example>& examples) {
  Stopwatch timer;
  bool pass = true;
  std::string detail = "Monte Carlo KS vs iteration CDF < 0.01:";
  for (auto& ex : examples) {
    const auto run = st::run_simulation(ex.d, 20, 100000, 42);
    double w_max = 0.0;
    for (double w : run.w_samples) w_max = std::max(w_max, w);
    const auto grid =
        st::density_grid_from_table(ex.at_t12(), ex.d, {0.0, w_max * 1.05 + 1.0});
    const double dist = st::ks_distance(run, grid);
    pass = pass && dist < 0.01;
    detail += fmt(" %s %.4f", ex.name.c_str(), dist);
  }
  const double elapsed = timer.seconds();
  pass = pass && elapsed < 60.0;
  detail += fmt(" (%.1f s)", elapsed);
  report(9, pass, detail);
}

void criterion_10(std::vector<Example>& examples) {
  bool pass = true;
  std::string detail = "phi_n asymptotic deviation decreasing over n=1e3,1e4,1e5:";
  for (const auto& ex : examples) {
    const auto s = st::schroeder_coeffs(ex.d, 100000);
    const double alpha = ex.d.tail_exponent();
    double previous = 1e300;
    bool decreasing = true;
    std::string seq;
    for (std::size_t n : {std::size_t(1000), std::size_t(10000), std::size_t(100000)}) {
      const double scaled = s.phi()[n] * std::pow(double(n), -alpha);
      const double k0 = st::k0_eval(ex.pm, -std::log(double(n)) / ex.d.log_mean());
      const double dev = std::abs(scaled / k0 - 1.0);
      decreasing = decreasing && dev < previous;
      previous = dev;
      seq += fmt(" %.2e", dev);
    }
    pass = pass && decreasing;
    detail += fmt(" %s [%s ]", ex.name.c_str(), seq.c_str());
  }
  report(10, pass, detail);
}

void criterion_11(std::vector<Example>& examples) {
  bool pass = true;
  std::string detail = "compare emits the exact-vs-asymptotic tables:";
  for (const auto& ex : examples) {
    st::CompareOptions opts;
    opts.points = 200;
    const auto table = st::compare(ex.d, 12, {1e-3, 2.0}, opts);
    bool finite = table.rows.size() == 200;
    double ratio_median = 0.0;
    std::vector<double> ratios;
    for (const auto& row : table.rows) {
      finite = finite && std::isfinite(row.p_iteration) && std::isfinite(row.p_fourier) &&
               std::isfinite(row.p_asymptotic) && row.p_asymptotic > 0.0;
      if (row.x < 0.05) ratios.push_back(row.ratio);
    }
    if (!ratios.empty()) {
      std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
      ratio_median = ratios[ratios.size() / 2];
    }
    const std::string path = "acceptance_fig1_" + ex.name + ".csv";
    std::ofstream out(path);
    st::write_compare_csv(out, table);
    const bool wrote = out.good();
    pass = pass && finite && wrote && std::abs(ratio_median - 1.0) < 0.25;
    detail += fmt(" %s rows %zu small-x ratio median %.3f -> %s", ex.name.c_str(),
                  table.rows.size(), ratio_median, path.c_str());
  }
  report(11, pass, detail);
}

}  // namespace

int main() {
  try {
    std::vector<Example> examples;
    examples.reserve(2);
    examples.emplace_back("ex1", std::vector<double>{0.0, 0.1, 0.5, 0.4}, 14);
    examples.emplace_back("ex2", std::vector<double>{0.0, 0.1, 0.1, 0.5, 0.3}, 12);

    criterion_1(examples);
    criterion_2(examples);
    criterion_3(examples);
    criterion_4(examples);
    criterion_5(examples);
    criterion_6(examples);
    criterion_7(examples);
    criterion_8(examples);
    criterion_9(examples);
    criterion_10(examples);
    criterion_11(examples);
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 1;
  }

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
