// schroeder-tails: left-tail asymptotics of the Galton-Watson martingale
// limit density in the Schroeder case, with exact-density oracles.
//
// Subcommands: validate, phi, pi, theta, k0, v, density, compare, simulate.
// CSV goes to stdout, or to --output with a JSON metadata sidecar
// (<output>.meta.json) recording the effective config, achieved tolerances
// and timings.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <complex>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "schroeder_tails/density.hpp"
#include "schroeder_tails/errors.hpp"
#include "schroeder_tails/io.hpp"
#include "schroeder_tails/run_config.hpp"
#include "schroeder_tails/simulate.hpp"

namespace st = schroeder_tails;
using nlohmann::json;

namespace {

json config_to_json(const st::RunConfig& c) {
  return json{{"probs", c.probs},
              {"m_phi", c.m_phi},
              {"m_pi", c.m_pi},
              {"t_iter", c.t_iter},
              {"t_limit", c.t_limit},
              {"grid", c.grid},
              {"samples", c.samples},
              {"xmin", c.xmin},
              {"xmax", c.xmax},
              {"points", c.points},
              {"x_list", c.x_list},
              {"grid_spec", c.grid_spec},
              {"method", c.method},
              {"mc_trees", c.mc_trees},
              {"mc_generations", c.mc_generations},
              {"seed", c.seed},
              {"coefficient_cap", c.coefficient_cap},
              {"population_cap", c.population_cap},
              {"threads", c.threads},
              {"summary", c.summary},
              {"emit_plot", c.emit_plot},
              {"with_fourier", c.with_fourier},
              {"output", c.output}};
}

st::OffspringDistribution distribution_from(const st::RunConfig& c) {
  if (c.probs.empty())
    st::fail(st::errc::invalid_argument, "no offspring law given; use --probs or a config file");
  return st::OffspringDistribution::validate(c.probs);
}

st::SchroederSeries build_phi(const st::RunConfig& c, const st::OffspringDistribution& d,
                              json& meta) {
  st::SchroederSeries s =
      c.m_phi == 0 ? st::schroeder_series(d) : st::schroeder_coeffs(d, c.m_phi);
  meta["tolerances"]["phi_order"] = s.order();
  meta["tolerances"]["phi_residual"] = s.residual();
  return s;
}

st::PoincareEvaluator build_pi(const st::RunConfig& c, const st::OffspringDistribution& d,
                               json& meta) {
  st::PoincareEvaluator ev = st::poincare_coeffs(d, c.m_pi);
  meta["tolerances"]["pi_order"] = ev.order();
  meta["tolerances"]["pi_trusted_radius"] = ev.trusted_radius();
  meta["tolerances"]["pi_residual"] = ev.residual();
  return ev;
}

void describe_spectrum(const st::KarlinMcGregorSpectrum& spec, json& meta) {
  meta["tolerances"]["theta_modes"] = spec.max_mode;
  meta["tolerances"]["theta0"] = spec.theta0();
  meta["tolerances"]["theta_decay_rate"] = spec.decay_rate;
  meta["tolerances"]["theta_noise_floor"] = spec.noise_floor;
  meta["tolerances"]["theta_truncation"] = st::spectral_constants::kThetaTruncation;
  meta["tolerances"]["aliasing_guard"] = st::spectral_constants::kAliasingGuard;
}

// ---- subcommand handlers: fill the CSV stream and the metadata object ----

void run_validate(const st::RunConfig& c, std::ostream& csv, json& meta) {
  const auto d = distribution_from(c);
  csv << "key,value\n";
  csv << "N," << d.max_family_size() << '\n';
  csv << "E," << st::csv_number(d.mean()) << '\n';
  csv << "alpha," << st::csv_number(d.tail_exponent()) << '\n';
  meta["tolerances"]["sum_tolerance"] = 1e-12;
}

void run_phi(const st::RunConfig& c, std::ostream& csv, json& meta) {
  const auto d = distribution_from(c);
  const auto s = build_phi(c, d, meta);
  csv << "n,phi_n\n";
  for (std::size_t n = 0; n <= s.order(); ++n)
    csv << n << ',' << st::csv_number(s.phi()[n]) << '\n';
}

void run_pi(const st::RunConfig& c, std::ostream& csv, json& meta) {
  const auto d = distribution_from(c);
  const auto ev = build_pi(c, d, meta);

  // grid spec: axis:lo:hi:count with axis in {real, imag}
  std::string axis;
  double lo = 0.0, hi = 0.0;
  std::size_t count = 0;
  {
    std::stringstream ss(c.grid_spec);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 4)
      st::fail(st::errc::invalid_argument,
               "grid spec must be axis:lo:hi:count, e.g. imag:0:20:50");
    axis = parts[0];
    if (axis != "real" && axis != "imag")
      st::fail(st::errc::invalid_argument, "grid axis must be 'real' or 'imag'");
    try {
      lo = std::stod(parts[1]);
      hi = std::stod(parts[2]);
      count = std::stoul(parts[3]);
    } catch (const std::exception&) {
      st::fail(st::errc::invalid_argument, "bad grid spec numbers in '" + c.grid_spec + "'");
    }
    if (count < 1 || !(hi >= lo))
      st::fail(st::errc::invalid_argument, "grid spec needs hi >= lo and count >= 1");
  }

  csv << "z_re,z_im,pi_re,pi_im\n";
  for (std::size_t i = 0; i < count; ++i) {
    const double v = count == 1 ? lo : lo + (hi - lo) * double(i) / double(count - 1);
    const std::complex<double> z = axis == "real" ? std::complex<double>(v, 0.0)
                                                  : std::complex<double>(0.0, v);
    const std::complex<double> value = st::pi_eval(ev, z);
    csv << st::csv_number(z.real()) << ',' << st::csv_number(z.imag()) << ','
        << st::csv_number(value.real()) << ',' << st::csv_number(value.imag()) << '\n';
  }
}

void run_theta(const st::RunConfig& c, std::ostream& csv, json& meta) {
  const auto d = distribution_from(c);
  const auto phi = build_phi(c, d, meta);
  const auto pi = build_pi(c, d, meta);
  const auto samples = st::kstar_samples(phi, pi, c.grid, c.threads);
  const auto spec = st::fourier_coeffs(samples);
  describe_spectrum(spec, meta);
  csv << "m,theta_re,theta_im\n";
  for (int m = -spec.max_mode; m <= spec.max_mode; ++m)
    csv << m << ',' << st::csv_number(spec.coeff(m).real()) << ','
        << st::csv_number(spec.coeff(m).imag()) << '\n';
}

void run_k0(const st::RunConfig& c, std::ostream& csv, json& meta) {
  const auto d = distribution_from(c);
  const auto phi = build_phi(c, d, meta);
  const auto pi = build_pi(c, d, meta);
  const auto pm = st::build_periodic_multiplier(phi, pi, c.grid, c.threads);
  describe_spectrum(pm.spectrum(), meta);
  meta["tolerances"]["k0_modes_used"] = pm.modes_used();
  if (c.samples < 2) st::fail(st::errc::invalid_argument, "k0 needs at least 2 samples");

  // rows span [0, 1] inclusive so the emitted endpoints witness periodicity
  double imag_residue = 0.0;
  csv << "z,k0\n";
  for (std::size_t i = 0; i < c.samples; ++i) {
    const double z = double(i) / double(c.samples - 1);
    const auto full = st::k0_eval_full(pm, z);
    imag_residue = std::max(imag_residue, std::abs(full.imag()));
    csv << st::csv_number(z) << ',' << st::csv_number(st::k0_eval(pm, z)) << '\n';
  }
  meta["tolerances"]["k0_imag_residue"] = imag_residue;
}

void run_v(const st::RunConfig& c, std::ostream& csv, json& meta) {
  if (c.x_list.empty())
    st::fail(st::errc::invalid_argument, "v needs --x with at least one point");
  const auto d = distribution_from(c);
  const auto phi = build_phi(c, d, meta);
  const auto pi = build_pi(c, d, meta);
  const auto pm = st::build_periodic_multiplier(phi, pi, c.grid, c.threads);
  describe_spectrum(pm.spectrum(), meta);
  meta["tolerances"]["k0_modes_used"] = pm.modes_used();
  csv << "x,v\n";
  for (double x : c.x_list)
    csv << st::csv_number(x) << ',' << st::csv_number(st::v_eval(pm, x)) << '\n';
}

std::vector<double> log_spaced(double xmin, double xmax, std::size_t points) {
  if (!(xmin > 0.0) || !(xmax > xmin) || points == 0)
    st::fail(st::errc::invalid_argument, "need 0 < xmin < xmax and points >= 1");
  std::vector<double> xs(points);
  if (points == 1) {
    xs[0] = xmin;
    return xs;
  }
  const double lo = std::log(xmin), hi = std::log(xmax);
  for (std::size_t i = 0; i < points; ++i)
    xs[i] = std::exp(lo + (hi - lo) * double(i) / double(points - 1));
  return xs;
}

void run_density(const st::RunConfig& c, std::ostream& csv, json& meta) {
  const auto d = distribution_from(c);
  const auto xs = log_spaced(c.xmin, c.xmax, c.points);
  st::DensityGrid grid;
  if (c.method == "iteration") {
    st::IterateOptions opts;
    opts.coefficient_cap = c.coefficient_cap;
    const auto table = st::iterate_pgf(d, c.t_iter, opts);
    grid.method = st::DensityMethod::iteration;
    grid.generations = c.t_iter;
    grid.mass = st::table_sum(table);
    grid.mean = st::table_first_moment(table) * std::pow(d.mean(), -double(c.t_iter));
    grid.clamped = table.clamped;
    grid.xs = xs;
    grid.ps.reserve(xs.size());
    for (double x : xs) grid.ps.push_back(st::iteration_density_at(table, d, x));
    meta["tolerances"]["mass"] = grid.mass;
    meta["tolerances"]["mean"] = grid.mean;
    meta["tolerances"]["clamped"] = grid.clamped;
  } else if (c.method == "fourier") {
    const auto pi = build_pi(c, d, meta);
    const st::FourierDensity fourier(pi);
    grid = fourier.grid(xs, c.threads);
    meta["tolerances"]["fourier_tail_cutoff"] = grid.tail_cutoff;
    meta["tolerances"]["quad_step"] = grid.quad_step;
    meta["tolerances"]["clamped"] = grid.clamped;
  } else {
    st::fail(st::errc::invalid_argument, "method must be 'iteration' or 'fourier'");
  }
  meta["method"] = c.method;
  st::write_density_csv(csv, grid);
}

void run_compare(const st::RunConfig& c, std::ostream& csv, json& meta) {
  const auto d = distribution_from(c);
  st::CompareOptions opts;
  opts.points = c.points;
  opts.with_fourier = c.with_fourier;
  opts.iterate.coefficient_cap = c.coefficient_cap;
  opts.spectral_grid = c.grid;
  opts.threads = c.threads;
  const auto table = st::compare(d, c.t_iter, {c.xmin, c.xmax}, opts);
  meta["tolerances"]["mass"] = table.mass;
  meta["tolerances"]["mean"] = table.mean;
  if (c.with_fourier)
    meta["tolerances"]["fourier_tail_cutoff"] = table.fourier_tail_cutoff;
  st::write_compare_csv(csv, table);
}

void run_simulate(const st::RunConfig& c, std::ostream& csv, json& meta) {
  const auto d = distribution_from(c);
  st::SimulateOptions opts;
  opts.population_cap = c.population_cap;
  opts.threads = c.threads;
  const auto run = st::run_simulation(d, c.mc_generations, c.mc_trees, c.seed, opts);
  const double n = double(run.w_samples.size());
  const double mean = std::accumulate(run.w_samples.begin(), run.w_samples.end(), 0.0) / n;
  double var = 0.0, w_min = run.w_samples[0], w_max = run.w_samples[0];
  for (double w : run.w_samples) {
    var += (w - mean) * (w - mean);
    w_min = std::min(w_min, w);
    w_max = std::max(w_max, w);
  }
  var /= std::max(1.0, n - 1.0);
  meta["tolerances"]["sample_mean"] = mean;
  meta["tolerances"]["sample_sd"] = std::sqrt(var);

  if (c.summary) {
    csv << "key,value\n";
    csv << "n," << run.trees << '\n';
    csv << "t," << run.generations << '\n';
    csv << "seed," << run.seed << '\n';
    csv << "mean," << st::csv_number(mean) << '\n';
    csv << "sd," << st::csv_number(std::sqrt(var)) << '\n';
    csv << "min," << st::csv_number(w_min) << '\n';
    csv << "max," << st::csv_number(w_max) << '\n';
  } else {
    csv << "i,w\n";
    for (std::size_t i = 0; i < run.w_samples.size(); ++i)
      csv << i << ',' << st::csv_number(run.w_samples[i]) << '\n';
  }
}

void write_plot_script(const std::string& csv_path, const std::string& subcommand) {
  const std::string path = csv_path + ".gnuplot";
  std::ofstream out(path);
  if (!out) st::fail(st::errc::io_error, "cannot write plot script '" + path + "'");
  out << "# log-log view of " << csv_path << "\n";
  out << "set datafile separator ','\n";
  out << "set logscale xy\n";
  out << "set key left top\n";
  if (subcommand == "compare") {
    out << "plot '" << csv_path << "' every ::1 using 1:2 with lines title 'iteration', \\\n"
        << "     '" << csv_path << "' every ::1 using 1:3 with lines title 'fourier', \\\n"
        << "     '" << csv_path << "' every ::1 using 1:4 with lines title 'asymptotic'\n";
  } else {
    out << "plot '" << csv_path << "' every ::1 using 1:2 with lines title 'p(x)'\n";
  }
}

int run_cli(int argc, char** argv) {
  st::RunConfig rc;

  // A config file supplies defaults; explicit flags override it.
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      rc = st::parse_config_file(argv[i + 1]);
      break;
    }
    if (arg.rfind("--config=", 0) == 0) {
      rc = st::parse_config_file(arg.substr(9));
      break;
    }
  }

  CLI::App app{"left-tail asymptotics of the Galton-Watson martingale-limit density"};
  app.require_subcommand(1);
  std::string config_path;  // consumed by the prescan above

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "flat key-value config file (TOML-compatible subset)");
    sub->add_option("--probs", rc.probs, "offspring probabilities p0,p1,...,pN")
        ->delimiter(',');
    sub->add_option("-o,--output", rc.output, "CSV output path (adds a .meta.json sidecar)");
    sub->add_option("--threads", rc.threads,
                    "worker threads (0 = all, capped by SCHROEDER_TAILS_THREADS)");
    sub->add_option("--coefficient-cap", rc.coefficient_cap, "PGF coefficient-count cap");
  };

  CLI::App* validate = app.add_subcommand("validate", "check an offspring law, print moments");
  add_common(validate);

  CLI::App* phi = app.add_subcommand("phi", "Schroeder function Taylor coefficients");
  add_common(phi);
  phi->add_option("--order", rc.m_phi, "truncation order (0 = adaptive)");

  CLI::App* pi_cmd = app.add_subcommand("pi", "Poincare function values on an axis grid");
  add_common(pi_cmd);
  pi_cmd->add_option("--order", rc.m_pi, "series order");
  pi_cmd->add_option("--grid", rc.grid_spec, "axis:lo:hi:count (axis = real|imag)");

  CLI::App* theta = app.add_subcommand("theta", "Fourier coefficients of K*");
  add_common(theta);
  theta->add_option("--grid", rc.grid, "K* sample grid size (power of two)");

  CLI::App* k0 = app.add_subcommand("k0", "periodic multiplier K0 on [0,1]");
  add_common(k0);
  k0->add_option("--grid", rc.grid, "K* sample grid size (power of two)");
  k0->add_option("--samples", rc.samples, "output rows spanning [0,1]");

  CLI::App* v = app.add_subcommand("v", "V(x) = K0(-ln x/ln E) at given points");
  add_common(v);
  v->add_option("--x", rc.x_list, "evaluation points")->delimiter(',');
  v->add_option("--grid", rc.grid, "K* sample grid size (power of two)");

  CLI::App* density = app.add_subcommand("density", "martingale-limit density p(x)");
  add_common(density);
  density->add_option("--method", rc.method, "iteration|fourier");
  density->add_option("--t", rc.t_iter, "iteration depth");
  density->add_option("--xmin", rc.xmin, "smallest x");
  density->add_option("--xmax", rc.xmax, "largest x");
  density->add_option("--points", rc.points, "log-spaced output points");
  density->add_flag("--emit-plot", rc.emit_plot, "write a gnuplot script next to the CSV");

  CLI::App* cmp = app.add_subcommand("compare", "exact vs asymptotic density table");
  add_common(cmp);
  cmp->add_option("--t", rc.t_iter, "iteration depth");
  cmp->add_option("--xmin", rc.xmin, "smallest x");
  cmp->add_option("--xmax", rc.xmax, "largest x");
  cmp->add_option("--points", rc.points, "log-spaced output points");
  cmp->add_option("--grid", rc.grid, "K* sample grid size");
  cmp->add_flag("--emit-plot", rc.emit_plot, "write a gnuplot script next to the CSV");
  cmp->add_flag(
      "--no-fourier", [&rc](std::int64_t) { rc.with_fourier = false; },
      "skip the Fourier cross-check column");

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo Galton-Watson sampler");
  add_common(sim);
  sim->add_option("--t", rc.mc_generations, "generations");
  sim->add_option("--n", rc.mc_trees, "independent trees");
  sim->add_option("--seed", rc.seed, "RNG seed");
  sim->add_option("--population-cap", rc.population_cap, "per-tree population cap");
  sim->add_flag("--summary", rc.summary, "emit summary statistics instead of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  using handler = void (*)(const st::RunConfig&, std::ostream&, json&);
  const std::pair<CLI::App*, handler> routes[] = {
      {validate, run_validate}, {phi, run_phi},     {pi_cmd, run_pi},
      {theta, run_theta},       {k0, run_k0},       {v, run_v},
      {density, run_density},   {cmp, run_compare}, {sim, run_simulate},
  };

  for (const auto& [sub, fn] : routes) {
    if (!sub->parsed()) continue;
    json meta;
    meta["tool"] = "schroeder-tails";
    meta["version"] = st::kVersion;
    meta["subcommand"] = sub->get_name();
    meta["config"] = config_to_json(rc);

    std::ostringstream csv;
    const auto start = std::chrono::steady_clock::now();
    fn(rc, csv, meta);
    const auto stop = std::chrono::steady_clock::now();
    meta["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();

    if (rc.output.empty()) {
      if (rc.emit_plot)
        st::fail(st::errc::invalid_argument, "--emit-plot needs --output");
      std::cout << csv.str();
    } else {
      std::ofstream out(rc.output);
      if (!out) st::fail(st::errc::io_error, "cannot write output file '" + rc.output + "'");
      out << csv.str();
      if (!out.good()) st::fail(st::errc::io_error, "short write to '" + rc.output + "'");
      std::ofstream meta_out(rc.output + ".meta.json");
      if (!meta_out)
        st::fail(st::errc::io_error, "cannot write sidecar '" + rc.output + ".meta.json'");
      meta_out << meta.dump(2) << '\n';
      if (rc.emit_plot) write_plot_script(rc.output, sub->get_name());
    }
    break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const st::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return st::exit_status(e.cls());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
