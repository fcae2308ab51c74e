#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace schroeder_tails {

/// Every knob of a pipeline run. Round-trips losslessly through the flat
/// key-value config format (a TOML-compatible subset: `key = value`, arrays
/// in brackets, `#` comments); all effective values are echoed into the
/// metadata sidecar of each run.
struct RunConfig {
  std::vector<double> probs;
  std::uint64_t m_phi = 0;  // 0 = adaptive
  std::uint64_t m_pi = 128;
  int t_iter = 12;
  int t_limit = 40;
  std::uint64_t grid = 1024;    // K* sample grid (theta)
  std::uint64_t samples = 512;  // k0 output rows
  double xmin = 1e-3;
  double xmax = 2.0;
  std::uint64_t points = 200;
  std::vector<double> x_list;  // `v` evaluation points
  std::string grid_spec = "imag:0:20:50";
  std::string method = "iteration";
  std::uint64_t mc_trees = 100000;
  int mc_generations = 20;
  std::uint64_t seed = 42;
  std::uint64_t coefficient_cap = std::uint64_t(1) << 24;
  std::uint64_t population_cap = std::uint64_t(1) << 53;
  int threads = 0;
  bool summary = false;
  bool emit_plot = false;
  bool with_fourier = true;
  std::string output;

  bool operator==(const RunConfig&) const = default;
};

/// Serialize with full double precision (%.17g), one key per line.
std::string to_config_text(const RunConfig& config);

/// Apply `key = value` lines onto `config`. Unknown keys are an error.
void apply_config_text(const std::string& text, RunConfig& config);

RunConfig parse_config_file(const std::string& path);

}  // namespace schroeder_tails
