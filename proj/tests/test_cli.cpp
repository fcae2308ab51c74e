#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "schroeder_tails/run_config.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static int counter = 0;
  const fs::path dir =
      fs::temp_directory_path() / ("schroeder_cli_" + std::to_string(++counter));
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(SCHROEDER_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  CliResult result;
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("validate happy path and error path with exit codes") {
  const auto good = run_cli("validate --probs 0,0.1,0.5,0.4");
  CHECK(good.status == 0);
  CHECK(good.out.find("E,2.3") != std::string::npos);
  CHECK(good.out.find("alpha,1.7645") != std::string::npos);

  const auto bad = run_cli("validate --probs 0.2,0.3,0.5");
  CHECK(bad.status == 2);
  CHECK(bad.err.find("NonZeroP0") != std::string::npos);
}

TEST_CASE("phi emits the coefficient table") {
  const auto r = run_cli("phi --probs 0,0.1,0.5,0.4 --order 16");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 18);  // header + n = 0..16
  CHECK(rows[0][0] == "n");
  CHECK(rows[0][1] == "phi_n");
  CHECK(std::stod(rows[1][1]) == 0.0);
  CHECK(std::stod(rows[2][1]) == 1.0);
  CHECK(std::stod(rows[3][1]) == doctest::Approx(0.5 / 0.09).epsilon(1e-10));
}

TEST_CASE("pi grid output") {
  const auto r = run_cli("pi --probs 0,0.1,0.5,0.4 --grid imag:0:10:11");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0][0] == "z_re");
  CHECK(std::stod(rows[1][2]) == doctest::Approx(1.0));  // Pi(0) = 1
  const auto bad = run_cli("pi --probs 0,0.1,0.5,0.4 --grid sideways:0:1:5");
  CHECK(bad.status == 2);
}

TEST_CASE("k0 rows witness periodicity at the endpoints") {
  const auto r = run_cli("k0 --probs 0,0.1,0.1,0.5,0.3 --samples 512");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 513);  // header + 512
  const double first = std::stod(rows[1][1]);
  const double last = std::stod(rows[512][1]);
  CHECK(std::abs(first - last) < 1e-12);
  CHECK(first > 0.0);
}

TEST_CASE("theta table is Hermitian") {
  const auto r = run_cli("theta --probs 0,0.1,0.5,0.4 --grid 1024");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() >= 4);
  // find the m and -m rows, check conjugation
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int m = std::stoi(rows[i][0]);
    if (m <= 0) continue;
    for (std::size_t j = 1; j < rows.size(); ++j) {
      if (std::stoi(rows[j][0]) == -m) {
        CHECK(std::stod(rows[i][1]) == doctest::Approx(std::stod(rows[j][1])).epsilon(1e-9));
        CHECK(std::stod(rows[i][2]) == doctest::Approx(-std::stod(rows[j][2])).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("density subcommand with both methods") {
  const auto iter = run_cli("density --probs 0,0.1,0.5,0.4 --method iteration --t 8 "
                            "--xmin 0.05 --xmax 1 --points 10");
  REQUIRE(iter.status == 0);
  const auto rows = parse_csv(iter.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0][0] == "x");
  CHECK(rows[0][1] == "p");

  const auto fourier = run_cli("density --probs 0,0.1,0.5,0.4 --method fourier "
                               "--xmin 0.2 --xmax 1 --points 5");
  REQUIRE(fourier.status == 0);
  const auto frows = parse_csv(fourier.out);
  REQUIRE(frows.size() == 6);
  // methods agree loosely at CLI tolerances
  const auto bad = run_cli("density --probs 0,0.1,0.5,0.4 --method sideways");
  CHECK(bad.status == 2);
}

TEST_CASE("numerical guard exit code") {
  // 3^20 is far over the default coefficient cap
  const auto r = run_cli("density --probs 0,0.1,0.5,0.4 --method iteration --t 20");
  CHECK(r.status == 3);
  CHECK(r.err.find("CapExceeded") != std::string::npos);
}

TEST_CASE("io failure exit code") {
  const auto r = run_cli(
      "phi --probs 0,0.1,0.5,0.4 --order 8 -o /nonexistent-dir-xyz/out.csv");
  CHECK(r.status == 4);
  CHECK(r.err.find("IoError") != std::string::npos);
}

TEST_CASE("compare writes CSV, sidecar, plot script, and is byte deterministic") {
  const fs::path dir = scratch_dir();
  const fs::path a = dir / "a.csv";
  const fs::path b = dir / "b.csv";
  const std::string flags = "compare --probs 0,0.1,0.5,0.4 --t 6 --xmin 0.1 --xmax 1.5 "
                            "--points 25 --emit-plot -o ";
  const auto ra = run_cli(flags + a.string());
  const auto rb = run_cli(flags + b.string());
  REQUIRE(ra.status == 0);
  REQUIRE(rb.status == 0);

  const std::string csv_a = slurp(a);
  const std::string csv_b = slurp(b);
  CHECK(csv_a == csv_b);
  CHECK(!csv_a.empty());
  CHECK(csv_a.rfind("x,p_iter,p_fourier,p_asym,ratio", 0) == 0);

  CHECK(fs::exists(a.string() + ".meta.json"));
  CHECK(fs::exists(a.string() + ".gnuplot"));

  const auto meta = nlohmann::json::parse(slurp(a.string() + ".meta.json"));
  CHECK(meta["subcommand"] == "compare");
  CHECK(meta["config"]["probs"].size() == 4);
  CHECK(meta["config"]["points"] == 25);
  CHECK(meta["config"]["seed"] == 42);  // defaults recorded too
  CHECK(meta["tolerances"].contains("mass"));
  CHECK(meta["tolerances"].contains("fourier_tail_cutoff"));
  CHECK(meta.contains("timing_ms"));
}

TEST_CASE("simulate summary and sample output") {
  const auto summary = run_cli("simulate --probs 0,0.1,0.5,0.4 --t 8 --n 2000 --seed 5 "
                               "--summary");
  REQUIRE(summary.status == 0);
  CHECK(summary.out.find("mean,") != std::string::npos);

  const auto a = run_cli("simulate --probs 0,0.1,0.5,0.4 --t 8 --n 500 --seed 5");
  const auto b = run_cli("simulate --probs 0,0.1,0.5,0.4 --t 8 --n 500 --seed 5");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const auto c = run_cli("simulate --probs 0,0.1,0.5,0.4 --t 8 --n 500 --seed 6");
  CHECK(a.out != c.out);
}

TEST_CASE("config file supplies the law and flags override it") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "run.toml";
  {
    std::ofstream out(cfg);
    out << "# reference law\n";
    out << "probs = [0.0, 0.1, 0.5, 0.4]\n";
    out << "points = 7\n";
  }
  const auto r = run_cli("validate --config " + cfg.string());
  REQUIRE(r.status == 0);
  CHECK(r.out.find("E,2.3") != std::string::npos);

  // flag wins over the config file
  const auto r2 = run_cli("validate --config " + cfg.string() + " --probs 0,0.1,0.1,0.5,0.3");
  REQUIRE(r2.status == 0);
  CHECK(r2.out.find("E,3") != std::string::npos);

  const auto missing = run_cli("validate --config " + (dir / "nope.toml").string());
  CHECK(missing.status == 4);
}

TEST_CASE("thread cap honors the environment variable") {
  const auto r = run_cli("k0 --probs 0,0.1,0.5,0.4 --samples 16");
  REQUIRE(r.status == 0);
  // same output under a 1-thread cap
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "capped.txt";
  const std::string cmd = std::string("SCHROEDER_TAILS_THREADS=1 ") + SCHROEDER_CLI_PATH +
                          " k0 --probs 0,0.1,0.5,0.4 --samples 16 > " + out.string() +
                          " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out) == r.out);
}

TEST_CASE("run config round-trips losslessly") {
  schroeder_tails::RunConfig config;
  config.probs = {0.0, 0.1, 0.5, 0.4};
  config.xmin = 0.123456789012345678;
  config.xmax = 17.25;
  config.x_list = {1.0, 2.3, 0.0001};
  config.m_phi = 96;
  config.seed = 123456789ull;
  config.method = "fourier";
  config.grid_spec = "real:0:5:10";
  config.summary = true;
  config.output = "w.csv";
  const std::string text = schroeder_tails::to_config_text(config);
  schroeder_tails::RunConfig parsed;
  schroeder_tails::apply_config_text(text, parsed);
  CHECK(parsed == config);
}
