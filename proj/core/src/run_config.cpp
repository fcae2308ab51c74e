#include "schroeder_tails/run_config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "schroeder_tails/errors.hpp"

namespace schroeder_tails {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_array(const std::vector<double>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    out += format_double(vs[i]);
  }
  out += "]";
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(errc::invalid_argument, "config value is not a number: '" + s + "'");
  }
}

std::uint64_t parse_u64(const std::string& s) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(errc::invalid_argument, "config value is not a nonnegative integer: '" + s + "'");
  }
}

int parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(errc::invalid_argument, "config value is not an integer: '" + s + "'");
  }
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  fail(errc::invalid_argument, "config value is not a bool: '" + s + "'");
}

std::vector<double> parse_array(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    fail(errc::invalid_argument, "config array must look like [a, b, ...]: '" + s + "'");
  std::vector<double> out;
  std::string body = s.substr(1, s.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(item));
  }
  return out;
}

std::string parse_string(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

std::string to_config_text(const RunConfig& c) {
  std::ostringstream out;
  out << "probs = " << format_array(c.probs) << "\n";
  out << "m_phi = " << c.m_phi << "\n";
  out << "m_pi = " << c.m_pi << "\n";
  out << "t_iter = " << c.t_iter << "\n";
  out << "t_limit = " << c.t_limit << "\n";
  out << "grid = " << c.grid << "\n";
  out << "samples = " << c.samples << "\n";
  out << "xmin = " << format_double(c.xmin) << "\n";
  out << "xmax = " << format_double(c.xmax) << "\n";
  out << "points = " << c.points << "\n";
  out << "x_list = " << format_array(c.x_list) << "\n";
  out << "grid_spec = \"" << c.grid_spec << "\"\n";
  out << "method = \"" << c.method << "\"\n";
  out << "mc_trees = " << c.mc_trees << "\n";
  out << "mc_generations = " << c.mc_generations << "\n";
  out << "seed = " << c.seed << "\n";
  out << "coefficient_cap = " << c.coefficient_cap << "\n";
  out << "population_cap = " << c.population_cap << "\n";
  out << "threads = " << c.threads << "\n";
  out << "summary = " << (c.summary ? "true" : "false") << "\n";
  out << "emit_plot = " << (c.emit_plot ? "true" : "false") << "\n";
  out << "with_fourier = " << (c.with_fourier ? "true" : "false") << "\n";
  out << "output = \"" << c.output << "\"\n";
  return out.str();
}

void apply_config_text(const std::string& text, RunConfig& c) {
  const std::map<std::string, std::function<void(const std::string&)>> setters = {
      {"probs", [&](const std::string& v) { c.probs = parse_array(v); }},
      {"m_phi", [&](const std::string& v) { c.m_phi = parse_u64(v); }},
      {"m_pi", [&](const std::string& v) { c.m_pi = parse_u64(v); }},
      {"t_iter", [&](const std::string& v) { c.t_iter = parse_int(v); }},
      {"t_limit", [&](const std::string& v) { c.t_limit = parse_int(v); }},
      {"grid", [&](const std::string& v) { c.grid = parse_u64(v); }},
      {"samples", [&](const std::string& v) { c.samples = parse_u64(v); }},
      {"xmin", [&](const std::string& v) { c.xmin = parse_double(v); }},
      {"xmax", [&](const std::string& v) { c.xmax = parse_double(v); }},
      {"points", [&](const std::string& v) { c.points = parse_u64(v); }},
      {"x_list", [&](const std::string& v) { c.x_list = parse_array(v); }},
      {"grid_spec", [&](const std::string& v) { c.grid_spec = parse_string(v); }},
      {"method", [&](const std::string& v) { c.method = parse_string(v); }},
      {"mc_trees", [&](const std::string& v) { c.mc_trees = parse_u64(v); }},
      {"mc_generations", [&](const std::string& v) { c.mc_generations = parse_int(v); }},
      {"seed", [&](const std::string& v) { c.seed = parse_u64(v); }},
      {"coefficient_cap", [&](const std::string& v) { c.coefficient_cap = parse_u64(v); }},
      {"population_cap", [&](const std::string& v) { c.population_cap = parse_u64(v); }},
      {"threads", [&](const std::string& v) { c.threads = parse_int(v); }},
      {"summary", [&](const std::string& v) { c.summary = parse_bool(v); }},
      {"emit_plot", [&](const std::string& v) { c.emit_plot = parse_bool(v); }},
      {"with_fourier", [&](const std::string& v) { c.with_fourier = parse_bool(v); }},
      {"output", [&](const std::string& v) { c.output = parse_string(v); }},
  };

  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    // strip comments outside quotes
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quote = !in_quote;
      if (line[i] == '#' && !in_quote) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(errc::invalid_argument, "config line has no '=': '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      fail(errc::invalid_argument, "unknown config key '" + key + "'");
    it->second(value);
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig config;
  apply_config_text(buf.str(), config);
  return config;
}

}  // namespace schroeder_tails
