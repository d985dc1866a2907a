#include "faberelast/cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "faberelast/errors.hpp"

namespace faberelast::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_real(const std::string& s, int line) {
  if (s.empty()) fail(line, "empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) fail(line, "bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s, int line) {
  const double v = parse_real(s, line);
  if (v != std::floor(v) || std::abs(v) > 1e9) fail(line, "expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

CVector parse_complex_list(const std::string& s, int line) {
  CVector out;
  if (s.empty()) return out;
  for (const std::string& item : split(s, ';')) {
    if (item.empty()) fail(line, "empty entry in complex list");
    const auto parts = split(item, ',');
    if (parts.size() == 1) {
      out.emplace_back(parse_real(parts[0], line), 0.0);
    } else if (parts.size() == 2) {
      out.emplace_back(parse_real(parts[0], line), parse_real(parts[1], line));
    } else {
      fail(line, "complex entries are 're,im', got '" + item + "'");
    }
  }
  return out;
}

int degree(const CVector& v) {
  for (int m = static_cast<int>(v.size()) - 1; m >= 0; --m)
    if (v[m] != cplx(0.0)) return m;
  return -1;
}

}  // namespace

ExteriorMap JobConfig::exterior_map() const {
  try {
    return ExteriorMap(map);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("map: ") + e.what());
  }
}

Material JobConfig::material() const {
  try {
    if (alpha1 && kappa) return material_from_figure_params(*alpha1, *kappa);
    if (lambda && mu) return material_from_lame(*lambda, *mu);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("material: ") + e.what());
  }
  throw ConfigError("material: give either lambda and mu, or alpha1 and kappa");
}

FarFieldLoading JobConfig::loading() const { return FarFieldLoading(A, B); }

void JobConfig::check() const {
  const bool lame = lambda.has_value() || mu.has_value();
  const bool figure = alpha1.has_value() || kappa.has_value();
  if (lame == figure) throw ConfigError("material: exactly one of {lambda, mu} or {alpha1, kappa} is required");
  if (lame && !(lambda && mu)) throw ConfigError("material: both lambda and mu are required");
  if (figure && !(alpha1 && kappa)) throw ConfigError("material: both alpha1 and kappa are required");
  if (map.empty()) throw ConfigError("map: missing (give at least a_0)");

  const ExteriorMap m = exterior_map();
  (void)material();
  const int need = std::max({degree(A), degree(B), m.order()}) + 2;
  if (truncation_N < need) {
    std::ostringstream msg;
    msg << "truncation: N = " << truncation_N << " but the map and loading need N >= " << need;
    throw ConfigError(msg.str());
  }
  if (quadrature_Q < 64 || (quadrature_Q & (quadrature_Q - 1)) != 0)
    throw ConfigError("Q must be a power of two >= 64");
  if (grid) {
    if (grid->nx < 2 || grid->ny < 2) throw ConfigError("grid: resolution must be at least 2 x 2");
    if (!(grid->xmax > grid->xmin) || !(grid->ymax > grid->ymin)) throw ConfigError("grid: empty extent");
  }
}

JobConfig parse_config_text(const std::string& text) {
  JobConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(raw.substr(0, raw.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!seen.insert(key).second) fail(line, "repeated key '" + key + "'");

    if (key == "map") {
      cfg.map = parse_complex_list(value, line);
    } else if (key == "lambda") {
      cfg.lambda = parse_real(value, line);
    } else if (key == "mu") {
      cfg.mu = parse_real(value, line);
    } else if (key == "alpha1") {
      cfg.alpha1 = parse_real(value, line);
    } else if (key == "kappa") {
      cfg.kappa = parse_real(value, line);
    } else if (key == "A") {
      cfg.A = parse_complex_list(value, line);
    } else if (key == "B") {
      cfg.B = parse_complex_list(value, line);
    } else if (key == "N") {
      cfg.truncation_N = parse_int(value, line);
    } else if (key == "Q") {
      cfg.quadrature_Q = parse_int(value, line);
    } else if (key == "grid") {
      const auto parts = split(value, ',');
      if (parts.size() != 6) fail(line, "grid = xmin,xmax,ymin,ymax,nx,ny");
      GridSpec g;
      g.xmin = parse_real(parts[0], line);
      g.xmax = parse_real(parts[1], line);
      g.ymin = parse_real(parts[2], line);
      g.ymax = parse_real(parts[3], line);
      g.nx = parse_int(parts[4], line);
      g.ny = parse_int(parts[5], line);
      cfg.grid = g;
    } else if (key == "output") {
      cfg.output_path = value;
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

JobConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace faberelast::cli
