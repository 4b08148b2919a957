#include "ttbar/verify/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ttbar/error.hpp"
#include "ttbar/verify/suites.hpp"

namespace ttbar::verify {

namespace {

using Json = nlohmann::ordered_json;

double parse_number(const std::string& text, const std::string& what) {
  if (text.empty()) throw ConfigError("empty number in " + what);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE)
    throw ConfigError("malformed number '" + text + "' in " + what);
  if (!std::isfinite(v)) throw ConfigError("non-finite number in " + what);
  return v;
}

double parse_coefficient(const std::string& text, const std::string& what) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_number(text, what);
}

int parse_count(const std::string& text, const std::string& what) {
  double v = parse_number(text, what);
  if (v != std::floor(v) || v < 1 || v > 1e6) throw ConfigError("grid count must be a positive integer in " + what);
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("'" + key + "' must be a number, a complex string or [re, im]");
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  std::string t;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw ConfigError("empty complex number");
  if (t.front() == '(' && t.back() == ')') {
    auto parts = split(t.substr(1, t.size() - 2), ',');
    if (parts.size() != 2) throw ConfigError("malformed complex number '" + raw + "'");
    return {parse_number(parts[0], raw), parse_number(parts[1], raw)};
  }
  if (t.back() != 'i' && t.back() != 'j') return {parse_number(t, raw), 0.0};
  std::string body = t.substr(0, t.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  if (split_at == std::string::npos) return {0.0, parse_coefficient(body, raw)};
  return {parse_number(body.substr(0, split_at), raw), parse_coefficient(body.substr(split_at), raw)};
}

GridSpec GridSpec::parse(const std::string& text) {
  auto axes = split(text, ',');
  if (axes.empty() || axes.size() > 2) throw ConfigError("grid must be 'lo:hi:n' or 'lo:hi:n,lo:hi:n'");
  GridSpec g;
  auto axis = [&](const std::string& a, double& lo, double& hi, int& n) {
    auto f = split(a, ':');
    if (f.size() != 3) throw ConfigError("grid axis '" + a + "' must be lo:hi:n");
    lo = parse_number(f[0], "grid");
    hi = parse_number(f[1], "grid");
    n = parse_count(f[2], "grid");
  };
  axis(axes[0], g.d1_lo, g.d1_hi, g.n1);
  if (axes.size() == 2) axis(axes[1], g.d2_lo, g.d2_hi, g.n2);
  g.validate();
  return g;
}

std::string GridSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << d1_lo << ':' << d1_hi << ':' << n1 << ',' << d2_lo << ':' << d2_hi << ':' << n2;
  return out.str();
}

void GridSpec::validate() const {
  if (n1 < 1 || n2 < 1) throw ConfigError("grid counts must be >= 1");
  if (!(d1_lo > 0.0) || !(d1_hi > 0.0)) throw ConfigError("grid delta1 range must be positive");
  if (d1_hi < d1_lo || d2_hi < d2_lo) throw ConfigError("grid ranges must satisfy lo <= hi");
  if ((n1 == 1 && d1_hi != d1_lo) || (n2 == 1 && d2_hi != d2_lo))
    throw ConfigError("a grid axis with one point needs lo == hi");
}

std::vector<ModulusPoint> GridSpec::points() const {
  validate();
  std::vector<ModulusPoint> pts;
  pts.reserve(static_cast<std::size_t>(n1) * n2);
  for (int i = 0; i < n1; ++i) {
    double d1 = n1 == 1 ? d1_lo : d1_lo + (d1_hi - d1_lo) * i / (n1 - 1);
    for (int j = 0; j < n2; ++j) {
      double d2 = n2 == 1 ? d2_lo : d2_lo + (d2_hi - d2_lo) * j / (n2 - 1);
      pts.emplace_back(d1, d2);
    }
  }
  return pts;
}

void RunConfig::validate() const {
  if (!is_suite(suite)) throw ConfigError("unknown suite '" + suite + "'");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("tol must be > 0");
  if (quad_order < 4 || quad_order > 512) throw ConfigError("quad-order must be in [4, 512]");
  if (threads < 1 || threads > 256) throw ConfigError("threads must be in [1, 256]");
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
  if (route != "auto" && route != "automatic" && route != "quadrature" && route != "closedform")
    throw ConfigError("route must be auto, quadrature or closedform");
  for (double a : alphas)
    if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("alpha values must be > 0");
  for (const auto& name : seeds)
    if (name.empty()) throw ConfigError("empty seed name");
  if (beta && (!std::isfinite(*beta) || *beta < 0.0)) throw ConfigError("beta must be >= 0");
  if (delta && !(delta->real() > 0.0)) throw ConfigError("delta needs a positive real part");
  if (grid) grid->validate();
}

RunConfig RunConfig::from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const Json& v = it.value();
      if (key == "suite") {
        c.suite = v.get<std::string>();
      } else if (key == "seed") {
        c.seeds = v.is_array() ? v.get<std::vector<std::string>>() : std::vector<std::string>{v.get<std::string>()};
      } else if (key == "alpha") {
        c.alphas = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
      } else if (key == "beta") {
        c.beta = v.get<double>();
      } else if (key == "delta") {
        c.delta = complex_from_json(v, key);
      } else if (key == "s") {
        c.s = complex_from_json(v, key);
      } else if (key == "grid") {
        c.grid = GridSpec::parse(v.get<std::string>());
      } else if (key == "tol") {
        c.tol = v.get<double>();
      } else if (key == "quad-order") {
        c.quad_order = v.get<int>();
      } else if (key == "precision") {
        c.precision = numkit::precision_from_string(v.get<std::string>());
      } else if (key == "out") {
        c.out = v.get<std::string>();
      } else if (key == "format") {
        c.format = v.get<std::string>();
      } else if (key == "route") {
        c.route = v.get<std::string>();
      } else if (key == "threads") {
        c.threads = v.get<int>();
      } else if (key == "wall-time") {
        c.wall_time = v.get<bool>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

nlohmann::ordered_json RunConfig::to_json() const {
  Json j = Json::object();
  j["suite"] = suite;
  j["seed"] = seeds;
  j["alpha"] = alphas;
  if (beta) j["beta"] = *beta;
  if (delta) j["delta"] = complex_json(*delta);
  if (s) j["s"] = complex_json(*s);
  if (grid) j["grid"] = grid->to_string();
  j["tol"] = tol;
  j["quad-order"] = quad_order;
  j["precision"] = numkit::to_string(precision);
  j["format"] = format;
  j["route"] = route;
  j["threads"] = threads;
  j["wall-time"] = wall_time;
  return j;
}

}  // namespace ttbar::verify
