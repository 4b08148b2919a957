#include "ttbar/spectra/seed.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numbers>
#include <tuple>

#include "json.hpp"

#include "ttbar/spectra/coefficients.hpp"

namespace ttbar::spectra {

void HoloSeed::validate() const {
  if (lambda.size() != a.size()) throw ConfigError("seed '" + name + "': size mismatch");
  if (lambda.empty()) throw ConfigError("seed '" + name + "' has no terms");
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    require_finite(lambda[j], "lambda");
    require_finite(a[j], "coefficient");
    if (j > 0 && !(lambda[j] > lambda[j - 1]))
      throw ConfigError("seed '" + name + "': exponents must be strictly increasing");
  }
}

double RealSeed::delta() const {
  return lambda.empty() ? 0.0 : *std::min_element(lambda.begin(), lambda.end());
}

std::int32_t RealSeed::max_spin() const {
  std::int32_t m = 0;
  for (auto p : spin) m = std::max(m, p < 0 ? -p : p);
  return m;
}

void RealSeed::validate() const {
  if (lambda.size() != a.size() || lambda.size() != spin.size())
    throw ConfigError("seed '" + name + "': size mismatch");
  if (lambda.empty()) throw ConfigError("seed '" + name + "' has no terms");
  std::map<std::pair<double, std::int32_t>, Complex> index;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    require_finite(lambda[j], "lambda");
    require_finite(a[j], "coefficient");
    if (j > 0 && lambda[j] < lambda[j - 1])
      throw ConfigError("seed '" + name + "': terms must be sorted by exponent");
    index[{lambda[j], spin[j]}] += a[j];
  }
  for (const auto& [key, value] : index) {
    auto it = index.find({key.first, -key.second});
    Complex partner = it == index.end() ? Complex(0.0) : it->second;
    if (std::abs(partner - std::conj(value)) > 1e-12 * std::max(1.0, std::abs(value)))
      throw ConfigError("seed '" + name + "' is not Hermitian in the spin");
  }
}

namespace {

constexpr double kPi = std::numbers::pi;

HoloSeed theta3(long long n) {
  HoloSeed s;
  s.name = "theta3";
  s.weight = 0.5;
  s.s_covariant = true;
  s.truncated = true;
  for (long long j = 0; j < n; ++j) {
    s.lambda.push_back(0.5 * static_cast<double>(j) * static_cast<double>(j));
    s.a.emplace_back(j == 0 ? 1.0 : 2.0);
  }
  s.tail = DirichletTail{0.5, 2.0, 2.0};
  return s;
}

HoloSeed eta_inverse(long long n) {
  HoloSeed s;
  s.name = "eta-inverse";
  s.weight = -0.5;
  s.s_covariant = true;
  s.truncated = true;
  auto p = partition_coeffs_real(n - 1);
  for (long long j = 0; j < n; ++j) {
    s.lambda.push_back(static_cast<double>(j) - 1.0 / 24.0);
    s.a.emplace_back(p[j]);
  }
  return s;
}

HoloSeed eta24(long long n) {
  HoloSeed s;
  s.name = "eta24";
  s.weight = 12.0;
  s.s_covariant = true;
  s.truncated = true;
  auto c = eta24_coeffs(n);
  for (long long j = 1; j <= n; ++j) {
    s.lambda.push_back(static_cast<double>(j));
    s.a.emplace_back(static_cast<double>(c[j]));
  }
  return s;
}

// Accumulates products c_i c_j q^{x_i} qbar^{y_j} into (lambda, spin) bins;
// exponents are stored in units of 1/48.
struct RealBuilder {
  std::map<std::pair<long long, int>, double> bins;

  void add_modulus_square(const std::vector<double>& c, long long offset48, int half_steps_per_unit,
                          long long max48) {
    const long long step48 = 48 / half_steps_per_unit;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0.0) continue;
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0.0) continue;
        long long x48 = offset48 + step48 * static_cast<long long>(i);
        long long y48 = offset48 + step48 * static_cast<long long>(j);
        if (x48 + y48 > max48) continue;
        long long p48 = y48 - x48;
        if (p48 % 48 != 0) throw Error("non-integer spin in real seed construction");
        bins[{x48 + y48, static_cast<int>(p48 / 48)}] += c[i] * c[j];
      }
    }
  }

  RealSeed finish(std::string name, double weight, double complete_below) const {
    RealSeed s;
    s.name = std::move(name);
    s.weight = weight;
    s.complete_below = complete_below;
    for (const auto& [key, v] : bins) {
      if (v == 0.0) continue;
      s.lambda.push_back(static_cast<double>(key.first) / 48.0);
      s.spin.push_back(key.second);
      s.a.emplace_back(v);
    }
    return s;
  }
};

RealSeed ising_z(int order) {
  if (order < 2) throw ConfigError("ising-Z order must be >= 2");
  IsingCharacters ch = ising_characters(2 * order);
  RealBuilder b;
  const long long max48 = 48LL * order - 2;
  b.add_modulus_square(ch.c0, -1, 2, max48);
  b.add_modulus_square(ch.ch, -1, 2, max48);
  b.add_modulus_square(ch.cs, 2, 2, max48);
  return b.finish("ising-Z", 0.0, static_cast<double>(max48) / 48.0);
}

}  // namespace

RealSeed eta_modulus_power_seed(int m, int order) {
  if (m < 1) throw DomainError("eta modulus power needs m >= 1");
  std::vector<double> c = euler_product_power(m, order);
  RealBuilder b;
  const long long offset48 = 2LL * m;  // m/24 in units of 1/48
  const long long max48 = 2 * offset48 + 48LL * order;
  b.add_modulus_square(c, offset48, 1, max48);
  return b.finish("eta-modulus-" + std::to_string(m), static_cast<double>(m),
                  static_cast<double>(max48) / 48.0);
}

HoloSeed builtin_holo_seed(const std::string& name, const SeedOptions& opts) {
  if (opts.terms < 0) throw ConfigError("term budget must be >= 0");
  if (name == "theta3") return theta3(opts.terms ? opts.terms : 400);
  if (name == "eta-inverse") return eta_inverse(opts.terms ? opts.terms : 6000);
  if (name == "eta24") return eta24(opts.terms ? opts.terms : 4096);
  if (name == "ising-Z") throw ConfigError("seed 'ising-Z' is a real-analytic seed");
  throw ConfigError("unknown seed '" + name + "'");
}

RealSeed builtin_real_seed(const std::string& name, const SeedOptions& opts) {
  if (name == "ising-Z") return ising_z(opts.ising_order);
  if (name == "theta3" || name == "eta-inverse" || name == "eta24")
    throw ConfigError("seed '" + name + "' is holomorphic");
  throw ConfigError("unknown seed '" + name + "'");
}

Seed builtin_seed(const std::string& name, const SeedOptions& opts) {
  if (name == "ising-Z") return builtin_real_seed(name, opts);
  return builtin_holo_seed(name, opts);
}

HoloSeed without_constant_term(const HoloSeed& seed) {
  HoloSeed out = seed;
  out.lambda.clear();
  out.a.clear();
  for (std::size_t j = 0; j < seed.size(); ++j) {
    if (seed.lambda[j] == 0.0) continue;
    out.lambda.push_back(seed.lambda[j]);
    out.a.push_back(seed.a[j]);
  }
  out.name = seed.name + "-nonconstant";
  out.s_covariant = false;
  return out;
}

HoloSeed single_term_seed(double lambda, Complex a, double weight) {
  HoloSeed s;
  s.name = "single-term";
  s.weight = weight;
  s.lambda = {lambda};
  s.a = {a};
  return s;
}

Seed seed_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("seed JSON: ") + e.what());
  }
  try {
    std::string kind = j.value("kind", "holo");
    std::string name = j.value("name", "user");
    double weight = j.at("weight").get<double>();
    const auto& terms = j.at("terms");
    if (kind == "holo") {
      HoloSeed s;
      s.name = name;
      s.weight = weight;
      s.s_covariant = j.value("s_covariant", false);
      for (const auto& t : terms) {
        s.lambda.push_back(t.at(0).get<double>());
        s.a.emplace_back(t.at(1).get<double>(), t.size() > 2 ? t.at(2).get<double>() : 0.0);
      }
      s.validate();
      if (j.contains("delta") && std::abs(j["delta"].get<double>() - s.delta()) > 1e-12)
        throw ConfigError("seed JSON: 'delta' disagrees with the smallest exponent");
      return s;
    }
    if (kind == "real") {
      std::vector<std::tuple<double, int, Complex>> rows;
      for (const auto& t : terms)
        rows.emplace_back(t.at(0).get<double>(), t.at(1).get<int>(),
                          Complex(t.at(2).get<double>(), t.size() > 3 ? t.at(3).get<double>() : 0.0));
      std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        return std::get<0>(x) < std::get<0>(y);
      });
      RealSeed s;
      s.name = name;
      s.weight = weight;
      for (const auto& [l, p, a] : rows) {
        s.lambda.push_back(l);
        s.spin.push_back(p);
        s.a.push_back(a);
      }
      s.complete_below = std::numeric_limits<double>::infinity();
      s.validate();
      return s;
    }
    throw ConfigError("seed JSON: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("seed JSON: ") + e.what());
  }
}

const std::string& seed_name(const Seed& s) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, s);
}

}  // namespace ttbar::spectra
