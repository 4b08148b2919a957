#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ttbar/error.hpp"

namespace ttbar::spectra {

/// Large-index model of a Dirichlet spectrum: a_j ~ coeff and
/// lambda_j ~ scale * j^power beyond the stored terms (j counted from the
/// first nonzero exponent as 1).
struct DirichletTail {
  double scale = 0.0;
  double power = 1.0;
  double coeff = 0.0;
};

/// Holomorphic seed: sum_j a_j exp(-2 pi lambda_j delta), lambda strictly increasing.
struct HoloSeed {
  std::string name;
  double weight = 0.0;
  std::vector<double> lambda;
  std::vector<Complex> a;
  bool s_covariant = false;
  /// True when the stored terms truncate an infinite series.
  bool truncated = false;
  std::optional<DirichletTail> tail;

  std::size_t size() const { return lambda.size(); }
  double delta() const { return lambda.empty() ? 0.0 : lambda.front(); }
  void validate() const;
};

/// Real-analytic seed: sum a exp(-2 pi lambda delta1 + 2 pi i p delta2).
/// Terms are sorted by lambda; all terms with lambda < complete_below are present.
struct RealSeed {
  std::string name;
  double weight = 0.0;
  std::vector<double> lambda;
  std::vector<std::int32_t> spin;
  std::vector<Complex> a;
  double complete_below = 0.0;

  std::size_t size() const { return lambda.size(); }
  double delta() const;
  std::int32_t max_spin() const;
  void validate() const;
};

using Seed = std::variant<HoloSeed, RealSeed>;

struct SeedOptions {
  /// Number of stored terms for the infinite built-in series (0 = default).
  long long terms = 0;
  /// q-order to which the ising-Z characters are expanded.
  int ising_order = 64;
};

/// theta3, eta-inverse, eta24, ising-Z.
Seed builtin_seed(const std::string& name, const SeedOptions& opts = {});
HoloSeed builtin_holo_seed(const std::string& name, const SeedOptions& opts = {});
RealSeed builtin_real_seed(const std::string& name, const SeedOptions& opts = {});

/// |eta|^{2m}: real form of weight m (|delta|^m covariance), used as a
/// synthetic seed with nonzero weight and mixed spins.
RealSeed eta_modulus_power_seed(int m, int order = 48);

/// Drops terms with lambda == 0 (for Mellin transforms).
HoloSeed without_constant_term(const HoloSeed& seed);

/// Seed with a single exponent.
HoloSeed single_term_seed(double lambda, Complex a, double weight);

/// Parses a JSON seed description:
///   {"kind": "holo", "name": ..., "weight": k, "terms": [[lambda, re, im], ...]}
///   {"kind": "real", "name": ..., "weight": k, "terms": [[lambda, p, re, im], ...]}
Seed seed_from_json(const std::string& text);

const std::string& seed_name(const Seed& s);

}  // namespace ttbar::spectra
