#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ttbar/numkit/summation.hpp"
#include "ttbar/spectra/modulus.hpp"

namespace ttbar::verify {

using spectra::ModulusPoint;

/// Parses "1.1+0.2i", "0.5-3i", "2i", "1.25" or "(1.1,0.2)".
Complex parse_complex(const std::string& text);

/// Rectangular grid of delta points: n1 values of delta1 evenly spaced in
/// [d1_lo, d1_hi] and n2 values of delta2 in [d2_lo, d2_hi]. Points are
/// ordered lexicographically by (delta1 index, delta2 index).
struct GridSpec {
  double d1_lo = 1.0, d1_hi = 1.0;
  int n1 = 1;
  double d2_lo = 0.0, d2_hi = 0.0;
  int n2 = 1;

  /// "lo:hi:n" for delta1 alone, or "lo:hi:n,lo:hi:n" for both axes.
  static GridSpec parse(const std::string& text);
  std::string to_string() const;
  void validate() const;
  std::vector<ModulusPoint> points() const;
};

struct RunConfig {
  std::string suite = "all";
  /// Empty lists mean the per-suite defaults.
  std::vector<std::string> seeds;
  std::vector<double> alphas;
  std::optional<double> beta;
  std::optional<Complex> delta;
  std::optional<Complex> s;
  std::optional<GridSpec> grid;
  /// Truncation tolerance of series evaluations.
  double tol = 1e-15;
  int quad_order = 96;
  numkit::PrecisionMode precision = numkit::PrecisionMode::binary64;
  std::string out;
  std::string format = "json";
  std::string route = "auto";
  int threads = 1;
  /// Adds the measured wall time to the report (makes the bytes run-dependent).
  bool wall_time = false;

  /// Throws ConfigError on any invalid field.
  void validate() const;

  /// Flat JSON document with keys named after the command-line flags:
  /// suite, seed, alpha, beta, delta, s, grid, tol, quad-order, precision,
  /// out, format, route, threads, wall-time. Unknown keys are rejected.
  static RunConfig from_json(const std::string& text);
  static RunConfig from_file(const std::string& path);
  nlohmann::ordered_json to_json() const;
};

}  // namespace ttbar::verify
