#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ttbar/error.hpp"

namespace ttbar::numkit {

using ComplexIntegrand = std::function<Complex(double)>;

enum class QuadRule { gauss_hermite, adaptive_interval, tanh_sinh };

enum class DomainKind { interval, half_line, real_line };

struct QuadDomain {
  DomainKind kind = DomainKind::interval;
  double a = 0.0;
  double b = 1.0;

  static QuadDomain interval(double a, double b) { return {DomainKind::interval, a, b}; }
  static QuadDomain half_line(double a) { return {DomainKind::half_line, a, 0.0}; }
  static QuadDomain real_line() { return {DomainKind::real_line, 0.0, 0.0}; }
};

struct QuadratureSpec {
  QuadRule rule = QuadRule::adaptive_interval;
  int order = 60;
  double tol = 1e-12;
  QuadDomain domain;

  void validate() const;
};

/// Nodes and weights of an interpolatory rule.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight e^{-t^2} on the real line, 1 <= order <= 200.
GaussRule gauss_hermite(int order);

/// Gauss-Legendre rule on [-1, 1], 1 <= order <= 400.
GaussRule gauss_legendre(int order);

struct QuadResult {
  Complex value;
  double error = 0.0;
  int evaluations = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  int max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. Throws ConvergenceError
/// with the best value when the subdivision budget runs out.
QuadResult adaptive_quad(const ComplexIntegrand& f, double a, double b,
                         const AdaptiveOptions& opts = {});

/// Dispatch on domain kind. Half-lines use x = a + e^u - 1 and are integrated
/// in unit u-panels until the contributions become negligible.
QuadResult adaptive_quad(const ComplexIntegrand& f, const QuadDomain& domain,
                         const AdaptiveOptions& opts = {});

/// Double-exponential rule on a finite interval; tolerates integrable
/// endpoint singularities.
QuadResult tanh_sinh(const ComplexIntegrand& f, double a, double b,
                     double tol = 1e-12, int max_level = 12);

/// Applies a Gauss-Hermite rule to f: sum_i w_i f(t_i) ~ \int f(t) e^{-t^2} dt.
Complex apply_rule(const GaussRule& rule, const ComplexIntegrand& f);

/// Dispatch a full QuadratureSpec. For gauss_hermite the integrand is taken
/// to already exclude the e^{-t^2} weight and the error is the difference to
/// the rule of half the order.
QuadResult integrate(const ComplexIntegrand& f, const QuadratureSpec& spec);

QuadRule quad_rule_from_string(const std::string& name);

}  // namespace ttbar::numkit
