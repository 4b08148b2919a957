#include "ttbar/numkit/special.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "ttbar/numkit/double_double.hpp"
#include "ttbar/numkit/quadrature.hpp"

namespace ttbar::numkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

Complex lanczos_log(Complex z) {
  // log Gamma(z) for Re z >= 1/2.
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex series_1f1(Complex a, Complex b, Complex z, const KummerOptions& o) {
  if (o.precision == PrecisionMode::double_double) {
    ComplexDD term(Complex(1.0));
    ComplexDD sum = term;
    const ComplexDD zz(z);
    for (int n = 0; n < o.max_terms; ++n) {
      ComplexDD num = ComplexDD(a + static_cast<double>(n)) * zz;
      ComplexDD den = ComplexDD(b + static_cast<double>(n)) *
                      ComplexDD(Complex(static_cast<double>(n + 1)));
      term = term * num / den;
      sum = sum + term;
      double tn = abs_approx(term), sn = abs_approx(sum);
      bool shrinking = std::abs(a + static_cast<double>(n + 1)) * std::abs(z) <
                       std::abs(b + static_cast<double>(n + 1)) * (n + 2);
      if (shrinking && tn <= 1e-32 * sn) return sum.value();
      if (tn == 0.0) return sum.value();
    }
    throw ConvergenceError("1F1 series did not converge", sum.value(), abs_approx(term));
  }
  Complex term = 1.0;
  CompensatedSum sum;
  sum.add(term);
  for (int n = 0; n < o.max_terms; ++n) {
    term *= (a + static_cast<double>(n)) * z /
            ((b + static_cast<double>(n)) * static_cast<double>(n + 1));
    sum.add(term);
    bool shrinking = std::abs(a + static_cast<double>(n + 1)) * std::abs(z) <
                     std::abs(b + static_cast<double>(n + 1)) * (n + 2);
    if (shrinking && std::abs(term) <= o.tol * std::abs(sum.value())) return sum.value();
    if (term == 0.0) return sum.value();
  }
  throw ConvergenceError("1F1 series did not converge", sum.value(), std::abs(term));
}

}  // namespace

Complex gamma_complex(Complex z) {
  require_finite(z, "z");
  if (is_nonpositive_integer(z))
    throw DomainError("gamma pole at non-positive integer " + std::to_string(z.real()));
  if (z.real() < 0.5) {
    Complex s = std::sin(kPi * z);
    return kPi / (s * gamma_complex(1.0 - z));
  }
  if (z.imag() == 0.0) return std::tgamma(z.real());
  return std::exp(lanczos_log(z));
}

Complex log_gamma_complex(Complex z) {
  require_finite(z, "z");
  if (z.real() < 0.5) throw DomainError("log_gamma_complex requires Re z >= 1/2");
  return lanczos_log(z);
}

Complex kummer_1f1(Complex a, Complex b, Complex z, const KummerOptions& opts) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(z, "z");
  if (is_nonpositive_integer(b)) throw DomainError("1F1: b is a non-positive integer");
  if (std::abs(z) > opts.cap)
    throw DomainError("1F1: |z| exceeds the configured cap; use the quadrature route");
  if (z == 0.0) return 1.0;
  if (z.real() < 0.0) return std::exp(z) * series_1f1(b - a, b, -z, opts);
  return series_1f1(a, b, z, opts);
}

Complex tricomi_u(Complex a, Complex b, Complex z, const KummerOptions& opts) {
  double frac = std::abs(b.real() - std::round(b.real()));
  if (b.imag() == 0.0 && frac < 1e-8)
    throw DomainError("Tricomi U connection formula needs non-integer b");
  if (z == 0.0) throw DomainError("Tricomi U at z = 0");
  Complex m1 = kummer_1f1(a, b, z, opts);
  Complex m2 = kummer_1f1(a - b + 1.0, 2.0 - b, z, opts);
  Complex c1 = gamma_complex(1.0 - b) / gamma_complex(a - b + 1.0);
  Complex c2 = gamma_complex(b - 1.0) / gamma_complex(a);
  return c1 * m1 + c2 * principal_power(z, 1.0 - b) * m2;
}

Complex principal_power(Complex z, Complex w) {
  require_finite(z, "z");
  require_finite(w, "w");
  if (z == 0.0) {
    if (w.real() <= 0.0) throw DomainError("0 raised to a power with Re w <= 0");
    return 0.0;
  }
  if (w == 1.0) return z;
  if (w.imag() == 0.0 && w.real() == 0.5) return std::sqrt(z);
  return std::exp(w * std::log(z));
}

bool on_branch_cut(Complex z) {
  return z.real() < 0.0 && std::abs(z.imag()) <= 1e-15 * std::abs(z.real());
}

Complex checked_sqrt(Complex z, const char* what) {
  if (on_branch_cut(z)) throw BranchCutError(std::string(what) + " lies on the branch cut", z);
  return std::sqrt(z);
}

Complex sqrt1pm1(Complex w) {
  Complex s = std::sqrt(1.0 + w);
  return w / (1.0 + s);
}

double gaussian_power_mean(double c, double alpha, double k, int gh_order) {
  if (!(c > 0.0) || !(alpha > 0.0)) throw DomainError("gaussian_power_mean needs c > 0 and alpha > 0");
  const double ra = std::sqrt(alpha);
  if (k <= 1.0) {
    GaussRule rule = gauss_hermite(gh_order);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * principal_power(Complex(c, ra * rule.nodes[i]), 1.0 - k).real();
    return acc / (2.0 * kPi * ra);
  }
  const double nu = k - 1.0;
  const double lg = std::lgamma(nu);
  // log of the x-integrand; its maximum solves (nu - 1)/x = c + alpha x/2
  auto logf = [&](double x) { return (nu - 1.0) * std::log(x) - c * x - 0.25 * alpha * x * x - lg; };
  double xs = nu > 1.0 ? 2.0 * (nu - 1.0) / (c + std::sqrt(c * c + 2.0 * alpha * (nu - 1.0))) : 0.0;
  double peak = xs > 0.0 ? logf(xs) : -lg;
  double X = std::max(xs, 1.0 / c);
  while (logf(X) > peak - 60.0) X *= 1.5;
  AdaptiveOptions o;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-15;
  QuadResult r;
  if (nu >= 1.0) {
    auto f = [&](double x) { return Complex(x > 0.0 ? std::exp(logf(x)) : (nu == 1.0 ? std::exp(-lg) : 0.0)); };
    r = adaptive_quad(f, 0.0, X, o);
  } else {
    // y = x^nu removes the endpoint singularity: x^{nu-1} dx = dy/nu
    auto f = [&](double y) {
      double x = std::pow(y, 1.0 / nu);
      return Complex(std::exp(-c * x - 0.25 * alpha * x * x - lg) / nu);
    };
    r = adaptive_quad(f, 0.0, std::pow(X, nu), o);
  }
  return r.value.real() / (2.0 * std::sqrt(kPi * alpha));
}

}  // namespace ttbar::numkit
