#include "ttbar/deform/holo.hpp"

#include <cmath>
#include <numbers>

#include "ttbar/numkit/special.hpp"
#include "ttbar/numkit/summation.hpp"
#include "ttbar/spectra/coefficients.hpp"

namespace ttbar::deform {

namespace {

constexpr double kPi = std::numbers::pi;

using numkit::checked_sqrt;
using numkit::principal_power;

void require_alpha(double alpha) {
  require_finite(alpha, "alpha");
  if (alpha < 0.0) throw DomainError("deformation strength alpha must be >= 0");
}

struct HoloTerm {
  Complex value;
  Complex S;
};

// a * prefactor * exp(-(S-1)/(2 alpha)) with (S-1)/(2 alpha) written as
// 4 pi lambda delta / (1 + S), exact at alpha = 0.
HoloTerm deformed_term(double lambda, Complex a, double k, double alpha, Complex delta, bool unit) {
  Complex S = checked_sqrt(1.0 + 8.0 * kPi * lambda * alpha * delta, "1 + 8 pi lambda alpha delta");
  Complex E = 4.0 * kPi * lambda * delta / (1.0 + S);
  Complex base = unit ? 0.5 * (1.0 + S) : 1.0 + S;
  return {a * principal_power(base, 1.0 - k) / S * std::exp(-E), S};
}

Complex jacobi_term(Complex S, double alpha, double weightexp) {
  Complex E = (S * S - 1.0) / (2.0 * alpha * (1.0 + S));
  if (alpha == 0.0) E = 0.0;  // caller handles the undeformed exponent
  return principal_power(0.5 * (1.0 + S), weightexp) / S * std::exp(-E);
}

}  // namespace

Normalization normalization_from_string(const std::string& name) {
  if (name == "unit") return Normalization::unit;
  if (name == "raw") return Normalization::raw;
  throw ConfigError("unknown normalization '" + name + "'");
}

const char* to_string(Normalization n) { return n == Normalization::unit ? "unit" : "raw"; }

void DeformParams::validate() const { require_alpha(alpha); }

TermDeformation term_deformation(double lambda, double k, double alpha, Complex delta) {
  require_alpha(alpha);
  Complex S = checked_sqrt(1.0 + 8.0 * kPi * lambda * alpha * delta, "1 + 8 pi lambda alpha delta");
  Complex E = 4.0 * kPi * lambda * delta / (1.0 + S);
  return {S, principal_power(1.0 + S, 1.0 - k) / S, std::exp(-E)};
}

Complex deform_exponent(Complex x, Complex beta) {
  require_finite(x, "x");
  require_finite(beta, "beta");
  Complex arg = 1.0 + 4.0 * beta * x;
  Complex root = checked_sqrt(arg, "1 + 4 beta x");
  return 2.0 * x / (1.0 + root);
}

Window admissible_domain(double Delta, double alpha) {
  require_alpha(alpha);
  if (Delta >= 0.0 || alpha == 0.0) return {};
  double a = 8.0 * kPi * std::abs(Delta) * alpha;
  if (a >= 1.0)
    throw DomainError("admissible window is empty: 8 pi |Delta| alpha = " + std::to_string(a) + " >= 1");
  return {a, 1.0 / a};
}

Window admissible_domain(const HoloSeed& seed, double alpha) {
  return admissible_domain(seed.delta(), alpha);
}

void require_admissible(const HoloSeed& seed, double alpha, const ModulusPoint& delta) {
  Window w = admissible_domain(seed, alpha);
  if (!w.contains(delta.d1))
    throw DomainError("Re delta = " + std::to_string(delta.d1) + " outside the admissible window (" +
                      std::to_string(w.lo) + ", " + std::to_string(w.hi) + ") of seed '" + seed.name + "'");
}

EvalResult deform_eval(const HoloSeed& seed, const DeformParams& params, const ModulusPoint& delta,
                       double tol) {
  params.validate();
  if (!(tol > 0.0)) throw ConfigError("tolerance must be > 0");
  require_admissible(seed, params.alpha, delta);
  const bool unit = params.normalization == Normalization::unit;
  const Complex d = delta.value();
  numkit::CompensatedSum sum;
  spectra::TailTracker tail;
  for (std::size_t j = 0; j < seed.size(); ++j) {
    Complex t = deformed_term(seed.lambda[j], seed.a[j], seed.weight, params.alpha, d, unit).value;
    sum.add(t);
    tail.add_shell(std::abs(t));
    if (seed.lambda[j] > 0.0 && tail.converged(tol, std::abs(sum.value())))
      return {sum.value(), tail.estimate() + sum.rounding_estimate(), static_cast<long long>(j + 1)};
  }
  if (!seed.truncated) return {sum.value(), sum.rounding_estimate(), static_cast<long long>(seed.size())};
  throw ConvergenceError("deformed seed '" + seed.name + "': tolerance not reached within the term budget",
                         sum.value(), tail.estimate());
}

EvalResult deform_jacobi_theta(Complex z, double alpha, const ModulusPoint& delta, double weightexp,
                               double tol) {
  require_alpha(alpha);
  const Complex d = delta.value();
  const Complex rd = std::sqrt(d);
  numkit::CompensatedSum sum;
  spectra::TailTracker tail;
  for (long long n = 0; n < 100000; ++n) {
    double shell = 0.0;
    for (int sign : {1, -1}) {
      if (n == 0 && sign < 0) continue;
      double m = static_cast<double>(sign * n);
      Complex phase = std::exp(2.0 * kPi * Complex(0.0, 1.0) * m * z * rd);
      Complex t;
      if (alpha == 0.0) {
        t = phase * std::exp(-kPi * m * m * d);
      } else {
        Complex S = checked_sqrt(1.0 + 4.0 * kPi * alpha * m * m * d, "1 + 4 pi alpha n^2 delta");
        t = phase * jacobi_term(S, alpha, weightexp);
      }
      sum.add(t);
      shell += std::abs(t);
    }
    tail.add_shell(shell);
    if (n > 0 && tail.converged(tol, std::abs(sum.value())))
      return {sum.value(), tail.estimate() + sum.rounding_estimate(), 2 * n + 1};
  }
  throw ConvergenceError("deformed Jacobi theta did not converge", sum.value(), tail.estimate());
}

EvalResult deform_jacobi_theta_shifted(Complex z, double alpha, const ModulusPoint& delta,
                                       double weightexp, double tol) {
  require_alpha(alpha);
  const Complex rd = std::sqrt(delta.value());
  const Complex I(0.0, 1.0);
  numkit::CompensatedSum sum;
  spectra::TailTracker tail;
  for (long long n = 0; n < 100000; ++n) {
    double shell = 0.0;
    for (int sign : {1, -1}) {
      if (n == 0 && sign < 0) continue;
      Complex x = static_cast<double>(sign * n) * rd - I * z;
      Complex t;
      if (alpha == 0.0) {
        t = std::exp(-kPi * x * x);
      } else {
        Complex S = checked_sqrt(1.0 + 4.0 * kPi * alpha * x * x, "1 + 4 pi alpha (n delta^{1/2} - i z)^2");
        t = jacobi_term(S, alpha, weightexp);
      }
      sum.add(t);
      shell += std::abs(t);
    }
    tail.add_shell(shell);
    if (n > 0 && tail.converged(tol, std::abs(sum.value())))
      return {sum.value(), tail.estimate() + sum.rounding_estimate(), 2 * n + 1};
  }
  throw ConvergenceError("shifted Jacobi theta did not converge", sum.value(), tail.estimate());
}

double jacobi_inversion_residual(Complex z, double alpha, const ModulusPoint& delta, double weightexp) {
  Complex lhs = deform_jacobi_theta(z, alpha, delta, weightexp).value;
  Complex rhs = deform_jacobi_theta_shifted(Complex(0.0, 1.0) * z, alpha, delta.s_image(), weightexp).value /
                std::sqrt(delta.value());
  return std::abs(lhs - rhs);
}

namespace {

struct InnerKernel {
  double alpha;
  double k;

  int order;

  // (1/2 pi) int (c - i alpha t)^{1-k} e^{-alpha t^2} dt
  Complex operator()(double c) const { return numkit::gaussian_power_mean(c, alpha, k, order); }
};

InnerKernel make_inner(double alpha, double k, int order) {
  if (!(alpha > 0.0)) throw DomainError("kernel representation needs alpha > 0");
  return {alpha, k, order};
}

Complex seed_value(const HoloSeed& seed, double d) {
  if (seed.s_covariant && d < 1.0)
    return std::pow(d, -seed.weight) * spectra::eval_seed(seed, ModulusPoint(1.0 / d), 1e-16).value;
  return spectra::eval_seed(seed, ModulusPoint(d), 1e-16).value;
}

}  // namespace

double kernel_value(double alpha, double k, double d, double dprime, int gh_order) {
  if (!(d > 0.0 && dprime > 0.0)) throw DomainError("kernel arguments must be positive");
  InnerKernel inner = make_inner(alpha, k, gh_order);
  double A = (d + dprime) / (2.0 * std::sqrt(d * dprime));
  double g = std::exp(-(dprime - d) * (dprime - d) / (4.0 * alpha * d * dprime));
  return g * inner(A).real();
}

EvalResult kernel_oracle(const HoloSeed& seed, double alpha, double delta, const KernelQuad& quad,
                         double calibration) {
  if (!(seed.delta() > 0.0)) throw DomainError("kernel representation requires Delta > 0");
  if (!(delta > 0.0)) throw DomainError("kernel oracle needs real delta > 0");
  InnerKernel inner = make_inner(alpha, seed.weight, quad.gh_order);
  const double k = seed.weight;
  // delta' = delta e^v; the Gaussian factor becomes exp(-(cosh v - 1)/(2 alpha)).
  double V = 0.5;
  while ((std::cosh(V) - 1.0) / (2.0 * alpha) < quad.cutoff + 0.5 * std::abs(k) * V) V += 0.25;
  auto f = [&](double v) -> Complex {
    double g = std::exp(-(std::cosh(v) - 1.0) / (2.0 * alpha) + 0.5 * k * v);
    return g * inner(std::cosh(0.5 * v)) * seed_value(seed, delta * std::exp(v));
  };
  numkit::AdaptiveOptions o;
  o.abs_tol = 1e-300;
  o.rel_tol = quad.tol;
  numkit::QuadResult r = numkit::adaptive_quad(f, -V, V, o);
  return {calibration * r.value, std::abs(calibration) * r.error, r.evaluations};
}

double calibrate_kernel(double alpha, double k, const KernelQuad& quad) {
  HoloSeed one = spectra::single_term_seed(1.0, 1.0, k);
  DeformParams p{alpha, Normalization::raw};
  Complex series = deform_eval(one, p, ModulusPoint(1.0)).value;
  Complex oracle = kernel_oracle(one, alpha, 1.0, quad, 1.0).value;
  return (series / oracle).real();
}

double s_residual(const HoloSeed& seed, double alpha, const ModulusPoint& delta, double tol) {
  DeformParams p{alpha, Normalization::unit};
  require_admissible(seed, alpha, delta);
  require_admissible(seed, alpha, delta.s_image());
  Complex f = deform_eval(seed, p, delta, tol).value;
  Complex g = deform_eval(seed, p, delta.s_image(), tol).value;
  Complex expect = principal_power(delta.value(), seed.weight) * f;
  return std::abs(g - expect) / std::max(std::abs(f), 1e-300);
}

HagedornFit hagedorn_scan(const HoloSeed& seed, double alpha, double rel_lo, double rel_hi, int points) {
  if (!(seed.delta() < 0.0)) throw DomainError("Hagedorn scan needs a seed with Delta < 0");
  if (points < 3) throw ConfigError("Hagedorn scan needs at least 3 points");
  if (!(rel_lo > 0.0 && rel_hi > rel_lo && rel_hi < 1.0)) throw ConfigError("invalid Hagedorn fit window");
  if (rel_lo < 1e-12) throw DomainError("Hagedorn fit window too close to the singularity for binary64");
  Window w = admissible_domain(seed, alpha);
  HagedornFit fit;
  fit.delta_c = w.hi;
  fit.points = points;
  std::vector<double> xs, ys;
  DeformParams p{alpha, Normalization::unit};
  for (int i = 0; i < points; ++i) {
    double rel = rel_lo * std::pow(rel_hi / rel_lo, static_cast<double>(i) / (points - 1));
    double eps = w.hi * rel;
    Complex f = deform_eval(seed, p, ModulusPoint(w.hi - eps)).value;
    xs.push_back(std::log(eps));
    ys.push_back(std::log(std::abs(f)));
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < points; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= points;
  my /= points;
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < points; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.exponent = sxy / sxx;
  double rss = 0.0;
  for (int i = 0; i < points; ++i) {
    double r = ys[i] - (my + fit.exponent * (xs[i] - mx));
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / points);
  return fit;
}

PartitionSides partition_sum_sides(double alpha, double delta, long long terms) {
  if (!(alpha > 0.0)) throw DomainError("partition identity needs alpha > 0");
  Window w = admissible_domain(-1.0 / 24.0, alpha);
  if (!w.contains(delta)) throw DomainError("delta outside the window of the partition identity");
  std::vector<double> P = spectra::partition_coeffs_real(terms);
  auto side = [&](double d) {
    numkit::CompensatedSum sum;
    spectra::TailTracker tail;
    for (long long n = 0; n <= terms; ++n) {
      double S = std::sqrt(1.0 + 8.0 * kPi * alpha * (static_cast<double>(n) - 1.0 / 24.0) * d);
      double t = P[n] * std::pow(1.0 + S, 1.5) / S * std::exp(-S / (2.0 * alpha));
      sum.add(t);
      tail.add_shell(std::abs(t));
      if (n > 0 && tail.converged(1e-16, std::abs(sum.value()))) return sum.value().real();
    }
    throw ConvergenceError("partition sum did not converge", sum.value(), tail.estimate());
  };
  return {side(delta), std::sqrt(delta) * side(1.0 / delta)};
}

}  // namespace ttbar::deform
