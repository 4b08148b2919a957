#include "ttbar/mellin/mellin.hpp"

#include <cmath>
#include <numbers>

#include "ttbar/numkit/quadrature.hpp"
#include "ttbar/numkit/special.hpp"
#include "ttbar/numkit/summation.hpp"

namespace ttbar::mellin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;

using numkit::principal_power;

// sum_{n >= 0} (n + a)^{-z}, Re z > 1, by Euler-Maclaurin at a (a >= 10 keeps
// the Bernoulli terms small for |z| up to a few dozen).
Complex hurwitz_zeta(Complex z, double a) {
  static constexpr double B[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
  Complex az = std::exp(-z * std::log(a));
  Complex v = a * az / (z - 1.0) + 0.5 * az;
  Complex rising = z;           // z (z+1) ... (z+2j-2)
  double fact = 2.0;            // (2j)!
  Complex pw = az / a;          // a^{-z-2j+1}
  for (int j = 1; j <= 7; ++j) {
    v += B[j - 1] / fact * rising * pw;
    rising *= (z + double(2 * j - 1)) * (z + double(2 * j));
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    pw /= a * a;
  }
  return v;
}

void require_positive_spectrum(const HoloSeed& seed) {
  for (double l : seed.lambda)
    if (!(l > 0.0))
      throw DomainError("seed '" + seed.name + "' has lambda <= 0; subtract those terms before a Mellin transform");
}

Complex constant_term(const HoloSeed& seed) {
  Complex c = 0.0;
  for (std::size_t j = 0; j < seed.size(); ++j)
    if (seed.lambda[j] == 0.0) c += seed.a[j];
  return c;
}

}  // namespace

const char* to_string(MellinRoute r) { return r == MellinRoute::termwise ? "termwise" : "quadrature"; }

MellinValue dirichlet_phi(const HoloSeed& seed, Complex s, double tol) {
  require_finite(s, "s");
  require_positive_spectrum(seed);
  const std::size_t N = seed.size();
  numkit::CompensatedSum acc;
  numkit::CompensatedSum last;
  const std::size_t decile = N - N / 10;
  for (std::size_t j = 0; j < N; ++j) {
    Complex t = seed.a[j] * std::exp(-s * std::log(seed.lambda[j]));
    acc.add(t);
    if (j >= decile) last.add(std::abs(t));
  }
  double error = acc.rounding_estimate();
  if (seed.tail) {
    const spectra::DirichletTail& m = *seed.tail;
    Complex z = m.power * s;
    if (!(z.real() > 1.0))
      throw DomainError("s is on or left of the convergence boundary Re s = " + std::to_string(1.0 / m.power) +
                        " of seed '" + seed.name + "'");
    acc.add(m.coeff * std::exp(-s * std::log(m.scale)) * hurwitz_zeta(z, static_cast<double>(N) + 1.0));
  } else if (seed.truncated) {
    double est = last.value().real();
    error += est;
    if (est > tol * std::abs(acc.value()))
      throw ConvergenceError("Dirichlet series of '" + seed.name + "' has not converged at the stored order",
                             acc.value(), est);
  }
  return {s, acc.value(), MellinRoute::termwise, error};
}

MellinValue mellin_seed(const HoloSeed& seed, Complex s, double tol) {
  MellinValue phi = dirichlet_phi(seed, s, tol);
  Complex g = numkit::gamma_complex(s) * std::exp(-s * std::log(2.0 * kPi));
  return {s, g * phi.R, MellinRoute::termwise, std::abs(g) * phi.error};
}

MellinValue mellin_quad(const RealEvaluator& G, double k, Complex s, Complex c, double tol) {
  require_finite(s, "s");
  if (std::abs(s) == 0.0 || std::abs(s - k) == 0.0) throw DomainError("Mellin transform has a pole at s = 0 and s = k");
  const Complex e1 = s - 1.0, e2 = k - s - 1.0;
  auto g = [&](double d) -> Complex {
    double L = std::log(d);
    return (std::exp(e1 * L) + std::exp(e2 * L)) * G(d);
  };
  numkit::AdaptiveOptions o;
  o.abs_tol = tol * (std::abs(G(1.0)) + std::abs(c));
  o.rel_tol = 0.0;
  numkit::QuadResult r = numkit::adaptive_quad(g, numkit::QuadDomain::half_line(1.0), o);
  Complex R = r.value + c * (1.0 / (s - k) - 1.0 / s);
  return {s, R, MellinRoute::quadrature, r.error};
}

MellinValue mellin_fold(const HoloSeed& seed, Complex s, double tol) {
  if (seed.delta() < 0.0) throw DomainError("fold needs a seed with Delta >= 0");
  HoloSeed g = spectra::without_constant_term(seed);
  RealEvaluator G = [&](double d) { return spectra::eval_seed(g, ModulusPoint(d), 1e-16).value; };
  return mellin_quad(G, seed.weight, s, constant_term(seed), tol);
}

MultiplierRoute multiplier_route_from_string(const std::string& name) {
  if (name == "quadrature") return MultiplierRoute::quadrature;
  if (name == "closedform" || name == "closed-form") return MultiplierRoute::closedform;
  if (name == "auto" || name == "automatic") return MultiplierRoute::automatic;
  throw ConfigError("unknown multiplier route '" + name + "'");
}

const char* to_string(MultiplierRoute r) {
  switch (r) {
    case MultiplierRoute::quadrature: return "quadrature";
    case MultiplierRoute::closedform: return "closedform";
    default: return "automatic";
  }
}

MultiplierValue I_alpha(double k, Complex s, double alpha, MultiplierRoute route, const MultiplierOptions& opts) {
  require_finite(s, "s");
  require_finite(k, "k");
  if (!(alpha > 0.0)) throw DomainError("multiplier needs alpha > 0");
  const Complex b = 2.0 * s - k + 1.0;
  if (route == MultiplierRoute::automatic) {
    bool integer_b = std::abs(b.imag()) < 1e-12 && std::abs(b.real() - std::round(b.real())) < 1e-8;
    route = (1.0 / alpha <= opts.closed_form_limit && !integer_b) ? MultiplierRoute::closedform
                                                                  : MultiplierRoute::quadrature;
  }
  const double norm = std::pow(2.0, 1.0 - k);
  MultiplierValue out{k, s, alpha, 0.0, route, 0.0};
  if (route == MultiplierRoute::closedform) {
    const double z = 1.0 / alpha;
    Complex U = numkit::tricomi_u(s, b, z);
    out.I = norm * std::exp(-s * std::log(alpha)) * U;
    // the connection formula cancels two terms of size ~e^z
    out.error = 8.0 * kEps * std::abs(out.I) * std::exp(z);
    return out;
  }
  auto J = [&](double c) { return numkit::gaussian_power_mean(c, alpha, k, opts.gh_order); };
  const Complex m = s - 0.5 * k;
  const double grow = std::abs(m.real()) + 0.5 * std::abs(1.0 - k);
  double V = 0.5;
  while ((std::cosh(V) - 1.0) / (2.0 * alpha) - grow * V < 45.0) V += 0.25;
  auto f = [&](double v) -> Complex {
    return std::exp(m * v - (std::cosh(v) - 1.0) / (2.0 * alpha)) * J(std::cosh(0.5 * v));
  };
  numkit::AdaptiveOptions o;
  o.abs_tol = opts.tol;
  o.rel_tol = opts.tol;
  numkit::QuadResult r = numkit::adaptive_quad(f, -V, V, o);
  out.I = norm * r.value;
  out.error = norm * r.error;
  return out;
}

MellinValue deformed_mellin(const HoloSeed& seed, double alpha, Complex s, double tol) {
  if (seed.delta() < 0.0) throw DomainError("fold needs a seed with Delta >= 0");
  deform::DeformParams p{alpha, deform::Normalization::raw};
  HoloSeed g = spectra::without_constant_term(seed);
  RealEvaluator G = [&](double d) { return deform::deform_eval(g, p, ModulusPoint(d), 1e-16).value; };
  Complex c = std::pow(2.0, 1.0 - seed.weight) * constant_term(seed);
  return mellin_quad(G, seed.weight, s, c, tol);
}

ProductCheck product_identity(const HoloSeed& seed, double alpha, Complex s) {
  ProductCheck c;
  c.R0 = mellin_fold(seed, s).R;
  c.Ralpha = deformed_mellin(seed, alpha, s).R;
  c.I = I_alpha(seed.weight, s, alpha).I;
  c.residual = std::abs(c.Ralpha - c.I * c.R0) / std::abs(c.R0);
  return c;
}

DirichletValue dirichlet_beta(const HoloSeed& seed, double beta, Complex s, long long Nmax,
                              deform::Normalization n) {
  require_finite(s, "s");
  require_finite(beta, "beta");
  if (beta < 0.0) throw DomainError("beta must be >= 0");
  require_positive_spectrum(seed);
  const long long N = Nmax > 0 ? std::min<long long>(Nmax, seed.size()) : static_cast<long long>(seed.size());
  const double k = seed.weight;
  numkit::CompensatedSum acc, last;
  const long long decile = N - N / 10;
  for (long long j = 0; j < N; ++j) {
    double lam = seed.lambda[j];
    double S = std::sqrt(1.0 + 4.0 * beta * lam);
    double base = n == deform::Normalization::raw ? 1.0 + S : 0.5 * (1.0 + S);
    double lb = deform::deform_exponent(lam, beta).real();
    Complex t = seed.a[j] * std::pow(base, 1.0 - k) / S * std::exp(-s * std::log(lb));
    acc.add(t);
    if (j >= decile) last.add(std::abs(t));
  }
  return {acc.value(), last.value().real() + acc.rounding_estimate(), N};
}

Complex completed_beta(const HoloSeed& seed, double beta, Complex s, long long Nmax) {
  return numkit::gamma_complex(s) * std::exp(-s * std::log(2.0 * kPi)) * dirichlet_beta(seed, beta, s, Nmax).value;
}

Complex critical_zero(const HoloSeed& seed, double t_lo, double t_hi, double tol) {
  const double sigma = 0.5 * seed.weight;
  auto f = [&](double t) { return mellin_fold(seed, Complex(sigma, t)).R.real(); };
  double a = t_lo, b = t_hi, fa = f(a), fb = f(b);
  if (fa * fb > 0.0) throw DomainError("no sign change of R on the critical line in the bracket");
  while (b - a > tol * std::max(1.0, std::abs(a))) {
    double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0.0) return {sigma, m};
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return {sigma, 0.5 * (a + b)};
}

}  // namespace ttbar::mellin
