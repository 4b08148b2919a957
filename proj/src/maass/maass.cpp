#include "ttbar/maass/maass.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ttbar/numkit/quadrature.hpp"
#include "ttbar/numkit/special.hpp"
#include "ttbar/numkit/summation.hpp"
#include "ttbar/simd/kernels.hpp"

namespace ttbar::maass {

namespace {

constexpr double kPi = std::numbers::pi;

void require_cutoff(const LatticeCutoff& c) {
  if (c.M < 1) throw ConfigError("lattice cutoff M must be >= 1");
}

// int over the plane outside [-L, L]^2 of Q(x, y)^{-s}, Q = (y - x d2)^2 + (x d1)^2,
// in polar form: (2s-2)^{-1} int q(theta)^{-s} rho(theta)^{2-2s} dtheta.
Complex box_complement_integral(Complex s, double d1, double d2, double L) {
  auto g = [&](double th) -> Complex {
    double c = std::cos(th), sn = std::sin(th);
    double q = (sn - c * d2) * (sn - c * d2) + c * c * d1 * d1;
    double rho = L / std::max(std::abs(c), std::abs(sn));
    return std::exp(-s * std::log(q) + (2.0 - 2.0 * s) * std::log(rho));
  };
  numkit::AdaptiveOptions o;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-13;
  Complex acc = 0.0;
  for (int j = 0; j < 8; ++j) acc += numkit::adaptive_quad(g, j * kPi / 4, (j + 1) * kPi / 4, o).value;
  return acc / (2.0 * s - 2.0);
}

Complex ipow_inv(Complex z, int k) {
  Complex base = 1.0 / z, r = 1.0;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) r *= base;
    base *= base;
  }
  return r;
}

void require_holo_weight(int k) {
  if (k < 4 || k % 2 != 0) throw DomainError("holomorphic Eisenstein weight must be even and >= 4");
}

double sigma(long long n, double e) {
  double acc = 0.0;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    acc += std::pow(static_cast<double>(d), e);
    long long o = n / d;
    if (o != d) acc += std::pow(static_cast<double>(o), e);
  }
  return acc;
}

Complex lattice_term(int k, double alpha, int m, int n, Complex d, const numkit::GaussRule& rule) {
  const Complex I(0.0, 1.0);
  Complex z = static_cast<double>(m) + I * static_cast<double>(n) * d;
  if (m == 0 || n == 0 || alpha == 0.0) return ipow_inv(z, k);
  Complex c = std::sqrt(-I * static_cast<double>(m) * static_cast<double>(n) * d);
  // distance of the path l -> z + l c from the pole at 0
  double dist = std::abs((z * std::conj(c)).imag()) / std::abs(c);
  if (dist < 1e-8 * std::abs(z))
    throw DomainError("deformed Eisenstein term (m, n) = (" + std::to_string(m) + ", " + std::to_string(n) +
                      ") has a pole on the integration path");
  const double ra = 2.0 * std::sqrt(alpha);
  Complex t = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) t += rule.weights[i] * ipow_inv(z + ra * rule.nodes[i] * c, k);
  return t / std::sqrt(kPi);
}

}  // namespace

Complex deformed_lattice_term(int k, double alpha, int m, int n, const ModulusPoint& delta, int gh_order) {
  require_holo_weight(k);
  if (m == 0 && n == 0) throw DomainError("lattice term (0, 0) is excluded");
  numkit::GaussRule rule;
  if (alpha > 0.0 && m != 0 && n != 0) rule = numkit::gauss_hermite(gh_order);
  return lattice_term(k, alpha, m, n, delta.value(), rule);
}

EvalResult eisenstein_real(Complex s, const ModulusPoint& delta, const LatticeCutoff& cutoff) {
  require_finite(s, "s");
  if (!(s.real() > 1.0)) throw DomainError("real Eisenstein series needs Re s > 1 (no analytic continuation)");
  require_cutoff(cutoff);
  const int M = cutoff.M;
  const double d1 = delta.d1, d2 = delta.d2;
  Complex sum;
  if (s.imag() == 0.0) {
    sum = simd::lattice_inverse_power_sum(M, d1, d2, s.real());
  } else {
    numkit::CompensatedSum acc;
    for (int m = -M; m <= M; ++m)
      for (int n = -M; n <= M; ++n) {
        if (m == 0 && n == 0) continue;
        double x = n - m * d2, y = m * d1;
        acc.add(std::exp(-s * std::log(x * x + y * y)));
      }
    sum = acc.value();
  }
  Complex scale = std::exp(s * std::log(d1));
  Complex tail = scale * box_complement_integral(s, d1, d2, M + 0.5);
  Complex value = scale * sum;
  if (cutoff.continuum_correction) value += tail;
  long long terms = static_cast<long long>(2 * M + 1) * (2 * M + 1) - 1;
  return {value, std::abs(tail), terms};
}

Reduction reduce_to_fundamental(const ModulusPoint& delta, double weight) {
  double d1 = delta.d1, d2 = delta.d2, factor = 1.0;
  for (int it = 0; it < 10000; ++it) {
    d2 -= std::round(d2);
    double n = d1 * d1 + d2 * d2;
    if (n >= 1.0 - 1e-15) return {ModulusPoint(d1, d2), factor};
    factor *= std::pow(n, -0.5 * weight);
    d1 /= n;
    d2 = -d2 / n;
  }
  throw ConvergenceError("reduction to the fundamental domain did not terminate", Complex(d1, d2), 0.0);
}

EvalResult eisenstein_real_fourier(double s, const ModulusPoint& delta, double tol) {
  require_finite(s, "s");
  if (!(s > 1.0)) throw DomainError("Fourier route needs real s > 1");
  Reduction r = reduce_to_fundamental(delta);
  const double y = r.point.d1, x = r.point.d2;
  const double nu = s - 0.5;
  double v = 2.0 * std::riemann_zeta(2.0 * s) * std::pow(y, s) +
             2.0 * std::sqrt(kPi) * std::tgamma(nu) * std::riemann_zeta(2.0 * s - 1.0) / std::tgamma(s) *
                 std::pow(y, 1.0 - s);
  const double c = 8.0 * std::pow(kPi, s) * std::sqrt(y) / std::tgamma(s);
  numkit::NeumaierSum acc;
  acc.add(v);
  double last = 0.0;
  long long n = 1;
  for (int quiet = 0; quiet < 2 && n < 100000; ++n) {
    double t = c * std::pow(static_cast<double>(n), nu) * sigma(n, 1.0 - 2.0 * s) *
               std::cyl_bessel_k(nu, 2.0 * kPi * n * y) * std::cos(2.0 * kPi * n * x);
    acc.add(t);
    last = std::abs(t);
    quiet = last < tol * std::abs(acc.value()) ? quiet + 1 : 0;
  }
  return {acc.value(), last, n};
}

Complex laplacian_fd(const PlaneFunction& F, const ModulusPoint& delta, double h) {
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be > 0");
  if (!(delta.d1 - 2.0 * h > 0.0)) throw DomainError("finite-difference stencil leaves the half-plane");
  const double x = delta.d1, y = delta.d2;
  auto f = [&](double a, double b) { return F(ModulusPoint(a, b)); };
  Complex c = f(x, y);
  Complex dxx = (-f(x + 2 * h, y) + 16.0 * f(x + h, y) - 30.0 * c + 16.0 * f(x - h, y) - f(x - 2 * h, y));
  Complex dyy = (-f(x, y + 2 * h) + 16.0 * f(x, y + h) - 30.0 * c + 16.0 * f(x, y - h) - f(x, y - 2 * h));
  return -x * x * (dxx + dyy) / (12.0 * h * h);
}

FlowFactor flow_factor(Complex s, double alpha) {
  require_finite(s, "s");
  require_finite(alpha, "alpha");
  Complex L = s * (1.0 - s);
  return {L, alpha, std::exp(-L * alpha / 4.0)};
}

Complex maass_flow(Complex value, Complex s, double alpha) { return flow_factor(s, alpha).factor * value; }

EvalResult eisenstein_holo(int k, const ModulusPoint& delta, const LatticeCutoff& cutoff) {
  return eisenstein_holo_deformed(k, 0.0, delta, cutoff);
}

EvalResult eisenstein_holo_deformed(int k, double alpha, const ModulusPoint& delta, const LatticeCutoff& cutoff,
                                    int gh_order) {
  require_holo_weight(k);
  require_cutoff(cutoff);
  require_finite(alpha, "alpha");
  if (alpha < 0.0) throw DomainError("alpha must be >= 0");
  const Complex d = delta.value();
  numkit::GaussRule rule;
  if (alpha > 0.0) rule = numkit::gauss_hermite(gh_order);
  const int M = cutoff.M;
  numkit::CompensatedSum acc;
  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n)
      if (m != 0 || n != 0) acc.add(lattice_term(k, alpha, m, n, d, rule));
  // size of the omitted tail, compared with the continuum |m + i n delta|^{-k}
  double tail = std::abs(box_complement_integral(0.5 * k, delta.d1, delta.d2, M + 0.5));
  long long terms = static_cast<long long>(2 * M + 1) * (2 * M + 1) - 1;
  return {acc.value(), tail, terms};
}

SymmetryResiduals holo_eisenstein_residuals(int k, double alpha, const ModulusPoint& delta,
                                            const LatticeCutoff& cutoff, int gh_order) {
  Complex f = eisenstein_holo_deformed(k, alpha, delta, cutoff, gh_order).value;
  Complex fs = eisenstein_holo_deformed(k, alpha, delta.s_image(), cutoff, gh_order).value;
  Complex ft = eisenstein_holo_deformed(k, alpha, delta.t_image(), cutoff, gh_order).value;
  Complex ik = std::pow(Complex(0.0, 1.0), k);
  Complex expect = ik * numkit::principal_power(delta.value(), static_cast<double>(k)) * f;
  double scale = std::abs(f);
  return {std::abs(fs - expect) / scale, std::abs(ft - f) / scale};
}

}  // namespace ttbar::maass
