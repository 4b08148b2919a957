#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ttbar/mellin/mellin.hpp"
#include "ttbar/numkit/special.hpp"
#include "ttbar/spectra/seed.hpp"

using namespace ttbar;
using namespace ttbar::mellin;

namespace {
constexpr double kPi = std::numbers::pi;

const HoloSeed& theta() {
  static const HoloSeed s = spectra::builtin_holo_seed("theta3");
  return s;
}
const HoloSeed& eta24() {
  static const HoloSeed s = spectra::builtin_holo_seed("eta24");
  return s;
}
}  // namespace

TEST_CASE("termwise Mellin transform") {
  HoloSeed t = spectra::without_constant_term(theta());
  CHECK(std::abs(mellin_seed(t, 1.0).R - kPi / 3) < 1e-8);
  HoloSeed one = spectra::single_term_seed(1.0, 1.0, 0.0);
  CHECK(std::abs(mellin_seed(one, 2.0).R - 1.0 / (4 * kPi * kPi)) < 1e-16);
  CHECK_THROWS_AS(mellin_seed(t, 0.5), DomainError);
  CHECK_THROWS_AS(mellin_seed(theta(), 2.0), DomainError);
  // truncated seed without a tail model past its convergence region
  CHECK_THROWS_AS(mellin_seed(eta24(), 7.0), ConvergenceError);
}

TEST_CASE("folded Mellin transform") {
  HoloSeed t = spectra::without_constant_term(theta());
  CHECK(std::abs(mellin_fold(theta(), 2.0).R - mellin_seed(t, 2.0).R) < 1e-8);
  for (Complex s : {Complex(1.5), Complex(2.5, 1.0), Complex(3.0, -2.0), Complex(0.8, 0.5), Complex(4.0)}) {
    MellinValue a = mellin_fold(theta(), s), b = mellin_seed(t, s);
    CHECK(std::abs(a.R - b.R) < 1e-12 + a.error + b.error);
  }
  for (Complex s : {Complex(13.0), Complex(14.0, 2.0), Complex(15.5), Complex(12.5, -1.0), Complex(16.0, 3.0)}) {
    MellinValue a = mellin_fold(eta24(), s), b = mellin_seed(eta24(), s);
    CHECK(std::abs(a.R - b.R) < 1e-12 * std::abs(b.R) + a.error + b.error);
  }
  Complex s(0.25, 3.0);
  CHECK(std::abs(mellin_fold(theta(), s).R - mellin_fold(theta(), 0.5 - s).R) < 1e-10);
  // weight-k form e^{-pi(d + 1/d)} d^{-k/2}: transform 2 K_{s-k/2}(2 pi), K_{-nu} = K_nu
  double k = 3.0;
  RealEvaluator F = [k](double d) { return Complex(std::exp(-kPi * (d + 1 / d)) * std::pow(d, -k / 2)); };
  for (double sr : {0.7, 2.0, 4.5})
    CHECK(std::abs(mellin_quad(F, k, sr).R - 2 * std::cyl_bessel_k(std::abs(sr - k / 2), 2 * kPi)) < 1e-14);
  // phi(s) = (2 pi)^s / Gamma(s) R(s) with the two routes
  Complex s2(2.2, 0.7);
  Complex phi = dirichlet_phi(t, s2).R;
  Complex viaR = std::exp(s2 * std::log(2 * kPi)) / numkit::gamma_complex(s2) * mellin_fold(theta(), s2).R;
  CHECK(std::abs(phi - viaR) < 1e-12 * std::abs(phi));
}

TEST_CASE("multiplier") {
  Complex s(0.25, 3.0);
  MultiplierValue a = I_alpha(0.5, s, 0.3, MultiplierRoute::quadrature);
  MultiplierValue b = I_alpha(0.5, 0.5 - s, 0.3, MultiplierRoute::quadrature);
  CHECK(std::abs(a.I - b.I) < 1e-8);
  for (double al : {0.2, 0.5}) {
    MultiplierValue q = I_alpha(0.5, 1.2, al, MultiplierRoute::quadrature);
    MultiplierValue c = I_alpha(0.5, 1.2, al, MultiplierRoute::closedform);
    CHECK(std::abs(q.I - c.I) < 1e-7);
  }
  // frozen from a 20-digit evaluation of the same integral
  CHECK(I_alpha(0.5, 1.2, 0.2, MultiplierRoute::quadrature).I.real() ==
        doctest::Approx(1.6391683410305467236).epsilon(1e-12));
  double lim = std::pow(2.0, 0.5);
  double d1 = std::abs(I_alpha(0.5, 1.2, 1e-3).I - lim);
  double d2 = std::abs(I_alpha(0.5, 1.2, 2e-3).I - lim);
  CHECK(d1 < 2e-2);
  CHECK(d2 / d1 == doctest::Approx(2.0).epsilon(0.02));
  CHECK(I_alpha(12.0, 13.0, 0.2).route == MultiplierRoute::quadrature);
  CHECK(I_alpha(0.5, 1.2, 0.2).route == MultiplierRoute::closedform);
  CHECK(I_alpha(0.5, 1.2, 0.01).route == MultiplierRoute::quadrature);
  CHECK_THROWS_AS(I_alpha(12.0, 13.0, 0.2, MultiplierRoute::closedform), DomainError);
  CHECK_THROWS_AS(I_alpha(0.5, 1.2, 0.01, MultiplierRoute::closedform), DomainError);
  CHECK_THROWS_AS(I_alpha(0.5, 1.2, 0.0), DomainError);
}

TEST_CASE("product identity") {
  CHECK(product_identity(eta24(), 0.2, 13.0).residual < 1e-5);
  CHECK(product_identity(theta(), 0.3, 1.2).residual < 1e-5);
  for (Complex s : {Complex(0.8, 2.0), Complex(2.0, -1.0)}) CHECK(product_identity(theta(), 0.1, s).residual < 1e-5);
  CHECK_THROWS_AS(deformed_mellin(spectra::builtin_holo_seed("eta-inverse"), 0.1, 2.0), DomainError);
}

TEST_CASE("zero inheritance") {
  Complex z = critical_zero(theta(), 7.0, 7.15);
  CHECK(z.real() == 0.25);
  CHECK(z.imag() == doctest::Approx(7.0673625708673).epsilon(1e-11));
  double r = std::abs(deformed_mellin(theta(), 0.1, z).R) / std::abs(deformed_mellin(theta(), 0.1, z + 0.2).R);
  CHECK(r < 1e-3);
  CHECK_THROWS_AS(critical_zero(theta(), 7.1, 7.2), DomainError);
}

TEST_CASE("fixed-beta Dirichlet series") {
  HoloSeed one = spectra::single_term_seed(1.7, 2.0, 0.5);
  double beta = 0.3;
  Complex s(1.4, 0.6);
  double S = std::sqrt(1 + 4 * beta * 1.7);
  double lb = (S - 1) / (2 * beta);
  Complex expect = 2.0 * std::pow(1 + S, 0.5) / S * std::exp(-s * std::log(lb));
  CHECK(std::abs(dirichlet_beta(one, beta, s).value - expect) < 1e-13 * std::abs(expect));
  // beta -> 0 (unit normalization) reproduces the truncated Dirichlet series at first order
  HoloSeed t = spectra::without_constant_term(theta());
  Complex s2(2.0);
  Complex phi = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) phi += t.a[j] * std::pow(t.lambda[j], -s2);
  double e1 = std::abs(dirichlet_beta(t, 1e-6, s2, 0, deform::Normalization::unit).value - phi);
  double e2 = std::abs(dirichlet_beta(t, 2e-6, s2, 0, deform::Normalization::unit).value - phi);
  CHECK(e2 / e1 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::abs(dirichlet_beta(t, 0.0, s2, 0, deform::Normalization::raw).value - std::pow(2.0, 0.5) * phi) <
        1e-13 * std::abs(phi));
  // reflection s -> k - s is lost at fixed beta (both sides converge absolutely for eta24 at s = 5, 7)
  DirichletValue a = dirichlet_beta(eta24(), 0.2, 5.0), b = dirichlet_beta(eta24(), 0.2, 7.0);
  CHECK(a.error < 1e-3 * std::abs(a.value));
  CHECK(b.error < 1e-3 * std::abs(b.value));
  Complex ra = completed_beta(eta24(), 0.2, 5.0), rb = completed_beta(eta24(), 0.2, 7.0);
  CHECK(std::abs(ra - rb) > 1e-3 * std::abs(ra));
  CHECK_THROWS_AS(dirichlet_beta(t, -0.1, s2), DomainError);
  CHECK_THROWS_AS(dirichlet_beta(theta(), 0.1, s2), DomainError);
}
