#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ttbar/deform/holo.hpp"
#include "ttbar/spectra/seed.hpp"

using namespace ttbar;
using namespace ttbar::deform;
using spectra::ModulusPoint;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("deformed exponent matches the positive quadratic root") {
  CHECK(deform_exponent(2.0, 1.0).real() == doctest::Approx(1.0).epsilon(1e-15));
  double x = 0.7, b = 0.3;
  double root = (-1.0 + std::sqrt(1.0 + 4.0 * b * x)) / (2.0 * b);
  Complex y = deform_exponent(x, b);
  CHECK(std::abs(y - root) < 1e-15);
  CHECK(std::abs(b * y * y + y - x) < 1e-15);
  CHECK(deform_exponent(0.37, 0.0).real() == 0.37);
  // small beta: x - beta x^2 + 2 beta^2 x^3
  double bs = 1e-6;
  CHECK(std::abs(deform_exponent(x, bs).real() - (x - bs * x * x + 2 * bs * bs * x * x * x)) < 2e-16);
  CHECK_THROWS_AS(deform_exponent(1.0, -0.5), BranchCutError);
}

TEST_CASE("admissible windows") {
  auto eta = spectra::builtin_holo_seed("eta-inverse");
  Window w = admissible_domain(eta, 0.1);
  CHECK(w.lo == doctest::Approx(8 * kPi * 0.1 / 24).epsilon(1e-14));
  CHECK(w.lo == doctest::Approx(0.10472).epsilon(1e-4));
  CHECK(w.hi == doctest::Approx(9.5493).epsilon(1e-4));
  CHECK_THROWS_AS(admissible_domain(eta, 0.96), DomainError);
  CHECK_THROWS_AS(admissible_domain(eta, 1.0), DomainError);
  CHECK_FALSE(admissible_domain(1.0, 0.5).bounded());
  DeformParams p{0.1, Normalization::unit};
  CHECK_THROWS_AS(deform_eval(eta, p, ModulusPoint(0.05)), DomainError);
  CHECK_NOTHROW(deform_eval(eta, p, ModulusPoint(0.2)));
}

TEST_CASE("constant and single-term seeds") {
  for (double k : {0.5, 4.0, 12.0}) {
    auto c = spectra::single_term_seed(0.0, 1.0, k);
    DeformParams raw{0.3, Normalization::raw};
    CHECK(std::abs(deform_eval(c, raw, ModulusPoint(1.3, 0.2)).value - std::pow(2.0, 1 - k)) < 1e-15);
    DeformParams unit{0.3, Normalization::unit};
    CHECK(std::abs(deform_eval(c, unit, ModulusPoint(1.3, 0.2)).value - 1.0) < 1e-15);
  }
  // independent closed form for one term, lambda = 2, k = 4
  double lam = 2, k = 4, a = 0.25;
  Complex d(0.8, 0.3);
  Complex S = std::sqrt(1.0 + 8 * kPi * lam * a * d);
  Complex expect = std::pow(1.0 + S, 1 - k) / S * std::exp(-(S - 1.0) / (2 * a));
  auto s = spectra::single_term_seed(lam, 1.0, k);
  Complex got = deform_eval(s, {a, Normalization::raw}, ModulusPoint(0.8, 0.3)).value;
  CHECK(std::abs(got - expect) < 1e-14 * std::abs(expect));
}

TEST_CASE("undeformed limit and first-order slope") {
  auto th = spectra::builtin_holo_seed("theta3");
  ModulusPoint d(1.1, 0.1);
  Complex f0 = spectra::eval_seed(th, d).value;
  CHECK(std::abs(deform_eval(th, {0.0}, d).value - f0) < 1e-14);
  // d/d alpha at 0, one-sided second-order difference against the termwise derivative
  double h = 1e-5;
  Complex fp = deform_eval(th, {h}, d).value;
  Complex fm = deform_eval(th, {2 * h}, d).value;
  Complex slope_fd = (4.0 * fp - fm - 3.0 * f0) / (2.0 * h);
  Complex slope = 0.0;
  const Complex dd = d.value();
  for (std::size_t j = 0; j < th.size(); ++j) {
    double l = th.lambda[j];
    // unit term: ((1+S)/2)^{1-k}/S e^{-(S-1)/2a}, S = 1 + 4 pi l a d - 8 pi^2 l^2 a^2 d^2 + ...
    Complex dS = 4 * kPi * l * dd;
    Complex dE = 4.0 * kPi * kPi * l * l * dd * dd;  // derivative of -(S-1)/(2a) at a = 0
    Complex term = th.a[j] * std::exp(-2 * kPi * l * dd) * ((1 - th.weight) * dS / 2.0 - dS + dE);
    slope += term;
  }
  CHECK(std::abs(slope_fd - slope) < 1e-6 * std::abs(slope));
}

TEST_CASE("S-covariance of the deformed theta3 and eta24") {
  auto th = spectra::builtin_holo_seed("theta3");
  for (double d : {0.7, 1.0, 2.0}) CHECK(s_residual(th, 0.1, ModulusPoint(d)) < 1e-11);
  CHECK(s_residual(th, 0.1, ModulusPoint(0.9, 0.3)) < 1e-11);
  auto e24 = spectra::builtin_holo_seed("eta24");
  for (double d : {0.8, 1.25}) CHECK(s_residual(e24, 0.2, ModulusPoint(d)) < 1e-10);
  auto eta = spectra::builtin_holo_seed("eta-inverse");
  for (double d : {0.5, 1.0, 1.7}) CHECK(s_residual(eta, 0.1, ModulusPoint(d)) < 1e-9);
}

TEST_CASE("deformed Jacobi theta") {
  auto th = spectra::builtin_holo_seed("theta3");
  ModulusPoint d(1.1);
  Complex j0 = deform_jacobi_theta(0.0, 0.1, d, 0.5).value;
  Complex t = deform_eval(th, {0.1, Normalization::unit}, d).value;
  CHECK(std::abs(j0 - t) < 1e-13);
  CHECK(jacobi_inversion_residual(0.2, 0.1, d) < 1e-10);
  CHECK(jacobi_inversion_residual(Complex(0.1, 0.05), 0.2, ModulusPoint(0.9, 0.2)) < 1e-10);
  // alpha = 0: classical theta3(z delta^{1/2}; delta) inversion
  CHECK(jacobi_inversion_residual(0.3, 0.0, ModulusPoint(1.4)) < 1e-12);
}

TEST_CASE("kernel representation") {
  const double a = 0.3, k = 12;
  CHECK(kernel_value(a, k, 2.0, 0.7) == doctest::Approx(kernel_value(a, k, 0.7, 2.0)).epsilon(1e-14));
  double c = calibrate_kernel(a, k);
  CHECK(c == doctest::Approx(std::pow(2.0, 1 - k)).epsilon(1e-8));
  auto e24 = spectra::builtin_holo_seed("eta24");
  for (double d : {0.9, 1.3}) {
    Complex series = deform_eval(e24, {a, Normalization::raw}, ModulusPoint(d)).value;
    Complex oracle = kernel_oracle(e24, a, d, {}, c).value;
    CHECK(std::abs(series - oracle) < 1e-6 * std::abs(series));
  }
}

TEST_CASE("Hagedorn exponent of the deformed 1/eta") {
  auto eta = spectra::builtin_holo_seed("eta-inverse");
  HagedornFit fit = hagedorn_scan(eta, 0.1);
  CHECK(fit.delta_c == doctest::Approx(3.0 / (kPi * 0.1)).epsilon(1e-14));
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(0.1));
  CHECK_THROWS_AS(hagedorn_scan(eta, 0.1, 1e-14, 1e-5), DomainError);
  CHECK_THROWS_AS(hagedorn_scan(spectra::builtin_holo_seed("theta3"), 0.1), DomainError);
}

TEST_CASE("partition-sum identity") {
  for (double d : {1.0, 0.6, 1.9}) CHECK(partition_sum_sides(0.1, d).relative_residual() < 1e-10);
  CHECK_THROWS_AS(partition_sum_sides(0.1, 0.05), DomainError);
}
