#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "ttbar/deform/real.hpp"
#include "ttbar/spectra/seed.hpp"

using namespace ttbar;
using namespace ttbar::deform;
using spectra::ModulusPoint;

namespace {
constexpr double kPi = std::numbers::pi;

const spectra::RealSeed& ising() {
  static const spectra::RealSeed s = spectra::builtin_real_seed("ising-Z");
  return s;
}
}  // namespace

TEST_CASE("real term deformation") {
  RealTermDeformation a = real_term_deformation(1.5, 3, 2.0, 0.1, 0.8, RealVariant::weighted);
  RealTermDeformation b = real_term_deformation(1.5, -3, 2.0, 0.1, 0.8, RealVariant::weighted);
  CHECK(a.S == b.S);
  double u = 4 * kPi * 0.1 * 0.8;
  CHECK(a.S == doctest::Approx(std::sqrt(1 + 2 * u * 1.5 + 9 * u * u)).epsilon(1e-15));
  CHECK(a.exponent == doctest::Approx(-(a.S - 1) / 0.2).epsilon(1e-14));
  RealTermDeformation z = real_term_deformation(0.0, 0, 2.0, 0.1, 0.8, RealVariant::weighted);
  CHECK(z.S == 1.0);
  CHECK(z.prefactor == 1.0);
  CHECK(z.exponent == 0.0);
  // p = 0: S equals the holomorphic S at delta = delta1
  RealTermDeformation h = real_term_deformation(0.7, 0, 2.0, 0.1, 0.8, RealVariant::weighted);
  CHECK(h.S == doctest::Approx(term_deformation(0.7, 2.0, 0.1, 0.8).S.real()).epsilon(1e-15));
  CHECK(real_term_deformation(0.7, 2, 0.0, 0.1, 0.8, RealVariant::invariant).prefactor == 1.0);
}

TEST_CASE("weighted variant at p = 0 reduces to the holomorphic deformation of weight k - 1") {
  spectra::RealSeed r;
  r.name = "spinless";
  r.weight = 3.0;
  r.lambda = {0.5, 1.0, 2.5, 4.0};
  r.spin = {0, 0, 0, 0};
  r.a = {1.0, -0.5, 0.25, 2.0};
  r.complete_below = std::numeric_limits<double>::infinity();
  spectra::HoloSeed h;
  h.name = "holo";
  h.weight = r.weight - 1.0;
  h.lambda = r.lambda;
  h.a = r.a;
  for (double d2 : {0.0, 0.37}) {
    Complex re = deform_eval_real(r, 0.15, ModulusPoint(1.1, d2), RealVariant::weighted).value;
    Complex ho = deform_eval(h, {0.15, Normalization::unit}, ModulusPoint(1.1)).value;
    CHECK(std::abs(re - ho) < 1e-13 * std::abs(ho));
  }
}

TEST_CASE("Thm 2a invariance of the deformed Ising partition function") {
  for (double a : {0.02, 0.05}) {
    for (ModulusPoint d : {ModulusPoint(1.0, 0.3), ModulusPoint(0.9, 0.2), ModulusPoint(1.4, -0.45),
                           ModulusPoint(0.75, 0.1)}) {
      StResiduals r = st_residuals(ising(), a, d, RealVariant::invariant);
      CHECK(r.s < 1e-8);
      CHECK(r.t < 1e-10);
    }
  }
  CHECK_THROWS_AS(deform_eval_real(ising(), 0.05, ModulusPoint(0.03), RealVariant::invariant), DomainError);
}

TEST_CASE("weighted variant on |eta|^{2m}") {
  for (int m : {1, 2, 3}) {
    spectra::RealSeed e = spectra::eta_modulus_power_seed(m, 96);
    for (ModulusPoint d : {ModulusPoint(1.0, 0.3), ModulusPoint(0.9, 0.2)}) {
      StResiduals r = st_residuals(e, 0.05, d, RealVariant::weighted);
      CHECK(r.s < 1e-8);
      CHECK(r.t < 1e-12);
    }
  }
  CHECK_THROWS_AS(deform_eval_real(spectra::eta_modulus_power_seed(1), 0.05, ModulusPoint(1.0),
                                   RealVariant::invariant),
                  DomainError);
}

TEST_CASE("reality and small-alpha limit") {
  spectra::RealSeed e = spectra::eta_modulus_power_seed(2, 96);
  for (int i = 0; i < 10; ++i) {
    ModulusPoint d(0.8 + 0.07 * i, -0.5 + 0.1 * i);
    Complex v = deform_eval_real(e, 0.05, d, RealVariant::weighted).value;
    CHECK(std::abs(v.imag()) < 1e-12 * std::abs(v));
  }
  ModulusPoint d(1.1, 0.2);
  Complex f0 = spectra::eval_seed(e, d).value;
  double c = std::pow(2.0, 1.0 - e.weight);
  double r1 = std::abs(deform_eval_real(e, 1e-3, d, RealVariant::weighted, Normalization::raw).value - c * f0);
  double r2 = std::abs(deform_eval_real(e, 2e-3, d, RealVariant::weighted, Normalization::raw).value - c * f0);
  CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("kernel exponent is the hyperbolic-distance form") {
  ModulusPoint a(2.0, 0.4), b(0.8, -0.2);
  double x = dgh_exponent(a, b, 0.1);
  CHECK(std::abs(x - dgh_exponent(a.s_image(), b.s_image(), 0.1)) < 1e-12 * x);
  double dist = std::acosh(1.0 + std::norm(a.value() - b.value()) / (2.0 * a.d1 * b.d1));
  CHECK(x == doctest::Approx((std::cosh(dist) - 1.0) / (2.0 * 0.1)).epsilon(1e-13));
}

TEST_CASE("kernel normalization and oracle") {
  CHECK(std::abs(dgh_normalization(0.1) - 1.0) < 2e-3);
  CHECK(std::abs(dgh_normalization(0.1, ModulusPoint(0.7, 0.3)) - 1.0) < 1e-10);
  // a single real-form term against its closed form: the t-integral of a phase is Gaussian
  PlaneFunction term = [](const ModulusPoint& p) {
    return std::exp(Complex(-2 * kPi * 1.5 * p.d1, 2 * kPi * p.d2));
  };
  double a = 0.05;
  ModulusPoint d(1.0, 0.1);
  Complex got = dgh_kernel_oracle(term, a, d).value;
  double S = std::sqrt(1 + 8 * kPi * 1.5 * a + std::pow(4 * kPi * a, 2));
  Complex expect = std::exp(Complex(-(S - 1) / (2 * a), 2 * kPi * 0.1));
  CHECK(std::abs(got - expect) < 1e-9 * std::abs(expect));
  DghQuad narrow;
  narrow.width = 2.0;
  PlaneFunction one = [](const ModulusPoint&) { return Complex(1.0); };
  CHECK_THROWS_AS(dgh_kernel_oracle(one, 0.1, ModulusPoint(1.0), narrow), ConvergenceError);
}

TEST_CASE("kernel oracle against the deformed Ising series") {
  DghQuad q;
  q.tol = 1e-8;
  ModulusPoint d(1.0);
  Complex oracle = dgh_kernel_oracle(real_seed_function(ising()), 0.05, d, q).value;
  Complex series = deform_eval_real(ising(), 0.05, d, RealVariant::invariant).value;
  CHECK(std::abs(oracle - series) < 1e-4 * std::abs(series));
  CHECK(std::abs(oracle - series) < 1e-8 * std::abs(series));
}

TEST_CASE("small-alpha flow of the kernel") {
  PlaneFunction one = [](const ModulusPoint&) { return Complex(1.0); };
  HeatFlowCheck c = heat_flow_residual(one, 0.02, ModulusPoint(1.0));
  CHECK(c.residual < 1e-8);
  CHECK(std::isnan(c.rate));
  // the measured flow rate of delta1^s is 1: dF/dalpha = -Delta F
  PlaneFunction mono = [](const ModulusPoint& p) { return Complex(p.d1 * p.d1); };
  for (double a : {0.02, 0.01}) {
    HeatFlowCheck m = heat_flow_residual(mono, a, ModulusPoint(1.0));
    CHECK(m.laplacian.real() == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(m.rate == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK_THROWS_AS(heat_flow_residual(mono, 0.1, ModulusPoint(1.0)), ConfigError);
}
