#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "ttbar/spectra/coefficients.hpp"
#include "ttbar/spectra/eval.hpp"
#include "ttbar/spectra/seed.hpp"

using namespace ttbar;
using namespace ttbar::spectra;
using std::numbers::pi;

namespace {

// Partitions of n into parts of size at most m, by plain recursion.
long long count_partitions(int n, int m) {
  if (n == 0) return 1;
  if (m == 0) return 0;
  long long total = 0;
  for (int part = std::min(n, m); part >= 1; --part) total += count_partitions(n - part, part);
  return total;
}

// Direct truncated product q prod (1 - q^n)^24 in 64-bit arithmetic.
std::vector<long long> eta24_by_product(int N) {
  std::vector<long long> c(N, 0);
  c[0] = 1;
  for (int n = 1; n < N; ++n)
    for (int r = 0; r < 24; ++r)
      for (int d = N - 1; d >= n; --d) c[d] -= c[d - n];
  return c;  // c[i] is the coefficient of q^{i+1}
}

std::vector<ModulusPoint> grid10() {
  std::vector<ModulusPoint> g;
  for (int i = 0; i < 10; ++i) {
    double d1 = 0.5 + 1.5 * i / 9.0;
    double d2 = -0.5 + 1.0 * ((i * 7) % 10) / 9.0;
    g.emplace_back(d1, d2);
  }
  return g;
}

Complex eta_product(Complex d) {
  Complex q = std::exp(-2.0 * pi * d);
  Complex prod = 1.0, qn = 1.0;
  for (int n = 1; n < 400; ++n) {
    qn *= q;
    prod *= 1.0 - qn;
  }
  return std::exp(-2.0 * pi * d / 24.0) * prod;
}

}  // namespace

TEST_CASE("partition numbers") {
  auto p = partition_coeffs(10);
  CHECK(p[0] == 1);
  CHECK(p[5] == 7);
  CHECK(p[10] == 42);
  auto q = partition_coeffs(30);
  for (int n = 0; n <= 30; ++n) CHECK(static_cast<long long>(q[n]) == count_partitions(n, n));
  CHECK(to_string(partition_coeffs(100)[100]) == "190569292");
}

TEST_CASE("partition numbers overflow at the 128-bit limit") {
  CHECK_NOTHROW(partition_coeffs(1437));
  try {
    partition_coeffs(1438);
    FAIL("expected OverflowError");
  } catch (const OverflowError& e) {
    CHECK(e.at() == 1438);
  }
}

TEST_CASE("rounded partition numbers beyond the exact range") {
  auto exact = partition_coeffs(1437);
  auto approx = partition_coeffs_real(6000);
  for (int n : {10, 100, 500, 1000, 1437}) {
    double ex = static_cast<double>(exact[n]);
    CHECK(std::abs(approx[n] - ex) <= 1e-16 * ex);
  }
  // Big-integer reference values.
  CHECK(approx[2000] == doctest::Approx(4.720819175619414e+45).epsilon(1e-15));
  CHECK(approx[6000] == doctest::Approx(4.671727531970209e+81).epsilon(1e-15));
}

TEST_CASE("eta24 coefficients") {
  auto c = eta24_coeffs(40);
  CHECK(c[1] == 1);
  CHECK(c[2] == -24);
  CHECK(c[3] == 252);
  auto ref = eta24_by_product(40);
  for (int n = 1; n <= 40; ++n) CHECK(static_cast<long long>(c[n]) == ref[n - 1]);
  // Multiplicativity and the Hecke relation at primes.
  CHECK(c[6] == c[2] * c[3]);
  CHECK(c[35] == c[5] * c[7]);
  for (int p : {2, 3, 5}) {
    BigInt p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= p;
    CHECK(c[p * p] == c[p] * c[p] - p11);
  }
  CHECK_NOTHROW(eta24_coeffs(4096));
}

TEST_CASE("built-in seed data") {
  HoloSeed th = builtin_holo_seed("theta3");
  CHECK(th.weight == 0.5);
  CHECK(th.lambda[0] == 0.0);
  CHECK(th.a[0] == Complex(1.0));
  CHECK(th.lambda[3] == 4.5);
  CHECK(th.a[3] == Complex(2.0));
  HoloSeed ei = builtin_holo_seed("eta-inverse");
  CHECK(ei.weight == -0.5);
  CHECK(ei.lambda[0] == doctest::Approx(-1.0 / 24.0).epsilon(1e-15));
  CHECK(ei.a[0] == Complex(1.0));
  CHECK(ei.a[10] == Complex(42.0));
  HoloSeed e24 = builtin_holo_seed("eta24");
  CHECK(e24.weight == 12.0);
  CHECK(e24.lambda[0] == 1.0);
  CHECK(e24.a[1] == Complex(-24.0));
  CHECK_THROWS_AS(builtin_seed("nope"), ConfigError);
  CHECK_THROWS_AS(builtin_holo_seed("ising-Z"), ConfigError);
}

TEST_CASE("ising-Z seed structure") {
  RealSeed z = builtin_real_seed("ising-Z");
  CHECK(z.weight == 0.0);
  CHECK(z.delta() == doctest::Approx(-1.0 / 24.0).epsilon(1e-15));
  CHECK_NOTHROW(z.validate());
  // Leading terms: |chi_0|^2 gives q^{-1/48} qbar^{-1/48} with coefficient 1.
  CHECK(z.lambda[0] == doctest::Approx(-1.0 / 24.0));
  CHECK(z.spin[0] == 0);
  CHECK(z.a[0] == Complex(1.0));
  // Hermitian symmetry: every (lambda, p, a) has a partner (lambda, -p, conj a).
  for (std::size_t j = 0; j < z.size(); ++j) {
    bool found = false;
    for (std::size_t i = 0; i < z.size() && !found; ++i)
      found = z.lambda[i] == z.lambda[j] && z.spin[i] == -z.spin[j] && z.a[i] == std::conj(z.a[j]);
    CHECK(found);
    if (j > 300) break;
  }
}

TEST_CASE("ising-Z is the sum of squared character moduli") {
  ModulusPoint d(1.1, 0.25);
  Complex q = std::exp(-2.0 * pi * d.value());
  Complex qh = std::exp(-pi * d.value());
  Complex pp = 1.0, pm = 1.0, pi2 = 1.0;
  for (int n = 1; n < 200; ++n) {
    Complex a = std::pow(qh, 2 * n - 1);
    pp *= 1.0 + a;
    pm *= 1.0 - a;
    pi2 *= 1.0 + std::pow(q, n);
  }
  Complex pre = std::exp(-2.0 * pi * d.value() / -48.0 * -1.0);
  pre = std::exp(2.0 * pi * d.value() / 48.0);
  Complex chi0 = pre * 0.5 * (pp + pm), chih = pre * 0.5 * (pp - pm);
  Complex chis = std::exp(-2.0 * pi * d.value() / 24.0) * pi2;
  double ref = std::norm(chi0) + std::norm(chih) + std::norm(chis);
  EvalResult r = eval_seed(builtin_real_seed("ising-Z"), d, 1e-14);
  CHECK(std::abs(r.value.real() - ref) < 1e-13 * ref);
  CHECK(std::abs(r.value.imag()) < 1e-13 * ref);
}

TEST_CASE("theta3 values and inversion") {
  HoloSeed th = builtin_holo_seed("theta3");
  EvalResult r = eval_seed(th, ModulusPoint(1.0), 1e-15);
  CHECK(std::abs(r.value - 1.0864348112133080146) < 1e-9);
  ModulusPoint d(0.7);
  Complex lhs = eval_seed(th, d.s_image()).value;
  Complex rhs = std::sqrt(0.7) * eval_seed(th, d).value;
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("eta24 covariance between 1/2 and 2") {
  HoloSeed e = builtin_holo_seed("eta24");
  Complex a = eval_seed(e, ModulusPoint(0.5)).value;
  Complex b = std::pow(2.0, 12) * eval_seed(e, ModulusPoint(2.0)).value;
  CHECK(std::abs(a - b) < 1e-10 * std::abs(a));
  Complex at1 = eval_seed(e, ModulusPoint(1.0)).value;
  CHECK(std::abs(at1 - std::pow(eta_product(1.0), 24)) < 1e-12 * std::abs(at1));
}

TEST_CASE("built-in holomorphic seeds are S-covariant on a grid") {
  for (const char* name : {"theta3", "eta-inverse", "eta24"}) {
    HoloSeed s = builtin_holo_seed(name);
    for (const ModulusPoint& d : grid10()) {
      Complex f = eval_seed(s, d).value;
      Complex g = eval_seed(s, d.s_image()).value;
      Complex expect = std::exp(s.weight * std::log(d.value())) * f;
      CHECK_MESSAGE(std::abs(g - expect) < 1e-9 * std::abs(expect), name);
    }
  }
}

TEST_CASE("ising-Z is S- and T-invariant on a grid") {
  RealSeed z = builtin_real_seed("ising-Z");
  for (const ModulusPoint& d : grid10()) {
    Complex f = eval_seed(z, d).value;
    CHECK(std::abs(eval_seed(z, d.s_image()).value - f) < 1e-8 * std::abs(f));
    CHECK(std::abs(eval_seed(z, d.t_image()).value - f) < 1e-8 * std::abs(f));
  }
}

TEST_CASE("eta modulus powers") {
  for (int m : {1, 2}) {
    RealSeed s = eta_modulus_power_seed(m);
    CHECK_NOTHROW(s.validate());
    ModulusPoint d(0.9, 0.3);
    double ref = std::pow(std::norm(eta_product(d.value())), m);
    CHECK(std::abs(eval_seed(s, d).value.real() - ref) < 1e-13 * ref);
    double sv = eval_seed(s, d.s_image()).value.real();
    CHECK(std::abs(sv - std::pow(std::abs(d.value()), m) * ref) < 1e-12 * sv);
  }
}

TEST_CASE("tail estimates are sound") {
  for (const char* name : {"theta3", "eta-inverse", "eta24"}) {
    HoloSeed s = builtin_holo_seed(name);
    for (double d1 : {0.3, 1.0, 2.5}) {
      ModulusPoint d(d1, 0.2);
      EvalResult coarse = eval_seed(s, d, 1e-6);
      EvalResult fine = eval_seed(s, d, 1e-15);
      CHECK(fine.terms_used >= coarse.terms_used);
      CHECK(std::abs(fine.value - coarse.value) <= coarse.tail);
      CHECK(coarse.tail <= 1e-6 * std::abs(coarse.value));
    }
  }
}

TEST_CASE("term budget exhaustion raises with the best value") {
  SeedOptions o;
  o.terms = 20;
  HoloSeed s = builtin_holo_seed("eta-inverse", o);
  try {
    eval_seed(s, ModulusPoint(0.05), 1e-12);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::abs(e.best_value()) > 0.0);
  }
}

TEST_CASE("JSON seeds") {
  Seed s = seed_from_json(R"({"kind":"holo","name":"two","weight":2,"terms":[[1,1,0],[2,0.5,0]]})");
  const HoloSeed& h = std::get<HoloSeed>(s);
  CHECK(h.size() == 2);
  Complex v = eval_seed(h, ModulusPoint(1.0)).value;
  CHECK(std::abs(v - (std::exp(-2 * pi) + 0.5 * std::exp(-4 * pi))) < 1e-17);

  Seed r = seed_from_json(R"({"kind":"real","weight":0,"terms":[[1,1,1,2],[1,-1,1,-2],[0.5,0,3]]})");
  const RealSeed& rs = std::get<RealSeed>(r);
  CHECK(rs.lambda[0] == 0.5);
  Complex rv = eval_seed(rs, ModulusPoint(1.0, 0.1)).value;
  CHECK(std::abs(rv.imag()) < 1e-15);

  CHECK_THROWS_AS(seed_from_json("{"), ConfigError);
  CHECK_THROWS_AS(seed_from_json(R"({"kind":"holo","weight":1,"terms":[[2,1],[1,1]]})"), ConfigError);
  CHECK_THROWS_AS(seed_from_json(R"({"kind":"real","weight":0,"terms":[[1,1,1,2]]})"), ConfigError);
}

TEST_CASE("modulus points") {
  CHECK_THROWS_AS(ModulusPoint(0.0, 1.0), DomainError);
  ModulusPoint d(0.6, 0.8);
  CHECK(std::abs(d.s_image().value() - 1.0 / d.value()) < 1e-16);
  CHECK(d.t_image().d2 == doctest::Approx(1.8));
}
