#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "ttbar/simd/kernels.hpp"

using namespace ttbar;
using namespace ttbar::simd;

namespace {

std::vector<Backend> backends() {
  std::vector<Backend> out{Backend::scalar};
  if (backend_available(Backend::avx2)) out.push_back(Backend::avx2);
  return out;
}

struct Spectrum {
  std::vector<double> lambda, a_re, a_im;
  std::vector<std::int32_t> spin;
  SpectrumView view() const {
    return {lambda.data(), spin.data(), a_re.data(), a_im.data(), lambda.size()};
  }
};

Spectrum random_spectrum(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Spectrum s;
  for (std::size_t j = 0; j < n; ++j) {
    s.lambda.push_back(-0.04 + 0.25 * j);
    s.spin.push_back(static_cast<std::int32_t>(j % 9) - 4);
    s.a_re.push_back(u(rng));
    s.a_im.push_back(u(rng));
  }
  return s;
}

}  // namespace

TEST_CASE("backend selection") {
  CHECK(backend_available(Backend::scalar));
  Backend before = active_backend();
  set_backend(Backend::scalar);
  CHECK(active_backend() == Backend::scalar);
  set_backend(before);
  CHECK(backend_from_string("avx2") == Backend::avx2);
  CHECK_THROWS_AS(backend_from_string("neon"), ConfigError);
}

TEST_CASE("vector exp and log agree with libm") {
  std::vector<double> x, y(2003), z(2003);
  for (int i = 0; i < 2003; ++i) x.push_back(-707.0 + i * 0.7);
  for (Backend b : backends()) {
    exp_array(x, y, b);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double ref = std::exp(x[i]);
      CHECK(std::abs(y[i] - ref) <= 4e-16 * ref);
    }
  }
  std::vector<double> p;
  for (int i = 0; i < 2003; ++i) p.push_back(std::ldexp(1.0 + 0.37 * (i % 7), i % 400 - 200));
  for (Backend b : backends()) {
    log_array(p, z, b);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(z[i] - std::log(p[i])) <= 4e-16 * std::max(1.0, std::abs(std::log(p[i]))));
  }
  std::vector<double> deep{-800.0, -709.0, -708.5, 0.0};
  std::vector<double> out(4);
  for (Backend b : backends()) {
    exp_array(deep, out, b);
    CHECK(out[0] == 0.0);
    CHECK(out[3] == 1.0);
  }
}

TEST_CASE("compensated sum backends agree") {
  std::vector<double> x{1.0};
  for (int i = 0; i < 10001; ++i) x.push_back(1e-16);
  for (Backend b : backends()) CHECK(std::abs(compensated_sum_f64(x, b) - (1.0 + 1.0001e-12)) < 1e-15);
}

TEST_CASE("deformed sum backends agree") {
  for (std::size_t n : {1u, 3u, 4u, 37u, 1000u}) {
    Spectrum s = random_spectrum(n, 11 + n);
    std::vector<double> cr, ci;
    const double d2 = 0.3;
    for (int p = -4; p <= 4; ++p) {
      cr.push_back(std::cos(2 * std::numbers::pi * p * d2));
      ci.push_back(std::sin(2 * std::numbers::pi * p * d2));
    }
    for (double alpha : {0.0, 0.05, 1.0}) {
      for (bool weighted : {false, true}) {
        DeformSumArgs a;
        a.alpha = alpha;
        a.delta1 = 0.9;
        a.prefactor = weighted;
        a.weight_exp = 0.5;
        a.lambda_coeff = 1.0;
        a.cis_re = cr.data();
        a.cis_im = ci.data();
        a.spin_offset = 4;
        Complex ref = deformed_sum(s.view(), a, Backend::scalar);
        double scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) scale += std::hypot(s.a_re[j], s.a_im[j]);
        for (Backend b : backends()) {
          Complex v = deformed_sum(s.view(), a, b);
          CHECK(std::abs(v - ref) <= 1e-14 * std::max(1.0, scale));
        }
      }
    }
  }
}

TEST_CASE("deformed sum single term closed form") {
  Spectrum s;
  s.lambda = {1.5};
  s.spin = {2};
  s.a_re = {1.0};
  s.a_im = {0.0};
  DeformSumArgs a;
  a.alpha = 0.2;
  a.delta1 = 1.1;
  a.weight_exp = -0.25;
  a.lambda_coeff = 1.0;
  const double u = 4 * std::numbers::pi * a.alpha * a.delta1;
  const double S = std::sqrt(1 + 2 * u * 1.5 + (2 * u) * (2 * u));
  const double expect = std::pow((1 + S + u * 1.5) / 2, -0.25) / S * std::exp(-(S - 1) / (2 * a.alpha));
  for (Backend b : backends()) CHECK(std::abs(deformed_sum(s.view(), a, b).real() - expect) < 1e-15);
}

TEST_CASE("spin outside the phase table is rejected") {
  Spectrum s = random_spectrum(5, 3);
  std::vector<double> cr{1.0}, ci{0.0};
  DeformSumArgs a;
  a.cis_re = cr.data();
  a.cis_im = ci.data();
  CHECK_THROWS_AS(deformed_sum(s.view(), a, Backend::scalar), DomainError);
}

TEST_CASE("lattice sum backends agree") {
  for (int M : {1, 2, 7, 40}) {
    double ref = lattice_inverse_power_sum(M, 1.1, 0.2, 2.0, Backend::scalar);
    for (Backend b : backends())
      CHECK(std::abs(lattice_inverse_power_sum(M, 1.1, 0.2, 2.0, b) - ref) <= 1e-14 * ref);
  }
  // Square lattice, s = 2, M = 1: four unit vectors and four diagonals.
  CHECK(std::abs(lattice_inverse_power_sum(1, 1.0, 0.0, 2.0, Backend::scalar) - (4.0 + 4.0 / 4.0)) < 1e-15);
}
