#include "ttbar/spectra/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ttbar/numkit/summation.hpp"
#include "ttbar/simd/kernels.hpp"

namespace ttbar::spectra {

namespace {
constexpr double kPi = std::numbers::pi;
}

void TailTracker::add_shell(double magnitude) {
  last_[count_ % 8] = magnitude;
  ++count_;
  best_ = std::min(best_, estimate_raw());
}

double TailTracker::estimate_raw() const {
  if (count_ < 8) return std::numeric_limits<double>::infinity();
  double recent = 0.0, older = 0.0;
  for (int i = 0; i < 4; ++i) {
    recent = std::max(recent, last_[(count_ - 1 - i) % 8]);
    older = std::max(older, last_[(count_ - 5 - i) % 8]);
  }
  if (recent == 0.0) return 0.0;
  if (older == 0.0) return std::numeric_limits<double>::infinity();
  double r = std::pow(recent / older, 0.25);
  if (!(r < 1.0)) return std::numeric_limits<double>::infinity();
  return recent * r / (1.0 - r);
}

double TailTracker::estimate() const { return best_; }

bool TailTracker::converged(double tol, double scale) const {
  double e = estimate();
  return e == 0.0 || e <= tol * scale;
}

double real_tail_estimate(const RealSeed& seed, const std::function<double(std::size_t)>& magnitude) {
  const double top = seed.complete_below;
  if (!std::isfinite(top)) return 0.0;
  const double w = std::max(1.0, top / 8.0);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = 0; j < seed.size(); ++j) {
    double l = seed.lambda[j];
    if (l >= top - 2.0 * w && l < top - w) b1 += magnitude(j);
    if (l >= top - w && l < top) b2 += magnitude(j);
  }
  if (b2 == 0.0) return 0.0;
  if (b1 == 0.0 || b2 >= b1) return std::numeric_limits<double>::infinity();
  double r = b2 / b1;
  return b2 * r / (1.0 - r);
}

EvalResult eval_seed(const HoloSeed& seed, const ModulusPoint& delta, double tol) {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be > 0");
  const Complex d = delta.value();
  numkit::CompensatedSum sum;
  TailTracker tail;
  for (std::size_t j = 0; j < seed.size(); ++j) {
    Complex t = seed.a[j] * std::exp(-2.0 * kPi * seed.lambda[j] * d);
    sum.add(t);
    tail.add_shell(std::abs(t));
    if (seed.lambda[j] > 0.0 && tail.converged(tol, std::abs(sum.value())))
      return {sum.value(), tail.estimate() + sum.rounding_estimate(), static_cast<long long>(j + 1)};
  }
  if (!seed.truncated) return {sum.value(), sum.rounding_estimate(), static_cast<long long>(seed.size())};
  throw ConvergenceError("seed '" + seed.name + "': tolerance not reached within the term budget",
                         sum.value(), tail.estimate());
}

EvalResult eval_seed(const RealSeed& seed, const ModulusPoint& delta, double tol) {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be > 0");
  const std::int32_t P = seed.max_spin();
  std::vector<double> cr(2 * P + 1), ci(2 * P + 1);
  for (std::int32_t p = -P; p <= P; ++p) {
    cr[p + P] = std::cos(2.0 * kPi * p * delta.d2);
    ci[p + P] = std::sin(2.0 * kPi * p * delta.d2);
  }
  std::vector<double> are(seed.size()), aim(seed.size());
  for (std::size_t j = 0; j < seed.size(); ++j) {
    are[j] = seed.a[j].real();
    aim[j] = seed.a[j].imag();
  }
  simd::SpectrumView view{seed.lambda.data(), seed.spin.data(), are.data(), aim.data(), seed.size()};
  simd::DeformSumArgs args;
  args.alpha = 0.0;
  args.delta1 = delta.d1;
  args.prefactor = false;
  args.cis_re = cr.data();
  args.cis_im = ci.data();
  args.spin_offset = P;
  Complex v = simd::deformed_sum(view, args);
  double tail = real_tail_estimate(seed, [&](std::size_t j) {
    return std::abs(seed.a[j]) * std::exp(-2.0 * kPi * seed.lambda[j] * delta.d1);
  });
  if (tail > tol * std::abs(v))
    throw ConvergenceError("seed '" + seed.name + "': tolerance not reached at the stored order", v, tail);
  return {v, tail, static_cast<long long>(seed.size())};
}

EvalResult eval_seed(const Seed& seed, const ModulusPoint& delta, double tol) {
  return std::visit([&](const auto& s) { return eval_seed(s, delta, tol); }, seed);
}

}  // namespace ttbar::spectra
