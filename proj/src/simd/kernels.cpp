#include <cmath>
#include <numbers>
#include <string>

#include "ttbar/numkit/summation.hpp"
#include "ttbar/simd/kernels.hpp"

namespace ttbar::simd {

namespace {

void check_view(const SpectrumView& t, const DeformSumArgs& a) {
  if (!(a.alpha >= 0.0)) throw DomainError("deformation strength must be >= 0");
  if (!(a.delta1 > 0.0)) throw DomainError("delta1 must be > 0");
  if (a.cis_re == nullptr) return;
  for (std::size_t j = 0; j < t.size; ++j) {
    if (t.spin[j] < -a.spin_offset || t.spin[j] > a.spin_offset)
      throw DomainError("spin " + std::to_string(t.spin[j]) + " outside the phase table");
  }
}

}  // namespace

namespace detail {

Complex deformed_sum_scalar(const SpectrumView& t, const DeformSumArgs& a) {
  const double u = 4.0 * std::numbers::pi * a.alpha * a.delta1;
  numkit::NeumaierSum re, im;
  for (std::size_t j = 0; j < t.size; ++j) {
    const double lam = t.lambda[j];
    const double up = u * t.spin[j];
    double S = 1.0, E;
    if (a.alpha > 0.0) {
      double w = 2.0 * u * lam + up * up;
      S = std::sqrt(1.0 + w);
      E = w / (2.0 * a.alpha * (1.0 + S));
    } else {
      E = 2.0 * std::numbers::pi * lam * a.delta1;
    }
    double mag = std::exp(-E);
    if (a.prefactor) {
      double base = 0.5 * (1.0 + S + a.lambda_coeff * u * lam);
      mag *= std::exp(a.weight_exp * std::log(base)) / S;
    }
    double cr = 1.0, ci = 0.0;
    if (a.cis_re != nullptr) {
      cr = a.cis_re[t.spin[j] + a.spin_offset];
      ci = a.cis_im[t.spin[j] + a.spin_offset];
    }
    double ar = t.a_re[j], ai = t.a_im != nullptr ? t.a_im[j] : 0.0;
    re.add(mag * (ar * cr - ai * ci));
    im.add(mag * (ar * ci + ai * cr));
  }
  return {re.value(), im.value()};
}

double lattice_sum_scalar(int M, double d1, double d2, double s) {
  numkit::NeumaierSum acc;
  for (int m = -M; m <= M; ++m) {
    for (int n = -M; n <= M; ++n) {
      if (m == 0 && n == 0) continue;
      double x = n - m * d2;
      double y = m * d1;
      acc.add(std::exp(-s * std::log(x * x + y * y)));
    }
  }
  return acc.value();
}

double compensated_sum_scalar(std::span<const double> x) {
  numkit::NeumaierSum acc;
  for (double v : x) acc.add(v);
  return acc.value();
}

void exp_scalar(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] < -708.0 ? 0.0 : std::exp(x[i]);
}

void log_scalar(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::log(x[i]);
}

}  // namespace detail

Complex deformed_sum(const SpectrumView& terms, const DeformSumArgs& args, Backend b) {
  check_view(terms, args);
#ifdef TTBAR_HAVE_AVX2
  if (b == Backend::avx2) return detail::deformed_sum_avx2(terms, args);
#endif
  (void)b;
  return detail::deformed_sum_scalar(terms, args);
}

double lattice_inverse_power_sum(int M, double delta1, double delta2, double s, Backend b) {
  if (M < 1) throw DomainError("lattice cutoff must be >= 1");
  if (!(delta1 > 0.0)) throw DomainError("delta1 must be > 0");
#ifdef TTBAR_HAVE_AVX2
  if (b == Backend::avx2) return detail::lattice_sum_avx2(M, delta1, delta2, s);
#endif
  (void)b;
  return detail::lattice_sum_scalar(M, delta1, delta2, s);
}

double compensated_sum_f64(std::span<const double> x, Backend b) {
#ifdef TTBAR_HAVE_AVX2
  if (b == Backend::avx2) return detail::compensated_sum_avx2(x);
#endif
  (void)b;
  return detail::compensated_sum_scalar(x);
}

void exp_array(std::span<const double> x, std::span<double> out, Backend b) {
  if (out.size() < x.size()) throw DomainError("exp_array: output too short");
#ifdef TTBAR_HAVE_AVX2
  if (b == Backend::avx2) return detail::exp_avx2(x, out);
#endif
  (void)b;
  detail::exp_scalar(x, out);
}

void log_array(std::span<const double> x, std::span<double> out, Backend b) {
  if (out.size() < x.size()) throw DomainError("log_array: output too short");
#ifdef TTBAR_HAVE_AVX2
  if (b == Backend::avx2) return detail::log_avx2(x, out);
#endif
  (void)b;
  detail::log_scalar(x, out);
}

}  // namespace ttbar::simd
