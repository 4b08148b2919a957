#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ttbar/error.hpp"
#include "ttbar/simd/dispatch.hpp"

namespace ttbar::simd {

/// Structure-of-arrays view of a spectrum with integer spins. Holomorphic
/// spectra use spin 0 throughout.
struct SpectrumView {
  const double* lambda = nullptr;
  const std::int32_t* spin = nullptr;
  const double* a_re = nullptr;
  const double* a_im = nullptr;
  std::size_t size = 0;
};

/// Per-call parameters of the deformed exponential sum
///   sum_j a_j cis_j P_j exp(-E_j)
/// with u = 4 pi alpha delta1, S_j^2 = 1 + 2 u lambda_j + (u p_j)^2,
/// E_j = (S_j^2 - 1) / (2 alpha (1 + S_j))  (E_j = 2 pi lambda_j delta1 at alpha = 0),
/// P_j = ((1 + S_j + c u lambda_j) / 2)^w / S_j when the prefactor is enabled.
struct DeformSumArgs {
  double alpha = 0.0;
  double delta1 = 1.0;
  double weight_exp = 0.0;   ///< w
  double lambda_coeff = 0.0; ///< c
  bool prefactor = true;
  /// cis(2 pi p delta2) tabulated for p = -spin_offset .. spin_offset.
  const double* cis_re = nullptr;
  const double* cis_im = nullptr;
  std::int32_t spin_offset = 0;
};

Complex deformed_sum(const SpectrumView& terms, const DeformSumArgs& args, Backend b);
inline Complex deformed_sum(const SpectrumView& terms, const DeformSumArgs& args) {
  return deformed_sum(terms, args, active_backend());
}

/// sum over (m, n) in [-M, M]^2 \ {(0,0)} of ((n - m delta2)^2 + (m delta1)^2)^{-s}.
double lattice_inverse_power_sum(int M, double delta1, double delta2, double s, Backend b);
inline double lattice_inverse_power_sum(int M, double delta1, double delta2, double s) {
  return lattice_inverse_power_sum(M, delta1, delta2, s, active_backend());
}

/// Neumaier-compensated sum of a real array.
double compensated_sum_f64(std::span<const double> x, Backend b);

/// Elementwise exp / log. Inputs to exp below -708 flush to zero; log
/// requires positive normal inputs.
void exp_array(std::span<const double> x, std::span<double> out, Backend b);
void log_array(std::span<const double> x, std::span<double> out, Backend b);

namespace detail {
Complex deformed_sum_scalar(const SpectrumView&, const DeformSumArgs&);
double lattice_sum_scalar(int, double, double, double);
double compensated_sum_scalar(std::span<const double>);
void exp_scalar(std::span<const double>, std::span<double>);
void log_scalar(std::span<const double>, std::span<double>);
#ifdef TTBAR_HAVE_AVX2
Complex deformed_sum_avx2(const SpectrumView&, const DeformSumArgs&);
double lattice_sum_avx2(int, double, double, double);
double compensated_sum_avx2(std::span<const double>);
void exp_avx2(std::span<const double>, std::span<double>);
void log_avx2(std::span<const double>, std::span<double>);
#endif
}  // namespace detail

}  // namespace ttbar::simd
