#pragma once

#include "ttbar/numkit/quadrature.hpp"
#include "ttbar/spectra/eval.hpp"

namespace ttbar::deform {

using spectra::EvalResult;
using spectra::HoloSeed;
using spectra::ModulusPoint;

/// raw keeps the (1+S)^{1-k} prefactor; unit divides it by 2^{1-k} so that
/// alpha -> 0 reproduces the seed.
enum class Normalization { unit, raw };

Normalization normalization_from_string(const std::string& name);
const char* to_string(Normalization n);

struct DeformParams {
  double alpha = 0.0;
  Normalization normalization = Normalization::unit;
  void validate() const;
};

/// Per-exponent pieces of the deformed series (raw normalization):
/// S = sqrt(1 + 8 pi lambda alpha delta), prefactor = (1+S)^{1-k}/S,
/// exponent_factor = exp(-(S-1)/(2 alpha)).
struct TermDeformation {
  Complex S;
  Complex prefactor;
  Complex exponent_factor;
};

TermDeformation term_deformation(double lambda, double k, double alpha, Complex delta);

/// Deformed number x_beta = (sqrt(1+4 beta x) - 1)/(2 beta), evaluated as
/// 2x/(1 + sqrt(1+4 beta x)) so that beta = 0 gives x. Throws BranchCutError
/// if 1 + 4 beta x lies on the negative real axis.
Complex deform_exponent(Complex x, Complex beta);

/// Interval of admissible Re delta.
struct Window {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double x) const { return x > lo && x < hi; }
  bool bounded() const { return std::isfinite(hi); }
};

/// (0, inf) for Delta >= 0; (8 pi |Delta| alpha, 1/(8 pi |Delta| alpha)) for
/// Delta < 0. Throws DomainError when that window is empty.
Window admissible_domain(double Delta, double alpha);
Window admissible_domain(const HoloSeed& seed, double alpha);

/// Checks Re delta against the admissible window.
void require_admissible(const HoloSeed& seed, double alpha, const ModulusPoint& delta);

EvalResult deform_eval(const HoloSeed& seed, const DeformParams& params, const ModulusPoint& delta,
                       double tol = 1e-15);

/// Deformed Jacobi theta function, phase form:
///   sum_n e^{2 pi i n z delta^{1/2}} ((1+S_n)/2)^w / S_n e^{-(S_n-1)/(2 alpha)},
///   S_n = sqrt(1 + 4 pi alpha n^2 delta).
/// w = 1/2 gives the deformed theta3 at z = 0.
EvalResult deform_jacobi_theta(Complex z, double alpha, const ModulusPoint& delta, double weightexp,
                               double tol = 1e-16);

/// Companion (shifted) form that appears on the other side of the inversion:
///   sum_m ((1+S_m)/2)^w / S_m e^{-(S_m-1)/(2 alpha)},
///   S_m = sqrt(1 + 4 pi alpha (m delta^{1/2} - i z)^2).
/// At alpha = 0 this is e^{pi z^2} theta3(z delta^{1/2}; delta) summed over m.
EvalResult deform_jacobi_theta_shifted(Complex z, double alpha, const ModulusPoint& delta,
                                       double weightexp, double tol = 1e-16);

/// |theta^alpha(z; delta) - delta^{-1/2} shifted^alpha(i z; 1/delta)|.
double jacobi_inversion_residual(Complex z, double alpha, const ModulusPoint& delta,
                                 double weightexp = 0.5);

/// Quadrature controls for the integral-kernel representation.
struct KernelQuad {
  int gh_order = 96;      ///< Gauss-Hermite order of the inner t-integral
  double tol = 1e-14;     ///< relative tolerance of the outer integral
  double cutoff = 60.0;   ///< outer range: Gaussian exponent below -cutoff is dropped
};

/// Kernel e^{-(d'-d)^2/(4 alpha d d')} (1/2 pi) int (A - i alpha t)^{1-k} e^{-alpha t^2} dt
/// with A = (d + d')/(2 sqrt(d d')), for real d, d' > 0.
double kernel_value(double alpha, double k, double d, double dprime, int gh_order = 96);

/// Integral representation
///   C * int K(d, d') (d/d')^{-k/2} F0(d') dd'/d'
/// for real delta and a seed with Delta > 0.
EvalResult kernel_oracle(const HoloSeed& seed, double alpha, double delta, const KernelQuad& quad,
                         double calibration = 1.0);

/// Constant C fixed by matching the raw series of the one-term seed
/// (lambda = 1, a = 1) at delta = 1.
double calibrate_kernel(double alpha, double k, const KernelQuad& quad = {});

/// |F(1/delta) - delta^k F(delta)| / max(|F(delta)|, tiny), unit normalization.
double s_residual(const HoloSeed& seed, double alpha, const ModulusPoint& delta, double tol = 1e-15);

struct HagedornFit {
  double exponent = 0.0;
  double delta_c = 0.0;
  double residual_rms = 0.0;
  int points = 0;
};

/// Least-squares slope of log|F^alpha(delta)| against log(delta_c - delta)
/// for delta_c - delta spaced logarithmically in delta_c * [rel_lo, rel_hi],
/// with delta_c the upper end of the admissible window.
HagedornFit hagedorn_scan(const HoloSeed& seed, double alpha, double rel_lo = 1e-7,
                          double rel_hi = 1e-5, int points = 9);

/// Both sides of the partition-sum identity for 1/eta, written directly with
/// P(n) and e^{-S/(2 alpha)}:
///   L(d) = sum P(n) (1+S_n(d))^{3/2}/S_n(d) e^{-S_n(d)/(2 alpha)},
///   R(d) = d^{1/2} L(1/d),  S_n(d) = sqrt(1 + 8 pi alpha (n - 1/24) d).
struct PartitionSides {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_residual() const { return std::abs(lhs - rhs) / std::abs(lhs); }
};
PartitionSides partition_sum_sides(double alpha, double delta, long long terms = 6000);

}  // namespace ttbar::deform
