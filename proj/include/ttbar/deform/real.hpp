#pragma once

#include "ttbar/deform/holo.hpp"
#include "ttbar/maass/maass.hpp"

namespace ttbar::deform {

using maass::PlaneFunction;
using spectra::RealSeed;

/// weighted: weight-k forms with |delta|^k covariance; invariant: k = 0 forms
/// deformed without prefactor.
enum class RealVariant { weighted, invariant };
RealVariant real_variant_from_string(const std::string& name);
const char* to_string(RealVariant v);

/// One term of the deformed real series (unit normalization):
/// S = sqrt(1 + 8 pi lambda alpha delta1 + (4 pi p alpha delta1)^2),
/// exponent = -(S-1)/(2 alpha), phase e^{2 pi i p delta2} applied separately.
/// prefactor: ((1 + S + 4 pi lambda alpha delta1)/2)^{1-k/2} / S (weighted), 1 (invariant).
struct RealTermDeformation {
  double S = 1.0;
  double prefactor = 1.0;
  double exponent = 0.0;
};
RealTermDeformation real_term_deformation(double lambda, int p, double k, double alpha, double delta1,
                                          RealVariant v);

Window admissible_domain(const RealSeed& seed, double alpha);

/// Sum of the deformed terms. raw multiplies the weighted variant by
/// 2^{1-k}; the invariant variant has no prefactor to normalize.
EvalResult deform_eval_real(const RealSeed& seed, double alpha, const ModulusPoint& delta, RealVariant v,
                            Normalization n = Normalization::unit, double tol = 1e-12);

/// |F(1/delta) - |delta|^k F(delta)| / |F(delta)| and |F(delta + i) - F(delta)| / |F(delta)|.
struct StResiduals {
  double s = 0.0;
  double t = 0.0;
};
StResiduals st_residuals(const RealSeed& seed, double alpha, const ModulusPoint& delta, RealVariant v,
                         double tol = 1e-12);

/// Undeformed seed as a function on the half-plane; points are first moved
/// into the fundamental domain using the seed's |delta|^k covariance.
PlaneFunction real_seed_function(const RealSeed& seed, double tol = 1e-14);

/// |delta - delta'|^2 / (4 alpha delta1 delta1'), the Gaussian exponent of
/// the kernel below.
double dgh_exponent(const ModulusPoint& d, const ModulusPoint& dp, double alpha);

/// Rectangle in (v, t) with delta1' = delta1 e^v and
/// delta2' = delta2 + 2 delta1 sqrt(alpha) e^{v/2} t, truncated where the
/// Gaussian factor falls below e^{-width^2/2}.
struct DghQuad {
  double width = 8.0;
  double tol = 1e-11;  ///< relative tolerance of each nested adaptive rule
};
struct DghResult {
  Complex value;
  double error = 0.0;  ///< quadrature estimate plus truncated Gaussian mass
  long long evaluations = 0;
};
/// (4 pi alpha)^{-1} int e^{-|delta - delta'|^2/(4 alpha delta1 delta1')} F(delta') d^2delta'/delta1'^2.
/// Throws ConvergenceError if the mass outside the rectangle exceeds tol.
DghResult dgh_kernel_oracle(const PlaneFunction& F, double alpha, const ModulusPoint& delta,
                            const DghQuad& quad = {});
/// The same integral of F = 1 (1 for an exactly normalized kernel).
double dgh_normalization(double alpha, const ModulusPoint& delta = ModulusPoint(1.0), const DghQuad& quad = {});

/// Small-alpha comparison of the kernel flow with d F/d alpha = -rate * Delta F.
struct HeatFlowCheck {
  /// |(F^alpha - F)/alpha - (-1/4) Delta F|
  double residual = 0.0;
  /// measured Re[(F^alpha - F)/alpha / (-Delta F)]; NaN when Delta F vanishes
  double rate = 0.0;
  Complex laplacian;
  Complex difference_quotient;
};
HeatFlowCheck heat_flow_residual(const PlaneFunction& F, double alpha, const ModulusPoint& delta, double h = 1e-3,
                                 const DghQuad& quad = {});

}  // namespace ttbar::deform
