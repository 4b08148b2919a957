#pragma once

#include <functional>

#include "ttbar/spectra/eval.hpp"

namespace ttbar::maass {

using spectra::EvalResult;
using spectra::ModulusPoint;

/// Function on the right half-plane.
using PlaneFunction = std::function<Complex(const ModulusPoint&)>;

/// Box truncation |m|, |n| <= M of a lattice sum.
struct LatticeCutoff {
  int M = 40;
  /// Real Eisenstein series: add the integral of the summand over the plane
  /// outside the box [-M-1/2, M+1/2]^2 (midpoint comparison). The reported
  /// tail is the size of that integral either way.
  bool continuum_correction = true;
};

/// Real Eisenstein series
///   E_s(delta) = sum_{(m,n) != 0} delta1^s / ((n - m delta2)^2 + (m delta1)^2)^s,
/// Re s > 1. Real s uses the vectorized lattice kernel.
EvalResult eisenstein_real(Complex s, const ModulusPoint& delta, const LatticeCutoff& cutoff = {});

/// Same function from its Fourier expansion in delta2 (K-Bessel terms), real
/// s > 1. delta is first moved into the fundamental domain.
EvalResult eisenstein_real_fourier(double s, const ModulusPoint& delta, double tol = 1e-15);

/// Representative of delta in |delta2| <= 1/2, |delta| >= 1, with the
/// factor |delta|^{-k} picked up by a weight-k real form on the way:
/// F(delta) = factor * F(reduced).
struct Reduction {
  ModulusPoint point;
  double factor = 1.0;
};
Reduction reduce_to_fundamental(const ModulusPoint& delta, double weight = 0.0);

/// Hyperbolic Laplacian Delta = -delta1^2 (d^2/d delta1^2 + d^2/d delta2^2)
/// from fourth-order five-point central differences along each axis.
/// Requires delta1 - 2h > 0.
Complex laplacian_fd(const PlaneFunction& F, const ModulusPoint& delta, double h = 1e-3);

/// e^{-Lambda alpha / 4} with Lambda = s(1-s).
struct FlowFactor {
  Complex Lambda;
  double alpha = 0.0;
  Complex factor;
};
FlowFactor flow_factor(Complex s, double alpha);
Complex maass_flow(Complex value, Complex s, double alpha);

/// Truncated holomorphic Eisenstein series sum (m + i n delta)^{-k}.
EvalResult eisenstein_holo(int k, const ModulusPoint& delta, const LatticeCutoff& cutoff = {});

/// Deformed holomorphic Eisenstein series: every lattice point with mn != 0
/// is replaced by the Gaussian average
///   (4 pi alpha)^{-1/2} int e^{-l^2/(4 alpha)} (l (-i m n delta)^{1/2} + m + i n delta)^{-k} dl
/// (Gauss-Hermite, l = 2 sqrt(alpha) t); axis points keep (m + i n delta)^{-k}.
/// Throws DomainError naming (m, n) when the integration path passes too
/// close to the pole.
EvalResult eisenstein_holo_deformed(int k, double alpha, const ModulusPoint& delta,
                                    const LatticeCutoff& cutoff = {}, int gh_order = 64);

/// Single lattice point of the deformed series (undeformed on the axes).
Complex deformed_lattice_term(int k, double alpha, int m, int n, const ModulusPoint& delta, int gh_order = 64);

/// Relative residuals |E(1/delta) - i^k delta^k E(delta)| / |E(delta)| and
/// |E(delta + i) - E(delta)| / |E(delta)| of the deformed series.
struct SymmetryResiduals {
  double s = 0.0;
  double t = 0.0;
};
SymmetryResiduals holo_eisenstein_residuals(int k, double alpha, const ModulusPoint& delta,
                                            const LatticeCutoff& cutoff = {}, int gh_order = 64);

}  // namespace ttbar::maass
