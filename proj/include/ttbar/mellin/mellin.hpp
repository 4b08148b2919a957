#pragma once

#include <functional>
#include <string>

#include "ttbar/deform/holo.hpp"

namespace ttbar::mellin {

using spectra::HoloSeed;
using spectra::ModulusPoint;

enum class MellinRoute { termwise, quadrature };
const char* to_string(MellinRoute r);

struct MellinValue {
  Complex s;
  Complex R;
  MellinRoute route = MellinRoute::termwise;
  double error = 0.0;
};

/// Gamma(s) sum_j a_j (2 pi lambda_j)^{-s}; the tail past the stored terms
/// comes from the seed's DirichletTail model (Hurwitz zeta by Euler-Maclaurin)
/// or, without a model, is estimated from the last tenth of the terms.
/// Rejects lambda <= 0 and s outside the convergence half-plane of the model.
MellinValue mellin_seed(const HoloSeed& seed, Complex s, double tol = 1e-12);

/// sum_j a_j lambda_j^{-s} with the same tail handling.
MellinValue dirichlet_phi(const HoloSeed& seed, Complex s, double tol = 1e-12);

/// Real-axis evaluator of a weight-k form with F(1/d) = d^k F(d).
using RealEvaluator = std::function<Complex(double)>;

/// int_1^inf (d^{s-1} + d^{k-s-1}) G(d) dd + c (1/(s-k) - 1/s) for a form
/// F = G + c with constant c, passed as G so the subtraction is exact: the
/// Mellin transform of G continued by the functional equation.
MellinValue mellin_quad(const RealEvaluator& G, double k, Complex s, Complex c = 0.0, double tol = 1e-13);

/// Fold of the undeformed seed (constant from its lambda = 0 terms).
MellinValue mellin_fold(const HoloSeed& seed, Complex s, double tol = 1e-13);

enum class MultiplierRoute { quadrature, closedform, automatic };
MultiplierRoute multiplier_route_from_string(const std::string& name);
const char* to_string(MultiplierRoute r);

struct MultiplierValue {
  double k = 0.0;
  Complex s;
  double alpha = 0.0;
  Complex I;
  MultiplierRoute route = MultiplierRoute::quadrature;
  double error = 0.0;
};

/// Multiplier I^alpha(k, s) relating the Mellin transforms of the raw
/// deformed and undeformed forms.
///   quadrature: 2^{1-k} int e^{v(s-k/2)} e^{-(cosh v - 1)/(2 alpha)}
///               (1/2pi) int (i alpha t + cosh(v/2))^{1-k} e^{-alpha t^2} dt dv
///   closedform: 2^{1-k} alpha^{-s} U(s, 2s-k+1, 1/alpha)
/// automatic picks the closed form for 1/alpha <= closed_form_limit.
/// The closed form rejects integer 2s-k+1 and 1/alpha above the 1F1 cap.
struct MultiplierOptions {
  int gh_order = 96;
  double tol = 1e-13;
  double closed_form_limit = 10.0;
};
MultiplierValue I_alpha(double k, Complex s, double alpha, MultiplierRoute route = MultiplierRoute::automatic,
                        const MultiplierOptions& opts = {});

/// Mellin transform of the raw deformed series by the same fold; the
/// constant is 2^{1-k} times the seed's constant term.
MellinValue deformed_mellin(const HoloSeed& seed, double alpha, Complex s, double tol = 1e-13);

/// |R^alpha(s) - I^alpha(k, s) R^0(s)| / |R^0(s)|.
struct ProductCheck {
  Complex R0;
  Complex Ralpha;
  Complex I;
  double residual = 0.0;
};
ProductCheck product_identity(const HoloSeed& seed, double alpha, Complex s);

/// Fixed-beta Dirichlet series sum_{j <= Nmax} a_j P_j (lambda_{j,beta})^{-s},
/// lambda_beta = deform_exponent(lambda, beta), P_j = (1+S_j)^{1-k}/S_j with
/// S_j = sqrt(1 + 4 beta lambda_j) (raw) or ((1+S_j)/2)^{1-k}/S_j (unit).
/// error: summed magnitude of the last tenth of the retained terms.
struct DirichletValue {
  Complex value;
  double error = 0.0;
  long long terms = 0;
};
DirichletValue dirichlet_beta(const HoloSeed& seed, double beta, Complex s, long long Nmax = 0,
                              deform::Normalization n = deform::Normalization::raw);

/// Gamma(s) (2 pi)^{-s} times dirichlet_beta.
Complex completed_beta(const HoloSeed& seed, double beta, Complex s, long long Nmax = 0);

/// Zero of the undeformed transform on Re s = k/2, where R is real by
/// reflection; bisection on Re R(k/2 + i t) over [t_lo, t_hi].
Complex critical_zero(const HoloSeed& seed, double t_lo, double t_hi, double tol = 1e-12);

}  // namespace ttbar::mellin
