#pragma once

#include "ttbar/error.hpp"
#include "ttbar/numkit/summation.hpp"

namespace ttbar::numkit {

/// Gamma function for complex arguments. Lanczos approximation for
/// Re z >= 1/2, reflection below. Throws DomainError at the poles.
Complex gamma_complex(Complex z);

/// log Gamma(z) for Re z >= 1/2 (continuous branch along the real axis).
Complex log_gamma_complex(Complex z);

struct KummerOptions {
  double cap = 60.0;  ///< maximum |z| accepted
  double tol = 1e-16;
  int max_terms = 20000;
  PrecisionMode precision = PrecisionMode::binary64;
};

/// Confluent hypergeometric 1F1(a; b; z) by its power series; Re z < 0 goes
/// through the Kummer transformation e^z 1F1(b-a; b; -z).
Complex kummer_1f1(Complex a, Complex b, Complex z, const KummerOptions& opts = {});

/// Tricomi U(a, b, z) from the 1F1 connection formula; b must be non-integer.
Complex tricomi_u(Complex a, Complex b, Complex z, const KummerOptions& opts = {});

/// z^w on the principal branch (cut along the negative real axis; the sign
/// of a zero imaginary part selects the side). Throws DomainError for z = 0
/// with Re w <= 0.
Complex principal_power(Complex z, Complex w);

/// True when z lies on the negative real axis to within a relative 1e-15.
bool on_branch_cut(Complex z);

/// Principal square root that rejects arguments on the cut.
Complex checked_sqrt(Complex z, const char* what);

/// sqrt(1 + w) - 1 without cancellation for small |w|.
Complex sqrt1pm1(Complex w);

/// (1/2 pi) int (c + i alpha t)^{1-k} e^{-alpha t^2} dt for c > 0, alpha > 0.
/// k <= 1: Gauss-Hermite of the given order. k > 1: the power is written as a
/// Laplace integral, leaving
///   (4 pi alpha)^{-1/2} / Gamma(k-1) int_0^inf x^{k-2} e^{-c x - alpha x^2/4} dx,
/// integrated adaptively.
double gaussian_power_mean(double c, double alpha, double k, int gh_order = 96);

}  // namespace ttbar::numkit
