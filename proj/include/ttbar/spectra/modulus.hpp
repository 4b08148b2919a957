#pragma once

#include "ttbar/error.hpp"

namespace ttbar::spectra {

/// Point delta = delta1 + i delta2 of the right half-plane; q = exp(-2 pi delta).
struct ModulusPoint {
  double d1 = 1.0;
  double d2 = 0.0;

  ModulusPoint() = default;
  ModulusPoint(double re, double im = 0.0) : d1(re), d2(im) {
    require_finite(re, "delta1");
    require_finite(im, "delta2");
    if (!(re > 0.0)) throw DomainError("modulus point needs Re delta > 0");
  }
  explicit ModulusPoint(Complex z) : ModulusPoint(z.real(), z.imag()) {}

  Complex value() const { return {d1, d2}; }
  /// Image under delta -> 1/delta.
  ModulusPoint s_image() const {
    double n = d1 * d1 + d2 * d2;
    return {d1 / n, -d2 / n};
  }
  /// Image under delta -> delta + i.
  ModulusPoint t_image() const { return {d1, d2 + 1.0}; }
};

}  // namespace ttbar::spectra
