#pragma once

#include <array>
#include <functional>
#include <limits>

#include "ttbar/spectra/modulus.hpp"
#include "ttbar/spectra/seed.hpp"

namespace ttbar::spectra {

struct EvalResult {
  Complex value;
  double tail = 0.0;  ///< truncation-error estimate (absolute)
  long long terms_used = 0;
};

/// Truncation control for exponentially decaying series. Shell magnitudes
/// (summed |term| over equal exponents) are fed in order; the tail beyond the
/// last shell is extrapolated geometrically from the decay of the envelope
/// over the last eight shells, and is only reported once that envelope decays.
class TailTracker {
public:
  void add_shell(double magnitude);
  /// Infinity until the series is visibly past its peak.
  double estimate() const;
  bool converged(double tol, double scale) const;
  long long shells() const { return count_; }

private:
  double estimate_raw() const;
  std::array<double, 8> last_{};
  long long count_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
};

/// Truncation tail of a real-seed sum from the decay of the lambda-binned
/// mass just below complete_below. magnitude(j) is |term j|.
double real_tail_estimate(const RealSeed& seed, const std::function<double(std::size_t)>& magnitude);

EvalResult eval_seed(const HoloSeed& seed, const ModulusPoint& delta, double tol = 1e-15);
EvalResult eval_seed(const RealSeed& seed, const ModulusPoint& delta, double tol = 1e-15);
EvalResult eval_seed(const Seed& seed, const ModulusPoint& delta, double tol = 1e-15);

}  // namespace ttbar::spectra
