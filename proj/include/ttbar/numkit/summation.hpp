#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "ttbar/error.hpp"
#include "ttbar/numkit/double_double.hpp"

namespace ttbar::numkit {

enum class PrecisionMode { binary64, double_double };

const char* to_string(PrecisionMode mode);
PrecisionMode precision_from_string(const std::string& name);

/// Mode picked up by default-constructed accumulators on the calling thread.
PrecisionMode default_precision();
void set_default_precision(PrecisionMode mode);

/// Sets the calling thread's default mode for its lifetime.
class PrecisionScope {
public:
  explicit PrecisionScope(PrecisionMode mode) : saved_(default_precision()) {
    set_default_precision(mode);
  }
  ~PrecisionScope() { set_default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
  PrecisionMode saved_;
};

/// Running compensated sum of complex terms. In binary64 mode the real and
/// imaginary parts each use Neumaier's variant of Kahan summation; in
/// double_double mode they are accumulated as DoubleDouble.
class CompensatedSum {
public:
  explicit CompensatedSum(PrecisionMode mode = default_precision())
      : mode_(mode) {}

  /// Adds one term. Non-finite terms throw NonFiniteError carrying the
  /// zero-based index of the term.
  void add(Complex term);
  CompensatedSum& operator+=(Complex term) {
    add(term);
    return *this;
  }

  Complex value() const;
  /// Bound on the accumulated rounding error of value().
  double rounding_estimate() const;

  std::size_t count() const { return count_; }
  double abs_sum() const { return abs_sum_; }
  PrecisionMode mode() const { return mode_; }

  /// Truncation tail attached by series evaluators.
  double tail_estimate() const { return tail_; }
  void set_tail_estimate(double tail) { tail_ = tail < 0.0 ? 0.0 : tail; }

private:
  PrecisionMode mode_;
  double sum_re_ = 0.0, sum_im_ = 0.0;
  double comp_re_ = 0.0, comp_im_ = 0.0;
  DoubleDouble dd_re_, dd_im_;
  std::size_t count_ = 0;
  double abs_sum_ = 0.0;
  double tail_ = 0.0;
};

struct SumResult {
  Complex value;
  double error = 0.0;
};

/// Compensated sum of an ordered sequence.
SumResult compensated_sum(std::span<const Complex> terms,
                          PrecisionMode mode = default_precision());

/// Plain real-valued Neumaier accumulator used by inner loops.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace ttbar::numkit
