#include "ttbar/numkit/summation.hpp"

#include <limits>
#include <string>

namespace ttbar::numkit {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

thread_local PrecisionMode g_default = PrecisionMode::binary64;

void neumaier(double& sum, double& comp, double x) {
  double t = sum + x;
  if (std::abs(sum) >= std::abs(x))
    comp += (sum - t) + x;
  else
    comp += (x - t) + sum;
  sum = t;
}
}  // namespace

const char* to_string(PrecisionMode mode) {
  return mode == PrecisionMode::double_double ? "double-double" : "binary64";
}

PrecisionMode precision_from_string(const std::string& name) {
  if (name == "binary64" || name == "double") return PrecisionMode::binary64;
  if (name == "double-double" || name == "dd") return PrecisionMode::double_double;
  throw ConfigError("unknown precision mode '" + name + "'");
}

PrecisionMode default_precision() { return g_default; }

void set_default_precision(PrecisionMode mode) { g_default = mode; }

void CompensatedSum::add(Complex term) {
  if (!is_finite(term))
    throw NonFiniteError("non-finite term at index " + std::to_string(count_), count_);
  if (mode_ == PrecisionMode::double_double) {
    dd_re_ += DoubleDouble(term.real());
    dd_im_ += DoubleDouble(term.imag());
  } else {
    neumaier(sum_re_, comp_re_, term.real());
    neumaier(sum_im_, comp_im_, term.imag());
  }
  abs_sum_ += std::abs(term);
  ++count_;
}

Complex CompensatedSum::value() const {
  if (mode_ == PrecisionMode::double_double) return {dd_re_.value(), dd_im_.value()};
  return {sum_re_ + comp_re_, sum_im_ + comp_im_};
}

double CompensatedSum::rounding_estimate() const {
  double n = static_cast<double>(count_);
  double inner = mode_ == PrecisionMode::double_double ? 4.0 * n * kEps * kEps * kEps
                                                       : 4.0 * n * kEps * kEps;
  return kEps * std::abs(value()) + inner * abs_sum_;
}

SumResult compensated_sum(std::span<const Complex> terms, PrecisionMode mode) {
  CompensatedSum acc(mode);
  for (Complex t : terms) acc.add(t);
  return {acc.value(), acc.rounding_estimate()};
}

}  // namespace ttbar::numkit
