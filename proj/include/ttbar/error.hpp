#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace ttbar {

using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (poles, empty
/// admissible windows, arguments on a branch cut, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// An argument landed on the cut of a principal-branch root or power.
class BranchCutError : public DomainError {
public:
  BranchCutError(const std::string& what, Complex argument)
      : DomainError(what), argument_(argument) {}
  Complex argument() const noexcept { return argument_; }

private:
  Complex argument_;
};

/// A series or quadrature did not reach the requested tolerance within its
/// budget. Carries the best available value and its error estimate.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, Complex best, double estimate)
      : Error(what), best_(best), estimate_(estimate) {}
  Complex best_value() const noexcept { return best_; }
  double estimate() const noexcept { return estimate_; }

private:
  Complex best_;
  double estimate_;
};

/// A non-finite value reached an API boundary.
class NonFiniteError : public Error {
public:
  NonFiniteError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

/// Integer overflow in exact coefficient generation.
class OverflowError : public Error {
public:
  OverflowError(const std::string& what, long long at)
      : Error(what), at_(at) {}
  long long at() const noexcept { return at_; }

private:
  long long at_;
};

/// Malformed configuration or command line.
class ConfigError : public Error {
public:
  using Error::Error;
};

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* name) {
  if (!is_finite(z))
    throw NonFiniteError(std::string("non-finite argument: ") + name, 0);
}

inline void require_finite(double x, const char* name) {
  if (!std::isfinite(x))
    throw NonFiniteError(std::string("non-finite argument: ") + name, 0);
}

}  // namespace ttbar
