#pragma once

#include <stdexcept>
#include <string>

namespace qspectral {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold for the given input
/// (singular operator, point on the spectrum, inseparable spectral sets...).
class MathError : public Error {
 public:
  using Error::Error;
};

class SingularError : public MathError {
 public:
  SingularError(const std::string& what, double sigma_min)
      : MathError(what), sigma_min_(sigma_min) {}
  double sigma_min() const noexcept { return sigma_min_; }

 private:
  double sigma_min_;
};

class QuadratureError : public MathError {
 public:
  QuadratureError(const std::string& what, double last_delta)
      : MathError(what), last_delta_(last_delta) {}
  double last_delta() const noexcept { return last_delta_; }

 private:
  double last_delta_;
};

/// Malformed input document or unreadable file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Operands of incompatible dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qspectral
