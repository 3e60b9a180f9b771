#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skl {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched or unsupported matrix shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// |det| fell below the working floor during inversion or normalization.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, double abs_det)
      : Error(what), abs_det(abs_det) {}
  double abs_det;
};

// A matrix required to be positive definite has a non-positive eigenvalue.
class DefinitenessError : public Error {
 public:
  DefinitenessError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue(eigenvalue) {}
  double eigenvalue;
};

// An iteration cap was reached before the convergence test passed.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Eigenvalues of a cross-ratio matrix violate the validity window.
class SpectralError : public Error {
 public:
  SpectralError(const std::string& what, double re, double im)
      : Error(what), re(re), im(im) {}
  double re;
  double im;
};

// A scalar argument is outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A structural precondition on the inputs does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Bad parameter combination (exponent signs, empty grids, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A magnitude left the representable range even in log space.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double log_magnitude)
      : Error(what), log_magnitude(log_magnitude) {}
  double log_magnitude;
};

// Malformed file content; `row` is the 1-based offending line.
class FileFormatError : public Error {
 public:
  FileFormatError(const std::string& what, std::size_t row)
      : Error(what), row(row) {}
  std::size_t row;
};

// An exact integer certification failed; carries the first bad entry.
class CertifyError : public Error {
 public:
  CertifyError(const std::string& what, int row, int col, long long defect)
      : Error(what), row(row), col(col), defect(defect) {}
  int row;
  int col;
  long long defect;
};

}  // namespace skl
