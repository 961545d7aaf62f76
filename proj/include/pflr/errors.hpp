#ifndef PFLR_ERRORS_HPP
#define PFLR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pflr {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions between arguments.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Argument outside its mathematical domain (e.g. probability not in (0,1)).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration: incompatible sizes, empty candidate sets, bad flags.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed input data. Carries a 1-based line number when parsing files.
class DataError : public Error {
public:
  explicit DataError(const std::string& msg, long line = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

/// Numerical failure (non-PSD input, degenerate fit, divergence).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// A matrix required to be invertible is numerically singular.
class SingularMatrixError : public NumericalError {
public:
  explicit SingularMatrixError(const std::string& matrix_name)
      : NumericalError("matrix " + matrix_name + " is numerically singular"),
        name_(matrix_name) {}
  const std::string& matrix_name() const { return name_; }

private:
  std::string name_;
};

}  // namespace pflr

#endif  // PFLR_ERRORS_HPP
