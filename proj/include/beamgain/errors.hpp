#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace beamgain {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (angle out of range,
/// zero weight vector, empty input, non-finite entries).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tabulated element pattern or fixture file could not be ingested.
class IngestionError : public Error {
 public:
  using Error::Error;
};

/// Total-power matrix is numerically indefinite for the given geometry.
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

/// Cholesky-type factorization hit a non-positive pivot.
class FactorizationError : public Error {
 public:
  FactorizationError(std::size_t pivot, double value);

  std::size_t pivot_index() const noexcept { return pivot_; }
  double pivot_value() const noexcept { return value_; }

 private:
  std::size_t pivot_;
  double value_;
};

/// Numerical failure inside an iterative routine (e.g. a secular-equation
/// bracket that does not change sign).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Dimensions of operands do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid or unreadable run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace beamgain
