#pragma once

#include <stdexcept>
#include <string>

namespace revfid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes that do not fit together (non-square input, mismatched dims).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input that is well-formed but fails a state/channel/distribution contract.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation evaluated outside the set where it is defined
/// (singular state, non-finite entry, support violation, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Minimum eigenvalue below the PSD tolerance.
class NotPsdError : public DomainError {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue, double tolerance)
      : DomainError(what), min_eigenvalue_(min_eigenvalue), tolerance_(tolerance) {}

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  double min_eigenvalue_;
  double tolerance_;
};

/// First argument of a geometric mean too close to singular. The caller must
/// opt into epsilon regularization explicitly.
class RegularizationRequired : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace revfid
