#pragma once

#include <stdexcept>
#include <string>

namespace ncdef {

/// Base class for errors that stem from the mathematical input rather than
/// from misuse of the API (the CLI maps these to exit code 1).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularCurve : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A truncated computation did not stabilize below the configured ceiling.
class NoStabilization : public DomainError {
 public:
  NoStabilization(const std::string& what, int d_max)
      : DomainError(what + " (no stabilization below d_max = " + std::to_string(d_max) + ")"),
        d_max_(d_max) {}
  int d_max() const noexcept { return d_max_; }

 private:
  int d_max_;
};

/// An operator image left the requested degree truncation.
class TruncationEscape : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A cochain handed to a class-coordinate routine is not closed.
class NotCocycle : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised by the hull loop when no correction exists inside the
/// multiplication-operator ansatz after the relation ideal was enlarged.
class NoLiftPossible : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed structural input (dimension mismatch, bad schema, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ncdef
