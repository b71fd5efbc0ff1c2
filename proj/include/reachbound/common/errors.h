#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace reachbound {

/// Polynomials over incompatible variable lists were combined.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Caller-supplied data is malformed (dimension mismatch, inverted interval,
/// empty sample set, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A polynomial has a term that does not lie in the requested basis.
class DegreeOverflowError : public InputError {
 public:
  using InputError::InputError;
};

/// A constraint identity produced a monomial not covered by its Gram basis.
/// This always indicates a bug in the degree bookkeeping.
class DegreeAccountingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested problem exceeds the supported SDP size.
class SizingError : public InputError {
 public:
  using InputError::InputError;
};

/// A problem specification violates one or more invariants.
class ValidationError : public InputError {
 public:
  explicit ValidationError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// Numerical integration produced a non-finite state.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// A solver result cannot be turned into a certificate.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reachbound
