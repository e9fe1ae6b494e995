#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mkit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: out-of-domain arguments, unit mismatches, bad config.
/// The CLI maps this family to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LookupError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Superfluid model used outside the temperature range where phonons are the
/// only thermal excitations.
class MediumInvalidError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure: blow-up, non-convergence that cannot be reported as a
/// flag, unresolved spectra. The CLI maps this family to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Collects non-fatal validity warnings. Pass a pointer to any operation that
/// accepts one; a null pointer discards warnings.
class Diagnostics {
 public:
  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool empty() const { return warnings_.empty(); }
  void clear() { warnings_.clear(); }

 private:
  std::vector<std::string> warnings_;
};

inline void warn(Diagnostics* diag, std::string message) {
  if (diag != nullptr) diag->warn(std::move(message));
}

}  // namespace mkit
