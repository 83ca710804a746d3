#pragma once

#include <stdexcept>
#include <string>

namespace folnerlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad spec text, invalid parameters,
/// invalid family/group pairing. The CLI maps this to exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class DescriptorMismatch : public Error {
 public:
  using Error::Error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold at runtime
/// (unbounded observable, non-indicator observable, nonpositive mean, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DegeneratePerturbation : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class MetricUnavailable : public Error {
 public:
  using Error::Error;
};

class CommutativityFailure : public Error {
 public:
  using Error::Error;
};

/// R^d does not split as ker(I - T) (+) range(I - T).
class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

class PowerBoundViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace folnerlab
