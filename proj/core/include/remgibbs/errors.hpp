#pragma once

#include <stdexcept>
#include <string>

namespace remgibbs {

/// Raised when an argument lies outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when the regime constants give a tail mass lambda_n >= 1, i.e. the
/// population is too small for the chosen exponent.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised when a brute-force request would exceed the memory guard.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace remgibbs
