#pragma once

#include <stdexcept>
#include <string>

namespace conetri {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch (non-square where square is required, length mismatch).
class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A point that was required to lie in a cone does not.
class MembershipError : public Error {
 public:
  using Error::Error;
};

// A proven property failed at runtime. Never expected to fire.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace conetri
