#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fischerlab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in polynomial rings of different dimension.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial expression; offset is the byte position of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Iterative numerics did not reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A mathematically guaranteed fact failed (singular homogeneous Fischer block,
/// failed reconstruction). Never a normal error path: seeing one means a bug.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace fischerlab
