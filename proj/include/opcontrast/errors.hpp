#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opcontrast {

// Base of everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mathematically invalid input: the CLI maps these to exit code 1.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotPositive : public DomainError {
 public:
  using DomainError::DomainError;
};

// Raised when an operator falls under the relative singularity threshold
// and the requested formula needs an inverse.
class SingularMatrix : public DomainError {
 public:
  using DomainError::DomainError;
};

class ZeroOperator : public DomainError {
 public:
  using DomainError::DomainError;
};

// Dimension, shape or block-structure disagreement between operands.
class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonConvergence : public DomainError {
 public:
  using DomainError::DomainError;
};

class EmptyInput : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed text or binary input. Carries the byte offset where parsing
// stopped; the CLI maps these to exit code 2.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// File could not be opened or read; CLI exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace opcontrast
