#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace infsup {

/// Caller passed an argument outside the documented domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a representation invariant (e.g. NaN/Inf entries).
class InvalidInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Base for failures that stem from the numerics rather than from bad usage.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A leading principal minor (scalar LU) or leading block submatrix (block
/// LU) is singular to working precision.
///
/// For scalar factorizations `index()` is the 1-based size j of the minor
/// M|_{j x j}; for block factorizations it is the 0-based block index k of
/// M[k].
class SingularMinorError : public NumericalError {
 public:
  SingularMinorError(std::size_t index, bool block, const std::string& what)
      : NumericalError(what), index_(index), block_(block) {}

  std::size_t index() const noexcept { return index_; }
  bool is_block_index() const noexcept { return block_; }

 private:
  std::size_t index_;
  bool block_;
};

class NotSpdError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NestingViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoContractionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepSolveError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace infsup
