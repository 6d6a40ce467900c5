// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace udep {

/// Input violates a documented precondition (e.g. non-Hermitian, non-unitary).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Matrix/vector dimensions do not match.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Index outside its valid range.
struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Input lacks the structure required by a variant (symmetry, realness, blocks).
struct StructureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Iterative solver failed to converge within its sweep budget.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nearest-unitary projection of a (numerically) rank-deficient matrix.
struct DegenerateProjectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rotation-variant logarithm hit the -1 eigenvalue branch point.
struct BranchDegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed matrix text file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FormatCode {
  BadMagic,
  UnsupportedVersion,
  BadHeader,
  Truncated,
  TrailingData,
  BadSegment,
  IndexOverflow,
};

/// Malformed UDEP payload bytes; carries a distinct code per failure class.
class FormatError : public std::runtime_error {
 public:
  FormatError(FormatCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  FormatCode code() const { return code_; }

 private:
  FormatCode code_;
};

}  // namespace udep
