#pragma once

#include <stdexcept>
#include <string>

namespace lrcyc {

/// Base class for every failure raised by a computation (as opposed to usage
/// errors on the command line). The CLI maps these to exit code 1.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BackendMismatch : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class ShapeMismatch : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// An operation's documented precondition does not hold.
class PreconditionError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// d_out * d_in != 0 in homology_dimension.
class NotAComplex : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// A product that a partial trace must evaluate left span(J^p).
class OutsideIdeal : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// The data (A -> B, J, L) fails one of the admissibility conditions.
class AdmissibilityError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Malformed input files.
class ParseError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Bad command-line arguments or option values (exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lrcyc
