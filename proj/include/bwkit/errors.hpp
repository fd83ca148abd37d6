#pragma once

#include <stdexcept>
#include <string>

namespace bwkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw input is too far from symmetric to be a symmetric matrix.
class AsymmetryError : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible shapes.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue lies below the PSD clamp threshold.
class NotPsdError : public Error {
 public:
  using Error::Error;
};

/// The smallest eigenvalue is not above pd_tolerance.
class NotPdError : public Error {
 public:
  using Error::Error;
};

/// An iterative linear-algebra kernel failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A constraint or objective references a variable the problem does not own.
class UnknownVariable : public Error {
 public:
  using Error::Error;
};

/// A convex set specification admits no PSD matrix.
class InfeasibleSetError : public Error {
 public:
  using Error::Error;
};

/// A projection subproblem has no finite minimum.
class UnboundedSubproblemError : public Error {
 public:
  using Error::Error;
};

/// The SDP backend did not return an optimal solution.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or argument.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace bwkit
