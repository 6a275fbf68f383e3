#pragma once

#include <stdexcept>
#include <string>

namespace heun {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Evaluation at (or arbitrarily close to) a pole.
class PoleError : public Error {
public:
  using Error::Error;
};

/// Differential-equation parameters violate a class constraint or a
/// parameter relation cannot be satisfied.
class ConstraintError : public Error {
public:
  using Error::Error;
};

/// No root branch yields admissible basis indices (mu > -1, nu > -1).
class NoSolutionError : public ConstraintError {
public:
  using ConstraintError::ConstraintError;
};

/// A recursion denominator vanished for the supplied indices.
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// A three-term recursion cannot be continued (zero leading coefficient).
class BreakdownError : public Error {
public:
  using Error::Error;
};

/// Polynomial-family parameters outside the regime an operation supports.
class InadmissibleError : public Error {
public:
  using Error::Error;
};

/// The operation is not defined for this combination of class and case.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// The request has more than one reading and none is preferred.
class AmbiguityError : public Error {
public:
  using Error::Error;
};

/// Numerical failure (non-convergence, non-finite intermediate values).
class NumericError : public Error {
public:
  using Error::Error;
};

} // namespace heun
