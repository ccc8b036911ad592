#pragma once

//! Exception taxonomy. Every throwing operation in the library names one of
//! these; callers can catch duodiv::Error to handle all of them.

#include <stdexcept>
#include <string>

namespace duodiv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Argument lies outside a generator's domain, a conjugate's gradient range,
//! or too close to a boundary for finite differences.
struct DomainError : Error {
  using Error::Error;
};

//! A duo operation was asked to run on a pair that fails the F1 >= F2
//! (resp. F2 >= F1) dominance precondition. Construct the pair unchecked to
//! explore the (possibly negative) values anyway.
struct DominanceError : Error {
  using Error::Error;
};

//! An iterative solve (conjugate inversion, moment inversion) did not reach
//! its tolerance within the iteration cap.
struct ConvergenceError : Error {
  using Error::Error;
};

//! Skew parameter outside (0,1).
struct AlphaError : Error {
  using Error::Error;
};

//! Point outside a distribution's support in strict evaluation mode.
struct SupportError : Error {
  using Error::Error;
};

//! Source parameter outside its legal range (lambda <= 0, p outside (0,1), ...).
struct ParamError : Error {
  using Error::Error;
};

//! Operation requires two members of the same family (and same support).
struct FamilyMismatchError : Error {
  using Error::Error;
};

//! Ordered pair of families has no registered cross-family closed form.
struct UnsupportedPairError : Error {
  using Error::Error;
};

//! Supports are not nested and not comparable, or the pair has no shared
//! sufficient statistic, so the nested-family machinery does not apply.
struct NestingError : Error {
  using Error::Error;
};

//! Truncation window so far in the tail that its mass underflows to zero.
struct DegenerateError : Error {
  using Error::Error;
};

//! Numerical routine could not certify the requested tolerance within its
//! subdivision budget. Carries the best value and an honest error estimate so
//! callers may still use the result knowingly.
struct ToleranceError : Error {
  ToleranceError(const std::string& what, double value, double abs_error_estimate)
      : Error(what), value(value), abs_error_estimate(abs_error_estimate) {}

  double value;
  double abs_error_estimate;
};

}  // namespace duodiv
