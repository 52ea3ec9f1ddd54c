#pragma once

#include <stdexcept>
#include <string>

namespace pnscale {

// Base class for everything this library throws on a contract violation.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Input was expected to be Hermitian but is not, beyond rounding slack.
struct NotHermitian : Error {
  using Error::Error;
};

struct NotPositiveDefinite : Error {
  using Error::Error;
};

struct Singular : Error {
  using Error::Error;
};

// An instance violated a structural precondition (negative entry,
// identically zero data, mismatched marginal sums, ...).
struct InvalidInstance : Error {
  using Error::Error;
};

// A row or column of a nonnegative matrix instance has no positive entry.
struct ZeroLine : Error {
  using Error::Error;
};

// A scaling step needed strictly positive marginal weights.
struct DegenerateMarginal : Error {
  using Error::Error;
};

// A subspace pair fed to the scaling inequality does not annihilate the
// operator tuple.
struct NotInSA : Error {
  using Error::Error;
};

// The pairing trace sum_k tr(x A_k y A_k†) vanished, so its logarithm is
// undefined.
struct ZeroTrace : Error {
  using Error::Error;
};

// An objective oracle failed while a ray was being probed.
struct EvaluationFailure : Error {
  using Error::Error;
};

// A recession or membership query was given nothing to work with.
struct EmptyFamily : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace pnscale
