#pragma once

#include <stdexcept>

namespace moran {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural or range constraint on an input was violated: bad vertex
// count, malformed edge list, unsatisfiable family constraints, ...
struct ConstraintError : Error {
  using Error::Error;
};

// The problem instance exceeds a hard size cap (e.g. the 2^n state table of
// the exact solver).
struct SizeCapError : Error {
  using Error::Error;
};

// The graph fails a validity requirement of the requested operation
// (typically: it is not connected).
struct GraphInvalidError : Error {
  using Error::Error;
};

// A numeric parameter lies outside the mathematical domain of the formula
// (e.g. fitness r <= 1 where a bound requires r > 1).
struct DomainError : Error {
  using Error::Error;
};

// An iterative solver failed to reach its tolerance within the sweep cap,
// or a Monte Carlo estimate has no completed runs to report.
struct ConvergenceError : Error {
  using Error::Error;
};

}  // namespace moran
