#pragma once

#include <stdexcept>

namespace flare_lqt {

// Base class for all library errors; the CLI maps subclasses onto exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid physical parameters or malformed/inconsistent configuration.
struct ConfigError : Error {
  using Error::Error;
};

// The flare constraint system has no root in the admissible bracket.
struct NoRootError : Error {
  using Error::Error;
};

// Integration failure: step budget exhausted, step underflow, or a
// non-finite right-hand side.
struct IntegratorError : Error {
  using Error::Error;
};

// Gain solve failed (Riccati blow-up, or an integrator failure underneath).
struct SolverError : Error {
  using Error::Error;
};

// Closed-loop simulation failure.
struct SimError : Error {
  using Error::Error;
};

// Query outside a stored time span or horizon.
struct OutOfSpanError : Error {
  using Error::Error;
};

}  // namespace flare_lqt
