#pragma once

#include <stdexcept>
#include <string>

namespace catlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inputs outside a type's domain (non-PD covariance, infeasible channel, ...).
struct DomainError : Error {
  using Error::Error;
};

// A precondition the caller was responsible for does not hold.
struct ContractError : Error {
  using Error::Error;
};

// Parameter combination the requested method does not cover.
struct UnsupportedError : Error {
  using Error::Error;
};

// Two exact routes disagree, or a value left its admissible range.
struct ConsistencyError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace catlab
