#pragma once

#include <stdexcept>
#include <string>

namespace epfp {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// A value violates a structural invariant (bad radius, empty normal, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// A point lies outside the domain it was required to be in.
struct DomainError : Error {
  using Error::Error;
};

/// The rejection sampler could not produce a feasible point within its cap.
struct SamplerError : Error {
  using Error::Error;
};

/// An inner solver exhausted its iteration budget.
struct SolverError : Error {
  using Error::Error;
};

/// A serialized spec failed to parse or validate.
struct SpecError : Error {
  using Error::Error;
};

}  // namespace epfp
