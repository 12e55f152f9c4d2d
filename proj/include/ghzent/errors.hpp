#pragma once

#include <stdexcept>
#include <string>

namespace ghzent {

// Base class for all library errors so callers can catch everything at once.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input vector contains an entry below -eps_pos.
struct NegativeProbability : Error {
  using Error::Error;
};

// Input vector sums farther than eps_norm from 1.
struct NotNormalized : Error {
  using Error::Error;
};

// Correlation coefficients do not correspond to a valid (PSD) state.
struct NotPositiveSemidefinite : Error {
  using Error::Error;
};

// A function was evaluated outside its mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

// Boundary-state weight parameter outside (0, 1/8] or inconsistent diagonal.
struct InvalidKappa : Error {
  using Error::Error;
};

// A structural precondition on the input state does not hold.
struct PreconditionViolated : Error {
  using Error::Error;
};

// Root selection for the reduced boundary equation found no admissible root.
struct NoValidRoot : Error {
  using Error::Error;
};

// An iterative routine failed to reach its required residual.
struct ConvergenceFailure : Error {
  using Error::Error;
};

// Malformed input document (bad JSON, wrong schema, non-finite numbers).
struct InputError : Error {
  using Error::Error;
};

}  // namespace ghzent
