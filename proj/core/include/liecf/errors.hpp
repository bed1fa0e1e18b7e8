#pragma once

#include <stdexcept>
#include <string>

namespace liecf {

/// Base class for all liecf errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a precondition (dimension mismatch, bad range, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A numerically computed value drifted outside its contract (off-algebra matrix, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A filter design step produced an unrealizable result (nonproper transfer function, ...).
class DesignError : public Error {
 public:
  using Error::Error;
};

/// Landmark configuration cannot define a valid error function.
class DegenerateLandmarkError : public Error {
 public:
  using Error::Error;
};

/// A time step left the manifold beyond tolerance (step size too large, diverging state).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// Matrix logarithm requested within the branch-ambiguous region (rotation angle at pi).
class BranchAmbiguityError : public Error {
 public:
  using Error::Error;
};

}  // namespace liecf
