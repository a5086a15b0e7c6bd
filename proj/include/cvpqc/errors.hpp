// Exception types shared by all cvpqc modules. The CLI maps each family to
// an exit code: precondition/cutoff/range -> 2, consistency/convergence -> 3.
#pragma once

#include <stdexcept>
#include <string>

namespace cvpqc {

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The truncated Fock space is too small for the requested radius.
class CutoffError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Special-function argument outside the supported numeric range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Two computations that must agree did not (e.g. negative D^2 beyond roundoff).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature refinement disagreed beyond its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw PreconditionError(what);
}

}  // namespace cvpqc
