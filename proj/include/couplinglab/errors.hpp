// Exception types shared by all couplinglab modules.
#pragma once

#include <stdexcept>
#include <string>

namespace couplinglab {

/// Input that violates a documented parameter invariant.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operator, basis or model combinations that cannot be used together.
class IncompatibleBasis : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Valid inputs for which the requested construction does not exist,
/// e.g. a phase grid that misses one of the potential wells.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Eigensolver failure (non-convergence, residual above tolerance).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The shallow well of a phase qubit holds fewer than two localized states.
class NoMetastableQubit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Both wells of the phase-qubit potential are equally deep, so there is no
/// distinguished metastable well.
class AmbiguousWell : public NoMetastableQubit {
 public:
  using NoMetastableQubit::NoMetastableQubit;
};

}  // namespace couplinglab
