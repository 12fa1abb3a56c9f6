#pragma once

#include <stdexcept>
#include <string>

namespace tdc {

/// Operand shapes or system dimensions do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A system label is missing, duplicated or otherwise unusable.
class LabelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument is outside the documented domain (negative dimension,
/// probability outside [0,1], ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A constructed object fails one of its invariants (Hermiticity, PSD,
/// trace preservation, POVM completeness, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition that depends on numerical data is not met, e.g. a
/// witness inequality that holds with too small a margin.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped before reaching its target accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tdc
