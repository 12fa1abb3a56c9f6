#pragma once

#include <vector>

#include "tdc/operators.hpp"

namespace tdc {

/// Positive operator-valued measure: PSD effects summing to the identity.
class Povm {
 public:
  Povm(SystemDims dims, std::vector<Matrix> effects);

  const SystemDims& dims() const { return dims_; }
  const std::vector<HermOp>& effects() const { return effects_; }
  std::size_t size() const { return effects_.size(); }
  const HermOp& operator[](std::size_t i) const { return effects_[i]; }

  /// max |Σ effects - I|
  double completeness_residual() const;

 private:
  SystemDims dims_;
  std::vector<HermOp> effects_;
};

/// Rescales PSD operators so they sum to the identity on their joint support
/// (M_i -> S^{-1/2} M_i S^{-1/2}); a residual projector off the support is
/// added to the element with the largest trace.
std::vector<Matrix> normalize_effects(std::vector<Matrix> effects);

}  // namespace tdc
