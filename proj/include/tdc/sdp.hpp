#pragma once

#include <vector>

#include "tdc/linalg.hpp"

namespace tdc {

/// Solution of the measurement-type semidefinite program
///
///   maximise   Σ_k tr(M_k P_k)
///   subject to M_k >= 0,  Σ_k tr_R(M_k) = I_Y
///
/// where every P_k acts on Y ⊗ R, together with its dual
///
///   minimise tr(Y)  subject to  Y ⊗ I_R >= P_k  for all k.
///
/// With dim R = 1 this is optimal state discrimination; with a single
/// target on B ⊗ C it is the maximisation of a linear functional over Choi
/// matrices of channels B -> C.
struct MeasurementSdpResult {
  std::vector<Matrix> primal;  ///< feasible M_k
  Matrix dual;                 ///< strictly feasible Y
  double primal_value;
  double dual_value;
  int newton_steps;
  double gap() const { return dual_value - primal_value; }
};

/// Log-barrier path following on the dual. Stops once the barrier gap
/// μ · Σ_k dim(P_k) falls below `gap_target`.
MeasurementSdpResult solve_measurement_sdp(const std::vector<Matrix>& targets, int dim_y,
                                           int dim_r, double gap_target = 1e-9);

}  // namespace tdc
