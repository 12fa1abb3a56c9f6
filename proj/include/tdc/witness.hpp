#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "tdc/channel.hpp"

namespace tdc {

/// Result of testing ρ_A ⊗ I_B - ρ_AB >= 0.
struct ReductionReport {
  HermOp op;  ///< ρ_A ⊗ I_B - ρ_AB, label order (A-side, B-side)
  double min_eigenvalue;
  bool violated;
  /// Eigenvector of the most negative eigenvalue, present iff violated.
  std::optional<PureState> witness;
};

/// Reduction test across the cut (a_labels | rest).
ReductionReport reduction_check(const DensityOp& rho, std::span<const std::string> a_labels);
/// Bipartite shorthand: first factor against second.
ReductionReport reduction_check(const DensityOp& rho);

/// ρ_A^{-1/2} ρ_AB ρ_A^{-1/2} on supp(ρ_A) ⊗ B.
struct ConditionalState {
  HermOp op;
  /// |A| x dim(Ã) isometry onto supp(ρ_A); the identity for full rank.
  Matrix support;
  double max_eigenvalue() const;
};

/// Conditional state of a bipartite state (first factor conditioned on).
/// For full-rank ρ_A the original A basis is kept; otherwise A is
/// compressed to the support of ρ_A.
ConditionalState conditional_state(const DensityOp& rho);

/// U⊗U-invariant state [(d-λ) I + (dλ-1) F] / (d^3 - d) with tr(ρF) = λ.
DensityOp werner_state(int d, double lambda);

/// Qutrit-to-qubit channel with Kraus P = |0><0| + |1><1|, Q = |0><2|.
Channel qutrit_fold_channel(std::string in = "B", std::string out = "C");

/// Smallest eigenvalue of (id ⊗ E)(ρ_λ^{T_A}) for the d = 3 Werner state
/// and the qutrit fold channel.
double processed_werner_min_eig(double lambda);

/// Closed form of processed_werner_min_eig:
///   (7 + 3λ - sqrt(13 - 30λ + 37λ^2)) / 48   for λ <= 1/3,
///   (3 - λ) / 24                            for λ >= 1/3.
double processed_werner_min_eig_closed_form(double lambda);

struct ViolatingChannel {
  Channel channel;
  ReductionReport report;  ///< reduction test of (id ⊗ E)(ρ)
  int restart;
};

/// Searches for E: B -> C with (id ⊗ E)(ρ) violating the reduction
/// criterion, using the λ* see-saw with `seeds` restarts. An empty result
/// does not prove that no such channel exists.
std::optional<ViolatingChannel> find_violating_channel(const DensityOp& rho, int dim_c,
                                                       int seeds,
                                                       std::uint64_t base_seed = 0);

}  // namespace tdc
