#pragma once

#include <span>

#include "tdc/optim.hpp"
#include "tdc/teleport.hpp"

namespace tdc {

/// Row-stochastic matrix p(j|i) of an N-message dense-coding channel.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(RealMatrix p);

  int n() const { return static_cast<int>(p_.rows()); }
  const RealMatrix& p() const { return p_; }
  double operator()(int i, int j) const { return p_(i, j); }

 private:
  RealMatrix p_;
};

/// p(j|i) = tr(Π^j_AC ω^i_AC) for the dense-coding protocol that runs the
/// teleportation protocol backwards.
TransitionMatrix transition_matrix(const TeleportProtocol& p);

/// (1/N) Σ_i p(i|i)
double classical_correlation_fidelity(const TransitionMatrix& w);

struct DualityCheck {
  double fidelity;            ///< F from the teleportation channel
  double classical_fidelity;  ///< F_cl from the transition matrix
  double residual;            ///< |F - (N/|C|^2) F_cl|
};

DualityCheck duality_check(const TeleportProtocol& p);

/// min(|C|/N, 1)
double classical_bound_dc(int n, int dim_c);

/// Shannon entropy of a distribution, bits, 0 log 0 = 0.
double shannon_entropy(std::span<const double> p);

/// I(X;Y) in bits of a joint distribution with rows X, columns Y.
double mutual_information(const RealMatrix& joint);

/// I(X;X') for p(x, x') = p_x tr(M_x' ρ_x).
double accessible_info_of_measurement(const Ensemble& ens, const Povm& m);

/// von Neumann entropy in bits; eigenvalues below tol.psd count as zero.
double von_neumann_entropy(const Matrix& rho);

/// χ = H(Σ p_x ρ_x) - Σ p_x H(ρ_x)
double holevo_chi(const Ensemble& ens);

struct InfoBounds {
  double lower;
  double upper;
  double p_succ;
  int n;
  int d;  ///< 0 when not given
  /// The upper bound needs p_succ from an optimal measurement; the lower
  /// (Fano) bound holds for any measurement.
  bool optimal_measurement;
};

/// log N - (1-p) log(N-1) - h(p) <= I <= log N + log p.
InfoBounds accessible_info_bounds(int n, double p_succ, bool optimal_measurement = true);

/// The same bounds written through F = N p / d^2:
///   2 log d + log F + (1-p)[log(1-p) - log(d^2 F - p)] <= I <= 2 log d + log F.
/// Throws DomainError when (d, F, p, n) violate F = N p / d^2.
InfoBounds accessible_info_bounds_dF(int d, double fidelity, double p_succ, int n,
                                     bool optimal_measurement = true);

}  // namespace tdc
