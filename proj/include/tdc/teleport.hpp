#pragma once

#include <vector>

#include "tdc/channel.hpp"
#include "tdc/povm.hpp"

namespace tdc {

class Rng;

/// Canonical system labels used by protocols. Alice holds A and the input
/// C'; Bob holds B and decodes into C.
namespace label {
inline const std::string A = "A";
inline const std::string B = "B";
inline const std::string C = "C";
inline const std::string Cin = "C'";
inline const std::string Ref = "R";
}  // namespace label

/// A |C|-dimensional teleportation protocol: resource state on (A,B), an
/// N-outcome POVM on (C',A) and N decoders B -> C.
class TeleportProtocol {
 public:
  TeleportProtocol(DensityOp rho_ab, Povm povm, std::vector<Channel> decoders, int dim_c);

  const DensityOp& rho_ab() const { return rho_ab_; }
  const Povm& povm() const { return povm_; }
  const std::vector<Channel>& decoders() const { return decoders_; }
  int dim_a() const { return rho_ab_.dims().dims()[0]; }
  int dim_b() const { return rho_ab_.dims().dims()[1]; }
  int dim_c() const { return dim_c_; }
  int n() const { return static_cast<int>(decoders_.size()); }

 private:
  DensityOp rho_ab_;
  Povm povm_;
  std::vector<Channel> decoders_;
  int dim_c_;
};

/// The states ω^i = (id_A ⊗ D^i)(ρ_AB) on (A,C), drawn with prior 1/N.
struct DecodedEnsemble {
  std::vector<DensityOp> states;
  double prior() const { return 1.0 / static_cast<double>(states.size()); }
};

DecodedEnsemble decoded_ensemble(const TeleportProtocol& p);

/// Λ(σ) = Σ_i tr_{C'A}[(Π^i ⊗ I_C)(σ_{C'} ⊗ ω^i_{AC})], as a channel C' -> C.
Channel teleportation_channel(const TeleportProtocol& p);

/// F = <Φ+| (id ⊗ Λ)(Φ+) |Φ+> for a channel with |in| = |out|.
double entanglement_fidelity(const Channel& ch);

/// Moves a (C',A) effect to (A,C) by swapping the two factors and renaming
/// C' to C. No transpose is involved.
Matrix effect_cprime_a_to_ac(const Matrix& effect, int dim_c, int dim_a);
Matrix effect_ac_to_cprime_a(const Matrix& effect, int dim_a, int dim_c);

/// The protocol POVM re-expressed on (A,C).
Povm povm_on_ac(const TeleportProtocol& p);

struct DiscriminationFidelity {
  double fidelity;
  double p_succ;
};

/// F = (1/|C|^2) Σ_i tr(Π^i_AC ω^i_AC) = (N/|C|^2) p_succ.
DiscriminationFidelity fidelity_via_discrimination(const TeleportProtocol& p);

struct DimBound {
  double bound;    ///< |A| / |C|
  bool saturated;  ///< every ω^i pure and Π^i = γ_i ω^i, γ_i > 0
};

DimBound dim_bound_check(const TeleportProtocol& p);

/// Haar-average fidelity from the entanglement fidelity: (F d + 1)/(d + 1).
double average_fidelity(double entanglement_fidelity, int d);

/// Heisenberg-Weyl unitary X^a Z^b with X|k> = |k+1>, Z|k> = e^{2πik/d}|k>.
Matrix heisenberg_weyl(int d, int a, int b);

/// Maximally entangled resource, d^2 Bell-basis effects, Heisenberg-Weyl
/// corrections. F = 1.
TeleportProtocol standard_protocol(int d);

/// Measure C' in the computational basis, send the outcome, prepare it.
/// F = 1/dim_c for every resource state.
TeleportProtocol classical_protocol(const DensityOp& rho_ab, int dim_c);
/// Same with resource I_A/|A| ⊗ |0><0| on a one-dimensional B.
TeleportProtocol classical_protocol(int dim_a, int dim_c);

/// Random resource state, POVM and decoders.
TeleportProtocol random_protocol(Rng& rng, int dim_a, int dim_b, int dim_c, int n);

}  // namespace tdc
