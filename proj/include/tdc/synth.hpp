#pragma once

#include <vector>

#include "tdc/teleport.hpp"

namespace tdc {

/// Data for the constructive protocol: a channel E: B -> C and a vector φ
/// on (A,C) with <φ|ω_AC|φ> > <φ|ρ_A ⊗ I|φ>, ω = (id ⊗ E)(ρ).
struct SynthesisInput {
  DensityOp rho_ab;
  Channel channel;
  PureState witness;
  int dim_c;
};

struct SynthesisCheck {
  double margin;  ///< <φ|ω|φ> - <φ|ρ_A ⊗ I|φ>
  int schmidt_rank;
};

/// Validates a SynthesisInput; throws PreconditionError when the margin is
/// at most tol.margin or the Schmidt rank is outside [2, min(|A|,|C|)].
SynthesisCheck check_synthesis_input(const SynthesisInput& in);

/// U(n) = Σ_{k<r} e^{2πikn/r} |b_k><b_k| + (I - Σ_k |b_k><b_k|) for the
/// orthonormal columns b_0..b_{r-1} of `basis`.
Matrix mub_unitary(int n, int r, const Matrix& basis);

/// |α_n> = (U(n) ⊗ I)|φ>, n = 0..r-1, with U built on the A-side Schmidt
/// basis of φ.
std::vector<PureState> alpha_states(const PureState& witness, int r);

/// POVM on (A,C) with |C| + r effects.
Povm build_povm(const SynthesisInput& in);

/// r rotated copies U(n)∘E followed by |C| state preparations.
std::vector<Channel> build_decoders(const SynthesisInput& in);

struct SynthesizedProtocol {
  TeleportProtocol protocol;
  int r;
  double fidelity;
  double margin;  ///< fidelity - 1/|C|
};

/// Assembles the protocol (POVM moved to the (C',A) convention) and
/// checks that its fidelity exceeds 1/|C|.
SynthesizedProtocol synthesize(const SynthesisInput& in);

}  // namespace tdc
