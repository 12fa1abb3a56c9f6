#pragma once

#include <string>
#include <vector>

#include "tdc/operators.hpp"

namespace tdc {

/// Completely positive trace-preserving map between labelled systems.
///
/// Both representations are kept: the Kraus list and the unnormalised Choi
/// matrix J = Σ_ij |i><j| ⊗ E(|i><j|) on in ⊗ out (trace = |in|). Whichever
/// one is supplied, the other is derived; when both are supplied they are
/// checked for agreement.
class Channel {
 public:
  static Channel from_kraus(SystemDims in, SystemDims out, std::vector<Matrix> kraus);
  static Channel from_choi(SystemDims in, SystemDims out, Matrix choi);
  static Channel from_both(SystemDims in, SystemDims out, std::vector<Matrix> kraus,
                           Matrix choi);

  const SystemDims& in_dims() const { return in_; }
  const SystemDims& out_dims() const { return out_; }
  int dim_in() const { return in_.total(); }
  int dim_out() const { return out_.total(); }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  /// Choi matrix with label order in, out.
  const HermOp& choi() const { return choi_; }

  /// Channel followed by conjugation with `u` on the output.
  Channel then_unitary(const Matrix& u) const;

 private:
  Channel(SystemDims in, SystemDims out, std::vector<Matrix> kraus, HermOp choi);

  SystemDims in_;
  SystemDims out_;
  std::vector<Matrix> kraus_;
  HermOp choi_;
};

/// J = Σ_ij |i><j| ⊗ E(|i><j|), computed from Kraus operators.
Matrix choi_from_kraus(const std::vector<Matrix>& kraus, int dim_in);
HermOp choi_from_kraus(const Channel& ch);

/// Kraus operators from the eigen-decomposition of a Choi matrix.
std::vector<Matrix> kraus_from_choi(const Matrix& choi, int dim_in, int dim_out);

/// id ⊗ E on the factor `target` of x, via Kraus operators. The output
/// factor replaces the target in place and carries the channel's output
/// label.
HermOp apply_kraus(const Channel& ch, const HermOp& x, std::string_view target);
/// Same map via E(χ) = tr_in[(χ^T ⊗ I) J].
HermOp apply_choi(const Channel& ch, const HermOp& x, std::string_view target);
/// Kraus path (the default).
HermOp apply_channel(const Channel& ch, const HermOp& x, std::string_view target);
DensityOp apply_channel(const Channel& ch, const DensityOp& x, std::string_view target);

/// Raw matrix forms, for non-Hermitian inputs.
Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& x,
                   std::span<const int> dims, std::size_t target);

Channel identity_channel(int d, std::string in = "B", std::string out = "C");

/// X -> tr(X) |k><k| on an output of dimension dim_out.
Channel prepare_channel(int dim_in, int dim_out, int k, std::string in = "B",
                        std::string out = "C");

/// X -> tr(X) I/d_out.
Channel depolarizing_channel(int dim_in, int dim_out, std::string in = "B",
                             std::string out = "C");

/// Measure in the computational basis of d and prepare the same basis state.
Channel measure_prepare_channel(int d, std::string in = "B", std::string out = "C");

/// Identity on the first min(d_in, d_out) basis states. When d_out < d_in
/// the remaining inputs are sent to |0>; when d_out > d_in it is the
/// canonical isometric embedding.
Channel truncating_identity(int dim_in, int dim_out, std::string in = "B",
                            std::string out = "C");

}  // namespace tdc
