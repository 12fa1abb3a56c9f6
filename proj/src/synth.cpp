#include "tdc/synth.hpp"

#include <cmath>
#include <numbers>

#include "tdc/errors.hpp"
#include "tdc/tolerances.hpp"

namespace tdc {

namespace {

// Completes orthonormal columns to a unitary by Gram-Schmidt on the
// standard basis vectors.
Matrix extend_basis(const Matrix& cols, int d) {
  Matrix out = Matrix::Zero(d, d);
  int filled = static_cast<int>(cols.cols());
  out.leftCols(filled) = cols;
  for (int e = 0; e < d && filled < d; ++e) {
    Vector v = Vector::Zero(d);
    v(e) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < filled; ++k) v -= out.col(k).dot(v) * out.col(k);
    }
    const double norm = v.norm();
    if (norm > 1e-6) out.col(filled++) = v / norm;
  }
  return out;
}

struct Frame {
  SchmidtDecomposition schmidt;
  Matrix a_basis;  // |A| x |A| unitary, first r columns the A-side Schmidt vectors
  Matrix c_basis;  // |C| x |C| unitary, first r columns the C-side Schmidt vectors
  int r;
};

Frame frame_of(const PureState& witness) {
  if (witness.dims().size() != 2) throw LabelError("synth: witness is not bipartite");
  const std::vector<std::string> left{witness.dims().labels()[0]};
  Frame f{schmidt_decompose(witness, left), {}, {}, 0};
  f.r = f.schmidt.rank();
  f.a_basis = extend_basis(f.schmidt.left, witness.dims().dims()[0]);
  f.c_basis = extend_basis(f.schmidt.right, witness.dims().dims()[1]);
  return f;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Channel prepare_state(const SystemDims& in, const SystemDims& out, const Vector& state) {
  std::vector<Matrix> kraus;
  for (int j = 0; j < in.total(); ++j) {
    Matrix k = Matrix::Zero(out.total(), in.total());
    k.col(j) = state;
    kraus.push_back(std::move(k));
  }
  return Channel::from_kraus(in, out, std::move(kraus));
}

}  // namespace

SynthesisCheck check_synthesis_input(const SynthesisInput& in) {
  const auto& rd = in.rho_ab.dims();
  if (rd.size() != 2) throw LabelError("synthesis: resource state is not bipartite");
  const int da = rd.dims()[0];
  const int db = rd.dims()[1];
  if (in.channel.dim_in() != db) throw DimensionError("synthesis: channel input is not |B|");
  if (in.channel.dim_out() != in.dim_c) throw DimensionError("synthesis: channel output is not |C|");
  if (in.witness.dims().size() != 2 || in.witness.dims().dims()[0] != da ||
      in.witness.dims().dims()[1] != in.dim_c) {
    throw DimensionError("synthesis: witness must live on A x C");
  }
  const HermOp omega = apply_channel(in.channel, in.rho_ab.op(), rd.labels()[1]);
  const std::vector<std::string> b{rd.labels()[1]};
  const Matrix rho_a = partial_trace(in.rho_ab.op(), b).matrix();
  const Matrix bound = linalg::kron(rho_a, Matrix::Identity(in.dim_c, in.dim_c));
  const Vector& phi = in.witness.vector();
  const double margin =
      (phi.adjoint() * omega.matrix() * phi)(0, 0).real() - (phi.adjoint() * bound * phi)(0, 0).real();
  const std::vector<std::string> left{in.witness.dims().labels()[0]};
  const int r = schmidt_decompose(in.witness, left).rank();
  if (!(margin > tol().margin)) {
    throw PreconditionError("synthesis: witness inequality margin " + std::to_string(margin) +
                            " is not above tolerance");
  }
  if (r < 2 || r > std::min(da, in.dim_c)) {
    throw PreconditionError("synthesis: witness Schmidt rank " + std::to_string(r) +
                            " outside [2, min(|A|,|C|)]");
  }
  return {margin, r};
}

Matrix mub_unitary(int n, int r, const Matrix& basis) {
  if (r < 1 || n < 0 || n >= r) throw DomainError("mub_unitary: need 0 <= n < r");
  if (basis.cols() < r) throw DimensionError("mub_unitary: basis has fewer than r vectors");
  const Matrix b = basis.leftCols(r);
  if (linalg::max_abs(b.adjoint() * b - Matrix::Identity(r, r)) > 1e-10) {
    throw ValidationError("mub_unitary: basis is not orthonormal");
  }
  const int d = static_cast<int>(basis.rows());
  Matrix u = Matrix::Identity(d, d) - b * b.adjoint();
  for (int k = 0; k < r; ++k) {
    const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * k * n / r);
    u += phase * projector(b.col(k));
  }
  return u;
}

std::vector<PureState> alpha_states(const PureState& witness, int r) {
  const Frame f = frame_of(witness);
  if (f.r != r) {
    throw DomainError("alpha_states: witness Schmidt rank is " + std::to_string(f.r) + ", not " +
                      std::to_string(r));
  }
  const int dc = witness.dims().dims()[1];
  std::vector<PureState> out;
  for (int n = 0; n < r; ++n) {
    const Matrix u = linalg::kron(mub_unitary(n, r, f.a_basis), Matrix::Identity(dc, dc));
    out.emplace_back(witness.dims(), u * witness.vector());
  }
  return out;
}

Povm build_povm(const SynthesisInput& in) {
  check_synthesis_input(in);
  const Frame f = frame_of(in.witness);
  const int da = in.witness.dims().dims()[0];
  const int dc = in.dim_c;
  const int r = f.r;
  std::vector<Matrix> effects;
  for (const auto& alpha : alpha_states(in.witness, r)) {
    effects.push_back(projector(alpha.vector()) / static_cast<double>(r));
  }
  for (int n = 0; n < r; ++n) {
    const double sigma = f.schmidt.coefficients[n] * f.schmidt.coefficients[n];
    const Matrix pa = projector(f.a_basis.col(n));
    const Matrix a_part = Matrix::Identity(da, da) - pa + (1.0 - sigma) * pa;
    effects.push_back(linalg::kron(a_part, projector(f.c_basis.col(n))));
  }
  for (int n = 0; n < dc - r; ++n) {
    effects.push_back(linalg::kron(Matrix::Identity(da, da), projector(f.c_basis.col(r + n))));
  }
  const auto& labels = in.witness.dims().labels();
  return Povm(SystemDims({labels[0], labels[1]}, {da, dc}), std::move(effects));
}

std::vector<Channel> build_decoders(const SynthesisInput& in) {
  check_synthesis_input(in);
  const Frame f = frame_of(in.witness);
  std::vector<Channel> out;
  for (int n = 0; n < f.r; ++n) out.push_back(in.channel.then_unitary(mub_unitary(n, f.r, f.c_basis)));
  for (int n = 0; n < in.dim_c; ++n) {
    out.push_back(prepare_state(in.channel.in_dims(), in.channel.out_dims(), f.c_basis.col(n)));
  }
  return out;
}

SynthesizedProtocol synthesize(const SynthesisInput& in) {
  const SynthesisCheck check = check_synthesis_input(in);
  const Povm on_ac = build_povm(in);
  const int da = on_ac.dims().dims()[0];
  const int dc = in.dim_c;
  std::vector<Matrix> moved;
  for (const auto& e : on_ac.effects()) moved.push_back(effect_ac_to_cprime_a(e.matrix(), da, dc));
  std::vector<Channel> decoders;
  for (const auto& d : build_decoders(in)) {
    decoders.push_back(Channel::from_both(SystemDims::single(label::B, d.dim_in()),
                                          SystemDims::single(label::C, dc), d.kraus(),
                                          d.choi().matrix()));
  }
  const DensityOp rho(SystemDims({label::A, label::B}, in.rho_ab.dims().dims()), in.rho_ab.matrix());
  TeleportProtocol protocol(rho, Povm(SystemDims({label::Cin, label::A}, {dc, da}), std::move(moved)),
                            std::move(decoders), dc);
  const double fidelity = fidelity_via_discrimination(protocol).fidelity;
  const double margin = fidelity - 1.0 / dc;
  if (!(margin > 0.0)) {
    throw ValidationError("synthesize: fidelity does not exceed 1/|C|");
  }
  return {std::move(protocol), check.schmidt_rank, fidelity, margin};
}

}  // namespace tdc
