#include "tdc/teleport.hpp"

#include <cmath>
#include <numbers>

#include "tdc/errors.hpp"
#include "tdc/random.hpp"

namespace tdc {

namespace {

const SystemDims& require_labels(const SystemDims& dims, const std::string& first,
                                 const std::string& second, const char* what) {
  if (dims.size() != 2 || dims.labels()[0] != first || dims.labels()[1] != second) {
    throw LabelError(std::string(what) + ": expected systems (" + first + ", " + second +
                     "), got " + dims.to_string());
  }
  return dims;
}

}  // namespace

TeleportProtocol::TeleportProtocol(DensityOp rho_ab, Povm povm, std::vector<Channel> decoders,
                                   int dim_c)
    : rho_ab_(std::move(rho_ab)),
      povm_(std::move(povm)),
      decoders_(std::move(decoders)),
      dim_c_(dim_c) {
  require_labels(rho_ab_.dims(), label::A, label::B, "TeleportProtocol resource");
  require_labels(povm_.dims(), label::Cin, label::A, "TeleportProtocol POVM");
  if (dim_c_ < 1) throw DimensionError("TeleportProtocol: |C| must be >= 1");
  if (povm_.dims().dims()[0] != dim_c_ || povm_.dims().dims()[1] != dim_a()) {
    throw DimensionError("TeleportProtocol: POVM acts on " + povm_.dims().to_string() +
                         ", expected C':" + std::to_string(dim_c_) +
                         ", A:" + std::to_string(dim_a()));
  }
  if (decoders_.empty()) throw DimensionError("TeleportProtocol: no decoders");
  if (povm_.size() != decoders_.size()) {
    throw DimensionError("TeleportProtocol: " + std::to_string(povm_.size()) + " effects but " +
                         std::to_string(decoders_.size()) + " decoders");
  }
  const auto expected_in = SystemDims::single(label::B, dim_b());
  const auto expected_out = SystemDims::single(label::C, dim_c_);
  for (std::size_t i = 0; i < decoders_.size(); ++i) {
    if (decoders_[i].in_dims() != expected_in || decoders_[i].out_dims() != expected_out) {
      throw DimensionError("TeleportProtocol: decoder " + std::to_string(i) + " maps " +
                           decoders_[i].in_dims().to_string() + " -> " +
                           decoders_[i].out_dims().to_string() + ", expected " +
                           expected_in.to_string() + " -> " + expected_out.to_string());
    }
  }
}

DecodedEnsemble decoded_ensemble(const TeleportProtocol& p) {
  DecodedEnsemble out;
  out.states.reserve(p.decoders().size());
  for (const auto& d : p.decoders()) out.states.push_back(apply_channel(d, p.rho_ab(), label::B));
  return out;
}

Channel teleportation_channel(const TeleportProtocol& p) {
  const auto ens = decoded_ensemble(p);
  const int dc = p.dim_c();
  const int da = p.dim_a();
  // factors C', A, C
  const std::vector<int> dims{dc, da, dc};
  const std::vector<bool> traced{true, true, false};
  const Matrix id_c = Matrix::Identity(dc, dc);
  Matrix choi = Matrix::Zero(dc * dc, dc * dc);
  for (int j = 0; j < dc; ++j) {
    for (int k = 0; k < dc; ++k) {
      Matrix unit = Matrix::Zero(dc, dc);
      unit(j, k) = 1.0;
      Matrix out = Matrix::Zero(dc, dc);
      for (int i = 0; i < p.n(); ++i) {
        const Matrix joint = linalg::kron(unit, ens.states[i].matrix());
        const Matrix weighted = linalg::kron(p.povm()[i].matrix(), id_c) * joint;
        out += linalg::partial_trace(weighted, dims, traced);
      }
      for (int c = 0; c < dc; ++c) {
        for (int c2 = 0; c2 < dc; ++c2) choi(j * dc + c, k * dc + c2) = out(c, c2);
      }
    }
  }
  return Channel::from_choi(SystemDims::single(label::Cin, dc), SystemDims::single(label::C, dc),
                            linalg::hermitian_part(choi));
}

double entanglement_fidelity(const Channel& ch) {
  if (ch.dim_in() != ch.dim_out()) {
    throw DimensionError("entanglement_fidelity: channel is not square (" +
                         std::to_string(ch.dim_in()) + " -> " + std::to_string(ch.dim_out()) +
                         ")");
  }
  if (ch.in_dims().size() != 1) {
    throw DimensionError("entanglement_fidelity: channel input must be a single system");
  }
  const std::string ref = "Ref~";
  const std::string& in = ch.in_dims().labels()[0];
  const PureState phi = max_entangled(ch.dim_in(), ref, in);
  const HermOp out = apply_channel(ch, phi.density().op(), in);
  return expectation(out, phi.vector());
}

Matrix effect_cprime_a_to_ac(const Matrix& effect, int dim_c, int dim_a) {
  const std::vector<int> dims{dim_c, dim_a};
  const std::vector<std::size_t> order{1, 0};
  return linalg::permute_systems(effect, dims, order);
}

Matrix effect_ac_to_cprime_a(const Matrix& effect, int dim_a, int dim_c) {
  const std::vector<int> dims{dim_a, dim_c};
  const std::vector<std::size_t> order{1, 0};
  return linalg::permute_systems(effect, dims, order);
}

Povm povm_on_ac(const TeleportProtocol& p) {
  std::vector<Matrix> effects;
  for (const auto& e : p.povm().effects()) {
    effects.push_back(effect_cprime_a_to_ac(e.matrix(), p.dim_c(), p.dim_a()));
  }
  return Povm(SystemDims({label::A, label::C}, {p.dim_a(), p.dim_c()}), std::move(effects));
}

DiscriminationFidelity fidelity_via_discrimination(const TeleportProtocol& p) {
  const auto ens = decoded_ensemble(p);
  const auto povm = povm_on_ac(p);
  double sum = 0.0;
  for (int i = 0; i < p.n(); ++i) sum += trace_product(povm[i].matrix(), ens.states[i].matrix());
  const double dc2 = static_cast<double>(p.dim_c()) * p.dim_c();
  return {sum / dc2, sum / p.n()};
}

DimBound dim_bound_check(const TeleportProtocol& p) {
  constexpr double tol_sat = 1e-8;
  DimBound out{static_cast<double>(p.dim_a()) / p.dim_c(), true};
  const auto ens = decoded_ensemble(p);
  const auto povm = povm_on_ac(p);
  for (int i = 0; i < p.n() && out.saturated; ++i) {
    const auto& w = ens.states[i];
    if (w.purity() < 1.0 - tol_sat) {
      out.saturated = false;
      break;
    }
    const double gamma = povm[i].trace();
    if (gamma <= tol_sat || linalg::max_abs(povm[i].matrix() - gamma * w.matrix()) > tol_sat) {
      out.saturated = false;
    }
  }
  return out;
}

double average_fidelity(double entanglement_fidelity, int d) {
  if (!(entanglement_fidelity >= -1e-12 && entanglement_fidelity <= 1.0 + 1e-12)) {
    throw DomainError("average_fidelity: F must lie in [0, 1]");
  }
  if (d < 2) throw DomainError("average_fidelity: d must be >= 2");
  return (entanglement_fidelity * d + 1.0) / (d + 1.0);
}

Matrix heisenberg_weyl(int d, int a, int b) {
  if (d < 1) throw DomainError("heisenberg_weyl: d must be >= 1");
  Matrix x = Matrix::Zero(d, d);
  Matrix z = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    x((k + 1) % d, k) = 1.0;
    z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
  }
  Matrix xa = Matrix::Identity(d, d);
  Matrix zb = Matrix::Identity(d, d);
  for (int i = 0; i < ((a % d) + d) % d; ++i) xa = xa * x;
  for (int i = 0; i < ((b % d) + d) % d; ++i) zb = zb * z;
  return xa * zb;
}

TeleportProtocol standard_protocol(int d) {
  if (d < 2) throw DomainError("standard_protocol: d must be >= 2");
  const auto phi = max_entangled(d, label::A, label::B);
  std::vector<Matrix> effects;
  std::vector<Channel> decoders;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const Matrix w = heisenberg_weyl(d, a, b);
      decoders.push_back(Channel::from_kraus(SystemDims::single(label::B, d),
                                             SystemDims::single(label::C, d), {w}));
      // Bell vector (I ⊗ W)|Φ+> on (A,C), moved to (C',A)
      const Vector v = linalg::kron(Matrix::Identity(d, d), w) * phi.vector();
      effects.push_back(effect_ac_to_cprime_a(v * v.adjoint(), d, d));
    }
  }
  return TeleportProtocol(phi.density(), Povm(SystemDims({label::Cin, label::A}, {d, d}), effects),
                          std::move(decoders), d);
}

TeleportProtocol classical_protocol(const DensityOp& rho_ab, int dim_c) {
  if (dim_c < 1) throw DomainError("classical_protocol: |C| must be >= 1");
  require_labels(rho_ab.dims(), label::A, label::B, "classical_protocol resource");
  const int da = rho_ab.dims().dims()[0];
  const int db = rho_ab.dims().dims()[1];
  std::vector<Matrix> effects;
  std::vector<Channel> decoders;
  for (int i = 0; i < dim_c; ++i) {
    Matrix proj = Matrix::Zero(dim_c, dim_c);
    proj(i, i) = 1.0;
    effects.push_back(linalg::kron(proj, Matrix::Identity(da, da)));
    decoders.push_back(prepare_channel(db, dim_c, i, label::B, label::C));
  }
  return TeleportProtocol(rho_ab, Povm(SystemDims({label::Cin, label::A}, {dim_c, da}), effects),
                          std::move(decoders), dim_c);
}

TeleportProtocol classical_protocol(int dim_a, int dim_c) {
  if (dim_a < 1) throw DomainError("classical_protocol: |A| must be >= 1");
  DensityOp rho(SystemDims({label::A, label::B}, {dim_a, 1}),
                Matrix::Identity(dim_a, dim_a) / static_cast<double>(dim_a));
  return classical_protocol(rho, dim_c);
}

TeleportProtocol random_protocol(Rng& rng, int dim_a, int dim_b, int dim_c, int n) {
  auto rho = random_density(rng, SystemDims({label::A, label::B}, {dim_a, dim_b}));
  auto povm = random_povm(rng, SystemDims({label::Cin, label::A}, {dim_c, dim_a}), n);
  std::vector<Channel> decoders;
  const int min_kraus = (dim_b + dim_c - 1) / dim_c;
  for (int i = 0; i < n; ++i) {
    const int k = rng.uniform_int(min_kraus, dim_b * dim_c);
    decoders.push_back(random_channel(rng, SystemDims::single(label::B, dim_b),
                                      SystemDims::single(label::C, dim_c), k));
  }
  return TeleportProtocol(std::move(rho), std::move(povm), std::move(decoders), dim_c);
}

}  // namespace tdc
