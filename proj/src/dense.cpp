#include "tdc/dense.hpp"

#include <algorithm>
#include <cmath>

#include "tdc/errors.hpp"
#include "tdc/tolerances.hpp"

namespace tdc {

namespace {

constexpr double kStochasticTol = 1e-9;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

TransitionMatrix::TransitionMatrix(RealMatrix p) : p_(std::move(p)) {
  if (p_.rows() == 0 || p_.rows() != p_.cols()) {
    throw DimensionError("TransitionMatrix: matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < p_.rows(); ++i) {
    if (p_.row(i).minCoeff() < -kStochasticTol) {
      throw ValidationError("TransitionMatrix: negative entry in row " + std::to_string(i));
    }
    if (std::abs(p_.row(i).sum() - 1.0) > kStochasticTol) {
      throw ValidationError("TransitionMatrix: row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

TransitionMatrix transition_matrix(const TeleportProtocol& p) {
  const auto ens = decoded_ensemble(p);
  const auto povm = povm_on_ac(p);
  const int n = p.n();
  RealMatrix w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = trace_product(povm[j].matrix(), ens.states[i].matrix());
  }
  return TransitionMatrix(std::move(w));
}

double classical_correlation_fidelity(const TransitionMatrix& w) {
  return w.p().diagonal().mean();
}

DualityCheck duality_check(const TeleportProtocol& p) {
  const double f = entanglement_fidelity(teleportation_channel(p));
  const double fcl = classical_correlation_fidelity(transition_matrix(p));
  const double scale = static_cast<double>(p.n()) / (static_cast<double>(p.dim_c()) * p.dim_c());
  return {f, fcl, std::abs(f - scale * fcl)};
}

double classical_bound_dc(int n, int dim_c) {
  if (n < 1 || dim_c < 1) throw DomainError("classical_bound_dc: N and |C| must be >= 1");
  return std::min(static_cast<double>(dim_c) / n, 1.0);
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x < -kStochasticTol) throw DomainError("shannon_entropy: negative probability");
    h -= xlog2x(x);
  }
  return h;
}

double mutual_information(const RealMatrix& joint) {
  if (joint.size() == 0) throw DimensionError("mutual_information: empty distribution");
  if (joint.minCoeff() < -kStochasticTol) throw DomainError("mutual_information: negative entry");
  if (std::abs(joint.sum() - 1.0) > kStochasticTol) {
    throw DomainError("mutual_information: distribution does not sum to 1");
  }
  const RealVector px = joint.rowwise().sum();
  const RealVector py = joint.colwise().sum().transpose();
  double hxy = 0.0;
  for (Eigen::Index i = 0; i < joint.size(); ++i) hxy -= xlog2x(joint.data()[i]);
  const double hx = shannon_entropy(std::span<const double>(px.data(), px.size()));
  const double hy = shannon_entropy(std::span<const double>(py.data(), py.size()));
  return std::max(0.0, hx + hy - hxy);
}

double accessible_info_of_measurement(const Ensemble& ens, const Povm& m) {
  if (m.dims().total() != ens.dims().total()) {
    throw DimensionError("accessible_info_of_measurement: dimension mismatch");
  }
  RealMatrix joint(ens.size(), m.size());
  for (std::size_t x = 0; x < ens.size(); ++x) {
    for (std::size_t y = 0; y < m.size(); ++y) {
      joint(x, y) = std::max(0.0, ens.priors()[x] *
                                      trace_product(m[y].matrix(), ens.states()[x].matrix()));
    }
  }
  joint /= joint.sum();
  return mutual_information(joint);
}

double von_neumann_entropy(const Matrix& rho) {
  const auto es = linalg::eigh(rho);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > tol().psd) h -= xlog2x(es.values(i));
  }
  return h;
}

double holevo_chi(const Ensemble& ens) {
  Matrix avg = Matrix::Zero(ens.dims().total(), ens.dims().total());
  double conditional = 0.0;
  for (std::size_t x = 0; x < ens.size(); ++x) {
    avg += ens.priors()[x] * ens.states()[x].matrix();
    conditional += ens.priors()[x] * von_neumann_entropy(ens.states()[x].matrix());
  }
  return std::max(0.0, von_neumann_entropy(avg) - conditional);
}

InfoBounds accessible_info_bounds(int n, double p_succ, bool optimal_measurement) {
  if (n < 1) throw DomainError("accessible_info_bounds: N must be >= 1");
  if (!(p_succ > 0.0 && p_succ <= 1.0 + 1e-12)) {
    throw DomainError("accessible_info_bounds: p_succ must lie in (0, 1]");
  }
  const double p = std::min(p_succ, 1.0);
  InfoBounds out{0.0, 0.0, p, n, 0, optimal_measurement};
  if (n == 1) return out;
  const double log_n = std::log2(static_cast<double>(n));
  out.lower = log_n - (1.0 - p) * std::log2(n - 1.0) - binary_entropy(p);
  out.upper = log_n + std::log2(p);
  return out;
}

InfoBounds accessible_info_bounds_dF(int d, double fidelity, double p_succ, int n,
                                     bool optimal_measurement) {
  if (d < 1 || n < 1) throw DomainError("accessible_info_bounds_dF: d and N must be >= 1");
  if (!(fidelity > 0.0) || !(p_succ > 0.0 && p_succ <= 1.0 + 1e-12)) {
    throw DomainError("accessible_info_bounds_dF: need F > 0 and p_succ in (0, 1]");
  }
  const double d2 = static_cast<double>(d) * d;
  if (std::abs(fidelity - n * p_succ / d2) > 1e-9) {
    throw DomainError("accessible_info_bounds_dF: F differs from N p / d^2");
  }
  const double p = std::min(p_succ, 1.0);
  InfoBounds out{0.0, 0.0, p, n, d, optimal_measurement};
  if (n == 1) return out;
  out.upper = 2.0 * std::log2(static_cast<double>(d)) + std::log2(fidelity);
  out.lower = out.upper;
  if (p < 1.0) out.lower += (1.0 - p) * (std::log2(1.0 - p) - std::log2(d2 * fidelity - p));
  return out;
}

}  // namespace tdc
