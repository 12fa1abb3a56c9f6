#include "tdc/operators.hpp"

#include <cmath>
#include <utility>

#include "tdc/errors.hpp"
#include "tdc/tolerances.hpp"

namespace tdc {

namespace {

std::vector<std::size_t> positions_of(const SystemDims& dims,
                                      std::span<const std::string> order) {
  if (order.size() != dims.size()) {
    throw LabelError("reorder: expected " + std::to_string(dims.size()) + " labels for " +
                     dims.to_string());
  }
  std::vector<std::size_t> pos;
  for (const auto& l : order) pos.push_back(dims.index_of(l));
  // index_of already rejects unknown labels; duplicates would leave a factor out
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (pos[i] == pos[j]) throw LabelError("reorder: duplicate label '" + order[i] + "'");
    }
  }
  return pos;
}

}  // namespace

HermOp::HermOp(SystemDims dims, Matrix matrix) : dims_(std::move(dims)) {
  const int n = dims_.total();
  if (matrix.rows() != n || matrix.cols() != n) {
    throw DimensionError("HermOp: matrix is " + std::to_string(matrix.rows()) + "x" +
                         std::to_string(matrix.cols()) + " but " + dims_.to_string() +
                         " has total dimension " + std::to_string(n));
  }
  const double scale = std::max(1.0, linalg::max_abs(matrix));
  const double skew = linalg::max_abs(matrix - matrix.adjoint());
  if (skew > tol().herm * scale) {
    throw ValidationError("HermOp: matrix is not Hermitian (deviation " + std::to_string(skew) +
                          ")");
  }
  matrix_ = linalg::hermitian_part(matrix);
}

HermOp HermOp::identity(SystemDims dims) {
  const int n = dims.total();
  return HermOp(std::move(dims), Matrix::Identity(n, n));
}

DensityOp::DensityOp(HermOp op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > tol().trace) {
    throw ValidationError("DensityOp: trace is " + std::to_string(tr) + ", expected 1");
  }
  const auto es = linalg::eigh(op_.matrix());
  const double min_eig = es.values(es.values.size() - 1);
  if (min_eig < -tol().psd) {
    throw ValidationError("DensityOp: not positive semidefinite (eigenvalue " +
                          std::to_string(min_eig) + ")");
  }
  if (min_eig < 0.0) {
    RealVector clamped = es.values.cwiseMax(0.0);
    clamped /= clamped.sum();
    op_ = HermOp(op_.dims(), es.vectors * clamped.asDiagonal() * es.vectors.adjoint());
  }
}

double DensityOp::purity() const { return trace_product(matrix(), matrix()); }

PureState::PureState(SystemDims dims, Vector vector)
    : dims_(std::move(dims)), vector_(std::move(vector)) {
  if (vector_.size() != dims_.total()) {
    throw DimensionError("PureState: vector has " + std::to_string(vector_.size()) +
                         " entries but " + dims_.to_string() + " has total dimension " +
                         std::to_string(dims_.total()));
  }
  const double norm = vector_.norm();
  if (std::abs(norm - 1.0) > tol().trace) {
    throw ValidationError("PureState: norm is " + std::to_string(norm) + ", expected 1");
  }
}

DensityOp PureState::density() const {
  return DensityOp(HermOp(dims_, vector_ * vector_.adjoint()));
}

HermOp tensor(const HermOp& a, const HermOp& b) {
  return HermOp(a.dims().concat(b.dims()), linalg::kron(a.matrix(), b.matrix()));
}

DensityOp tensor(const DensityOp& a, const DensityOp& b) {
  return DensityOp(tensor(a.op(), b.op()));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(a.dims().concat(b.dims()), linalg::kron(a.vector(), b.vector()));
}

HermOp partial_trace(const HermOp& x, std::span<const std::string> labels) {
  const auto mask = x.dims().mask(labels);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) kept.push_back(i);
  }
  return HermOp(x.dims().select(kept),
                linalg::partial_trace(x.matrix(), x.dims().dims(), mask));
}

DensityOp partial_trace(const DensityOp& x, std::span<const std::string> labels) {
  return DensityOp(partial_trace(x.op(), labels));
}

HermOp partial_transpose(const HermOp& x, std::span<const std::string> labels) {
  return HermOp(x.dims(),
                linalg::partial_transpose(x.matrix(), x.dims().dims(), x.dims().mask(labels)));
}

HermOp reorder(const HermOp& x, std::span<const std::string> order) {
  const auto pos = positions_of(x.dims(), order);
  return HermOp(x.dims().select(pos), linalg::permute_systems(x.matrix(), x.dims().dims(), pos));
}

DensityOp reorder(const DensityOp& x, std::span<const std::string> order) {
  return DensityOp(reorder(x.op(), order));
}

PureState reorder(const PureState& x, std::span<const std::string> order) {
  const auto pos = positions_of(x.dims(), order);
  return PureState(x.dims().select(pos),
                   linalg::permute_systems(x.vector(), x.dims().dims(), pos));
}

HermOp relabel(const HermOp& x, std::string_view from, std::string to) {
  return HermOp(x.dims().renamed(from, std::move(to)), x.matrix());
}

PureState max_entangled(int d, std::string left, std::string right) {
  if (d < 1) throw DomainError("max_entangled: d must be >= 1");
  Vector v = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(i * d + i) = amp;
  return PureState(SystemDims({std::move(left), std::move(right)}, {d, d}), v);
}

HermOp swap_operator(int d, std::string left, std::string right) {
  if (d < 1) throw DomainError("swap_operator: d must be >= 1");
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  }
  return HermOp(SystemDims({std::move(left), std::move(right)}, {d, d}), f);
}

linalg::EigenSystem eig_hermitian(const HermOp& x) { return linalg::eigh(x.matrix()); }

SchmidtDecomposition schmidt_decompose(const PureState& psi,
                                       std::span<const std::string> left_labels) {
  const auto mask = psi.dims().mask(left_labels);
  std::vector<std::string> order;
  std::vector<std::size_t> left_pos;
  std::vector<std::size_t> right_pos;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) {
      left_pos.push_back(i);
      order.push_back(psi.dims().labels()[i]);
    }
  }
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) {
      right_pos.push_back(i);
      order.push_back(psi.dims().labels()[i]);
    }
  }
  const PureState sorted = reorder(psi, order);
  SchmidtDecomposition out;
  out.left_dims = psi.dims().select(left_pos);
  out.right_dims = psi.dims().select(right_pos);
  const int dl = out.left_dims.total();
  const int dr = out.right_dims.total();
  Matrix m(dl, dr);
  for (int i = 0; i < dl; ++i) {
    for (int j = 0; j < dr; ++j) m(i, j) = sorted.vector()(i * dr + j);
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  double total = 0.0;
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    total += s(k) * s(k);
    if (s(k) * s(k) > tol().schmidt) ++rank;
  }
  if (std::abs(total - 1.0) > tol().trace) {
    throw ValidationError("schmidt_decompose: coefficients square-sum to " +
                          std::to_string(total));
  }
  out.left = svd.matrixU().leftCols(rank);
  out.right = svd.matrixV().leftCols(rank).conjugate();
  for (int k = 0; k < rank; ++k) out.coefficients.push_back(s(k));
  return out;
}

double expectation(const HermOp& x, const Vector& psi) {
  return psi.dot(x.matrix() * psi).real();
}

double trace_product(const Matrix& x, const Matrix& y) {
  // tr(XY) = Σ_ij X_ij Y_ji
  return (x.transpose().cwiseProduct(y)).sum().real();
}

}  // namespace tdc
