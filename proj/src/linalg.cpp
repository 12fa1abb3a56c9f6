#include "tdc/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "tdc/errors.hpp"

namespace tdc::linalg {

namespace {

int product(std::span<const int> dims) {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

// digits[i * k + s] = index of factor s in basis state i
std::vector<int> all_digits(std::span<const int> dims) {
  const int total = product(dims);
  const std::size_t k = dims.size();
  std::vector<int> digits(static_cast<std::size_t>(total) * k);
  for (int i = 0; i < total; ++i) {
    int rest = i;
    for (std::size_t s = k; s-- > 0;) {
      digits[static_cast<std::size_t>(i) * k + s] = rest % dims[s];
      rest /= dims[s];
    }
  }
  return digits;
}

void check_square(const Matrix& x, std::span<const int> dims, const char* what) {
  const int total = product(dims);
  if (x.rows() != total || x.cols() != total) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", dims multiply to " +
                         std::to_string(total));
  }
}

std::vector<int> permutation_map(std::span<const int> dims, std::span<const std::size_t> order) {
  const std::size_t k = dims.size();
  if (order.size() != k) throw DimensionError("permute_systems: order has wrong length");
  std::vector<bool> seen(k, false);
  for (auto o : order) {
    if (o >= k || seen[o]) throw DimensionError("permute_systems: order is not a permutation");
    seen[o] = true;
  }
  std::vector<int> new_dims(k);
  for (std::size_t s = 0; s < k; ++s) new_dims[s] = dims[order[s]];
  const auto digits = all_digits(dims);
  const int total = product(dims);
  std::vector<int> map(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    int idx = 0;
    for (std::size_t s = 0; s < k; ++s) {
      idx = idx * new_dims[s] + digits[static_cast<std::size_t>(i) * k + order[s]];
    }
    map[static_cast<std::size_t>(i)] = idx;
  }
  return map;
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Vector kron(const Vector& a, const Vector& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix permute_systems(const Matrix& x, std::span<const int> dims,
                       std::span<const std::size_t> order) {
  check_square(x, dims, "permute_systems");
  const auto map = permutation_map(dims, order);
  const Eigen::Index n = x.rows();
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = x(i, j);
    }
  }
  return out;
}

Vector permute_systems(const Vector& v, std::span<const int> dims,
                       std::span<const std::size_t> order) {
  if (v.size() != product(dims)) throw DimensionError("permute_systems: vector size mismatch");
  const auto map = permutation_map(dims, order);
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(map[static_cast<std::size_t>(i)]) = v(i);
  return out;
}

Matrix partial_trace(const Matrix& x, std::span<const int> dims,
                     const std::vector<bool>& traced) {
  check_square(x, dims, "partial_trace");
  const std::size_t k = dims.size();
  if (traced.size() != k) throw DimensionError("partial_trace: mask has wrong length");
  const auto digits = all_digits(dims);
  const int total = product(dims);
  std::vector<int> kept_idx(static_cast<std::size_t>(total));
  std::vector<int> traced_idx(static_cast<std::size_t>(total));
  int kept_total = 1;
  for (std::size_t s = 0; s < k; ++s) {
    if (!traced[s]) kept_total *= dims[s];
  }
  for (int i = 0; i < total; ++i) {
    int kept = 0;
    int tr = 0;
    for (std::size_t s = 0; s < k; ++s) {
      const int d = digits[static_cast<std::size_t>(i) * k + s];
      if (traced[s]) {
        tr = tr * dims[s] + d;
      } else {
        kept = kept * dims[s] + d;
      }
    }
    kept_idx[static_cast<std::size_t>(i)] = kept;
    traced_idx[static_cast<std::size_t>(i)] = tr;
  }
  Matrix out = Matrix::Zero(kept_total, kept_total);
  for (int j = 0; j < total; ++j) {
    for (int i = 0; i < total; ++i) {
      if (traced_idx[static_cast<std::size_t>(i)] == traced_idx[static_cast<std::size_t>(j)]) {
        out(kept_idx[static_cast<std::size_t>(i)], kept_idx[static_cast<std::size_t>(j)]) +=
            x(i, j);
      }
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix& x, std::span<const int> dims,
                         const std::vector<bool>& transposed) {
  check_square(x, dims, "partial_transpose");
  const std::size_t k = dims.size();
  if (transposed.size() != k) throw DimensionError("partial_transpose: mask has wrong length");
  const auto digits = all_digits(dims);
  const int total = product(dims);
  Matrix out(total, total);
  for (int j = 0; j < total; ++j) {
    for (int i = 0; i < total; ++i) {
      int ni = 0;
      int nj = 0;
      for (std::size_t s = 0; s < k; ++s) {
        int di = digits[static_cast<std::size_t>(i) * k + s];
        int dj = digits[static_cast<std::size_t>(j) * k + s];
        if (transposed[s]) std::swap(di, dj);
        ni = ni * dims[s] + di;
        nj = nj * dims[s] + dj;
      }
      out(ni, nj) = x(i, j);
    }
  }
  return out;
}

Matrix embed(const Matrix& op, std::span<const int> dims, std::size_t target) {
  if (target >= dims.size()) throw DimensionError("embed: target out of range");
  if (op.cols() != dims[target]) {
    throw DimensionError("embed: operator input dimension " + std::to_string(op.cols()) +
                         " does not match factor dimension " + std::to_string(dims[target]));
  }
  int left = 1;
  int right = 1;
  for (std::size_t s = 0; s < target; ++s) left *= dims[s];
  for (std::size_t s = target + 1; s < dims.size(); ++s) right *= dims[s];
  return kron(kron(Matrix::Identity(left, left), op), Matrix::Identity(right, right));
}

EigenSystem eigh(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigh: eigensolver failed");
  const Eigen::Index n = h.rows();
  EigenSystem out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

Matrix psd_power(const Matrix& h, double exponent, double cutoff) {
  const auto es = eigh(h);
  RealVector f(es.values.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double v = es.values(i);
    f(i) = v > cutoff ? std::pow(v, exponent) : 0.0;
  }
  return es.vectors * f.asDiagonal() * es.vectors.adjoint();
}

Matrix hermitian_part(const Matrix& x) { return (x + x.adjoint()) * 0.5; }

double max_abs(const Matrix& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

Vector fix_phase(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) return v * (std::abs(v(i)) / v(i));
  }
  return v;
}

}  // namespace tdc::linalg
