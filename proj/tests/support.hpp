#pragma once

// Reference implementations for tests. They are written from basis-vector
// sums rather than index arithmetic so that they do not share code paths
// with the library kernels they check.

#include <cmath>
#include <vector>

#include "tdc/linalg.hpp"
#include "tdc/random.hpp"

namespace oracle {

using tdc::Complex;
using tdc::Matrix;
using tdc::Vector;

inline Vector basis(int d, int i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

inline Matrix unit(int d, int i, int j) { return basis(d, i) * basis(d, j).adjoint(); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Matrix eye(int d) { return Matrix::Identity(d, d); }

/// tr_B X = Σ_j (I ⊗ <j|) X (I ⊗ |j>) on A ⊗ B.
inline Matrix trace_second(const Matrix& x, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int j = 0; j < db; ++j) {
    const Matrix e = kron(eye(da), basis(db, j));
    out += e.adjoint() * x * e;
  }
  return out;
}

/// tr_A X = Σ_j (<j| ⊗ I) X (|j> ⊗ I) on A ⊗ B.
inline Matrix trace_first(const Matrix& x, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int j = 0; j < da; ++j) {
    const Matrix e = kron(basis(da, j), eye(db));
    out += e.adjoint() * x * e;
  }
  return out;
}

/// X^{T_B} = Σ_ij (I ⊗ |i><j|) X (I ⊗ |i><j|).
inline Matrix transpose_second(const Matrix& x, int da, int db) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (int i = 0; i < db; ++i) {
    for (int j = 0; j < db; ++j) {
      const Matrix e = kron(eye(da), unit(db, i, j));
      out += e * x * e;
    }
  }
  return out;
}

/// Swap |ij> -> |ji> built from matrix units.
inline Matrix swap(int d) {
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f += kron(unit(d, i, j), unit(d, j, i));
  }
  return f;
}

/// Channel action Σ_k K X K^dagger on the second factor.
inline Matrix apply_second(const std::vector<Matrix>& kraus, const Matrix& x, int da) {
  Matrix out = Matrix::Zero(da * kraus.front().rows(), da * kraus.front().rows());
  for (const auto& k : kraus) {
    const Matrix big = kron(eye(da), k);
    out += big * x * big.adjoint();
  }
  return out;
}

/// Choi matrix Σ_ij |i><j| ⊗ E(|i><j|).
inline Matrix choi(const std::vector<Matrix>& kraus) {
  const int din = static_cast<int>(kraus.front().cols());
  const int dout = static_cast<int>(kraus.front().rows());
  Matrix j = Matrix::Zero(din * dout, din * dout);
  for (int a = 0; a < din; ++a) {
    for (int b = 0; b < din; ++b) {
      Matrix img = Matrix::Zero(dout, dout);
      for (const auto& k : kraus) img += k * unit(din, a, b) * k.adjoint();
      j += kron(unit(din, a, b), img);
    }
  }
  return j;
}

inline Matrix random_hermitian(tdc::Rng& rng, int d) {
  const Matrix g = tdc::ginibre(rng, d, d);
  return (g + g.adjoint()) / 2.0;
}

inline double max_abs(const Matrix& x) { return x.cwiseAbs().maxCoeff(); }

/// Helstrom value for two states with priors p, 1-p: (1 + ||p ρ - (1-p) σ||_1) / 2.
inline double helstrom(const Matrix& rho, const Matrix& sigma, double p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p * rho - (1.0 - p) * sigma);
  return 0.5 * (1.0 + es.eigenvalues().cwiseAbs().sum());
}

}  // namespace oracle
