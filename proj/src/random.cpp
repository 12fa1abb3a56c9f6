#include "tdc/random.hpp"

#include <cmath>
#include <numbers>

#include "tdc/errors.hpp"

namespace tdc {

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  const int span = hi - lo + 1;
  const int k = static_cast<int>(uniform() * span);
  return lo + std::min(k, span - 1);
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

Matrix ginibre(Rng& rng, int rows, int cols) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  }
  return g;
}

Vector haar_vector(Rng& rng, int d) {
  Vector v = ginibre(rng, d, 1).col(0);
  return v / v.norm();
}

Matrix haar_unitary(Rng& rng, int d) {
  const Matrix g = ginibre(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0.0) q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

Matrix haar_isometry(Rng& rng, int rows, int cols) {
  if (rows < cols) throw DimensionError("haar_isometry: rows < cols");
  return haar_unitary(rng, rows).leftCols(cols);
}

DensityOp random_density(Rng& rng, const SystemDims& dims, int rank) {
  const int n = dims.total();
  if (rank <= 0) rank = n;
  const Matrix g = ginibre(rng, n, rank);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOp(HermOp(dims, rho));
}

PureState random_pure(Rng& rng, const SystemDims& dims) {
  return PureState(dims, haar_vector(rng, dims.total()));
}

Channel random_channel(Rng& rng, const SystemDims& in, const SystemDims& out, int n_kraus) {
  const int din = in.total();
  const int dout = out.total();
  if (n_kraus <= 0) n_kraus = din * dout;
  if (n_kraus * dout < din) throw DimensionError("random_channel: too few Kraus operators");
  const Matrix v = haar_isometry(rng, dout * n_kraus, din);
  std::vector<Matrix> kraus;
  for (int k = 0; k < n_kraus; ++k) kraus.push_back(v.middleRows(k * dout, dout));
  return Channel::from_kraus(in, out, std::move(kraus));
}

Povm random_povm(Rng& rng, const SystemDims& dims, int n) {
  const int d = dims.total();
  std::vector<Matrix> effects;
  for (int i = 0; i < n; ++i) {
    const Matrix g = ginibre(rng, d, d);
    effects.push_back(g * g.adjoint());
  }
  return Povm(dims, normalize_effects(std::move(effects)));
}

DensityOp random_separable(Rng& rng, int dim_a, int dim_b, int terms) {
  Matrix rho = Matrix::Zero(dim_a * dim_b, dim_a * dim_b);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const double w = rng.uniform() + 1e-3;
    const Vector a = haar_vector(rng, dim_a);
    const Vector b = haar_vector(rng, dim_b);
    const Vector ab = linalg::kron(a, b);
    rho += w * ab * ab.adjoint();
    total += w;
  }
  return DensityOp(HermOp(SystemDims({"A", "B"}, {dim_a, dim_b}), rho / total));
}

}  // namespace tdc
