#include "tdc/povm.hpp"

#include "tdc/errors.hpp"
#include "tdc/tolerances.hpp"

namespace tdc {

Povm::Povm(SystemDims dims, std::vector<Matrix> effects) : dims_(std::move(dims)) {
  if (effects.empty()) throw ValidationError("Povm: no effects");
  for (auto& e : effects) {
    HermOp op(dims_, std::move(e));
    const auto es = linalg::eigh(op.matrix());
    const double min_eig = es.values(es.values.size() - 1);
    if (min_eig < -tol().psd) {
      throw ValidationError("Povm: effect " + std::to_string(effects_.size()) +
                            " is not positive semidefinite (eigenvalue " +
                            std::to_string(min_eig) + ")");
    }
    effects_.push_back(std::move(op));
  }
  const double residual = completeness_residual();
  if (residual > tol().povm) {
    throw ValidationError("Povm: effects do not sum to the identity (residual " +
                          std::to_string(residual) + ")");
  }
}

double Povm::completeness_residual() const {
  const int n = dims_.total();
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& e : effects_) sum += e.matrix();
  return linalg::max_abs(sum - Matrix::Identity(n, n));
}

std::vector<Matrix> normalize_effects(std::vector<Matrix> effects) {
  if (effects.empty()) return effects;
  const Eigen::Index n = effects.front().rows();
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& e : effects) sum += e;
  const Matrix inv_sqrt = linalg::psd_power(linalg::hermitian_part(sum), -0.5, 1e-12);
  Matrix total = Matrix::Zero(n, n);
  for (auto& e : effects) {
    e = linalg::hermitian_part(inv_sqrt * e * inv_sqrt);
    total += e;
  }
  const Matrix residual = linalg::hermitian_part(Matrix::Identity(n, n) - total);
  if (linalg::max_abs(residual) > 1e-14) {
    std::size_t largest = 0;
    for (std::size_t i = 1; i < effects.size(); ++i) {
      if (effects[i].trace().real() > effects[largest].trace().real()) largest = i;
    }
    effects[largest] += residual;
  }
  return effects;
}

}  // namespace tdc
