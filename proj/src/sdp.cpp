#include "tdc/sdp.hpp"

#include <cmath>
#include <optional>

#include "tdc/errors.hpp"
#include "tdc/operators.hpp"

namespace tdc {

namespace {

struct Slack {
  std::vector<Matrix> inverse;
  double log_det = 0.0;
};

// Cholesky of every Y ⊗ I - P_k; nullopt if one of them is not positive definite.
std::optional<Slack> factor(const Matrix& y, const std::vector<Matrix>& targets, int dim_r,
                            bool want_inverse) {
  const Matrix embedded = linalg::kron(y, Matrix::Identity(dim_r, dim_r));
  Slack out;
  for (const auto& p : targets) {
    Eigen::LLT<Matrix> llt(embedded - p);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const Vector diag = llt.matrixLLT().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      const double v = diag(i).real();
      if (!(v > 0.0)) return std::nullopt;
      out.log_det += 2.0 * std::log(v);
    }
    if (want_inverse) {
      out.inverse.push_back(llt.solve(Matrix::Identity(p.rows(), p.cols())));
    }
  }
  return out;
}

Matrix trace_r(const Matrix& x, int dim_y, int dim_r) {
  Matrix out = Matrix::Zero(dim_y, dim_y);
  for (int a = 0; a < dim_y; ++a) {
    for (int b = 0; b < dim_y; ++b) {
      for (int s = 0; s < dim_r; ++s) out(a, b) += x(a * dim_r + s, b * dim_r + s);
    }
  }
  return out;
}

Matrix block_of(const Matrix& w, int dim_y, int dim_r, int s, int t) {
  if (dim_r == 1) return w;
  Matrix out(dim_y, dim_y);
  for (int c = 0; c < dim_y; ++c) {
    for (int a = 0; a < dim_y; ++a) out(c, a) = w(c * dim_r + s, a * dim_r + t);
  }
  return out;
}

}  // namespace

MeasurementSdpResult solve_measurement_sdp(const std::vector<Matrix>& targets, int dim_y,
                                           int dim_r, double gap_target) {
  if (targets.empty()) throw DimensionError("solve_measurement_sdp: no targets");
  const int n = dim_y * dim_r;
  double scale = 0.0;
  for (const auto& p : targets) {
    if (p.rows() != n || p.cols() != n) {
      throw DimensionError("solve_measurement_sdp: target has wrong size");
    }
    scale = std::max(scale, linalg::eigh(linalg::hermitian_part(p)).values(0));
  }
  const double total_dim = static_cast<double>(targets.size()) * n;
  Matrix y = Matrix::Identity(dim_y, dim_y) * (std::max(scale, 0.0) + 1.0);
  double mu = std::max(1.0, std::abs(scale)) / total_dim;
  int steps = 0;
  const int ny = dim_y * dim_y;

  auto barrier = [&](const Matrix& yy, double log_det) {
    return yy.trace().real() - mu * log_det;
  };

  std::optional<Slack> slack = factor(y, targets, dim_r, true);
  if (!slack) throw ConvergenceError("solve_measurement_sdp: infeasible start");
  for (;;) {
    for (int it = 0; it < 200; ++it) {
      Matrix grad = Matrix::Identity(dim_y, dim_y);
      Matrix hess = Matrix::Zero(ny, ny);
      for (const auto& w : slack->inverse) {
        grad -= mu * trace_r(w, dim_y, dim_r);
        // H = μ Σ_{s,t} W_st ⊗ W_ts^T with W_st[c,a] = W[(c,s),(a,t)]
        for (int s = 0; s < dim_r; ++s) {
          for (int t = 0; t < dim_r; ++t) {
            const Matrix w_st = block_of(w, dim_y, dim_r, s, t);
            const Matrix w_ts = block_of(w, dim_y, dim_r, t, s);
            hess += mu * linalg::kron(w_st, w_ts.transpose());
          }
        }
      }
      grad = linalg::hermitian_part(grad);
      Vector rhs(ny);
      for (int c = 0; c < dim_y; ++c) {
        for (int d = 0; d < dim_y; ++d) rhs(c * dim_y + d) = -grad(c, d);
      }
      hess = linalg::hermitian_part(hess);
      Vector x;
      Eigen::LLT<Matrix> llt(hess);
      if (llt.info() == Eigen::Success) {
        x = llt.solve(rhs);
      } else {
        x = hess.fullPivLu().solve(rhs);
      }
      Matrix delta(dim_y, dim_y);
      for (int c = 0; c < dim_y; ++c) {
        for (int d = 0; d < dim_y; ++d) delta(c, d) = x(c * dim_y + d);
      }
      delta = linalg::hermitian_part(delta);
      const double decrement = -trace_product(grad, delta);
      ++steps;
      const bool last_round = mu * total_dim <= gap_target;
      const double center_tol = last_round ? 1e-9 * mu : 1e-2 * mu;
      if (!(decrement > std::max(center_tol, 1e-15 * std::max(1.0, std::abs(y.trace().real())))))
        break;

      const double f0 = barrier(y, slack->log_det);
      double step = 1.0;
      std::optional<Slack> next;
      Matrix y_next;
      for (int ls = 0; ls < 60; ++ls) {
        y_next = y + step * delta;
        next = factor(y_next, targets, dim_r, false);
        if (next && barrier(y_next, next->log_det) <= f0 - 0.25 * step * decrement) break;
        next.reset();
        step *= 0.5;
      }
      if (!next) break;
      y = y_next;
      slack = factor(y, targets, dim_r, true);
      if (!slack) throw ConvergenceError("solve_measurement_sdp: lost feasibility");
    }
    if (mu * total_dim <= gap_target) break;
    mu = std::max(mu * 0.1, gap_target / total_dim * 0.999);
  }

  MeasurementSdpResult out;
  out.dual = linalg::hermitian_part(y);
  out.dual_value = y.trace().real();
  out.newton_steps = steps;
  Matrix sum = Matrix::Zero(dim_y, dim_y);
  for (const auto& w : slack->inverse) {
    out.primal.push_back(linalg::hermitian_part(mu * w));
    sum += trace_r(out.primal.back(), dim_y, dim_r);
  }
  // exact feasibility: (S^{-1/2} ⊗ I) M_k (S^{-1/2} ⊗ I)
  const Matrix fix = linalg::kron(linalg::psd_power(linalg::hermitian_part(sum), -0.5, 0.0),
                                  Matrix::Identity(dim_r, dim_r));
  out.primal_value = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    out.primal[k] = linalg::hermitian_part(fix * out.primal[k] * fix);
    out.primal_value += trace_product(out.primal[k], targets[k]);
  }
  return out;
}

}  // namespace tdc
