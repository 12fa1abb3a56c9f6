#include "tdc/witness.hpp"

#include <cmath>

#include "tdc/errors.hpp"
#include "tdc/optim.hpp"
#include "tdc/tolerances.hpp"

namespace tdc {

namespace {

// Lexicographic (re, im) comparison of phase-normalised vectors.
bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

ReductionReport reduction_check(const DensityOp& rho, std::span<const std::string> a_labels) {
  const auto mask = rho.dims().mask(a_labels);
  std::vector<std::string> order;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) order.push_back(rho.dims().labels()[i]);
  }
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) rest.push_back(rho.dims().labels()[i]);
  }
  if (order.empty() || rest.empty()) {
    throw LabelError("reduction_check: the cut must leave both sides non-empty");
  }
  order.insert(order.end(), rest.begin(), rest.end());
  const HermOp sorted = reorder(rho.op(), order);
  const HermOp rho_a = partial_trace(sorted, rest);
  const int db = sorted.dims().total() / rho_a.dims().total();
  const Matrix op = linalg::kron(rho_a.matrix(), Matrix::Identity(db, db)) - sorted.matrix();
  ReductionReport report{HermOp(sorted.dims(), op), 0.0, false, std::nullopt};
  const auto es = linalg::eigh(report.op.matrix());
  const Eigen::Index last = es.values.size() - 1;
  report.min_eigenvalue = es.values(last);
  report.violated = report.min_eigenvalue < -tol().psd;
  if (report.violated) {
    Vector best = linalg::fix_phase(es.vectors.col(last));
    for (Eigen::Index k = last - 1; k >= 0; --k) {
      if (es.values(k) - report.min_eigenvalue > 1e-9) break;
      Vector candidate = linalg::fix_phase(es.vectors.col(k));
      if (lex_less(candidate, best)) best = candidate;
    }
    report.witness = PureState(sorted.dims(), best.normalized());
  }
  return report;
}

ReductionReport reduction_check(const DensityOp& rho) {
  if (rho.dims().size() != 2) throw LabelError("reduction_check: state is not bipartite");
  const std::vector<std::string> a{rho.dims().labels()[0]};
  return reduction_check(rho, a);
}

double ConditionalState::max_eigenvalue() const { return linalg::eigh(op.matrix()).values(0); }

ConditionalState conditional_state(const DensityOp& rho) {
  if (rho.dims().size() != 2) throw LabelError("conditional_state: state is not bipartite");
  const auto& labels = rho.dims().labels();
  const int da = rho.dims().dims()[0];
  const int db = rho.dims().dims()[1];
  const std::vector<std::string> traced{labels[1]};
  const auto es = linalg::eigh(partial_trace(rho.op(), traced).matrix());
  constexpr double support_cutoff = 1e-12;
  int s = 0;
  while (s < da && es.values(s) > support_cutoff) ++s;
  Matrix g;
  Matrix support;
  if (s == da) {
    g = linalg::psd_power(partial_trace(rho.op(), traced).matrix(), -0.5, support_cutoff);
    support = Matrix::Identity(da, da);
  } else {
    support = Matrix(da, s);
    for (int k = 0; k < s; ++k) support.col(k) = linalg::fix_phase(es.vectors.col(k));
    g = (es.values.head(s).cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
         support.adjoint())
            .eval();
  }
  const Matrix lift = linalg::kron(g, Matrix::Identity(db, db));
  return {HermOp(SystemDims({labels[0], labels[1]}, {static_cast<int>(g.rows()), db}),
                 lift * rho.matrix() * lift.adjoint()),
          support};
}

DensityOp werner_state(int d, double lambda) {
  if (d < 2) throw DomainError("werner_state: d must be >= 2");
  if (!(lambda >= -1.0 && lambda <= 1.0)) {
    throw DomainError("werner_state: lambda must lie in [-1, 1]");
  }
  const double dd = d;
  const Matrix f = swap_operator(d).matrix();
  const Matrix rho =
      ((dd - lambda) * Matrix::Identity(d * d, d * d) + (dd * lambda - 1.0) * f) /
      (dd * dd * dd - dd);
  return DensityOp(SystemDims({"A", "B"}, {d, d}), rho);
}

Channel qutrit_fold_channel(std::string in, std::string out) {
  Matrix p = Matrix::Zero(2, 3);
  p(0, 0) = 1.0;
  p(1, 1) = 1.0;
  Matrix q = Matrix::Zero(2, 3);
  q(0, 2) = 1.0;
  return Channel::from_kraus(SystemDims::single(std::move(in), 3),
                             SystemDims::single(std::move(out), 2), {p, q});
}

double processed_werner_min_eig(double lambda) {
  const DensityOp rho = werner_state(3, lambda);
  const std::vector<std::string> first{"A"};
  const HermOp pt = partial_transpose(rho.op(), first);
  const HermOp out = apply_kraus(qutrit_fold_channel(), pt, "B");
  const auto es = eig_hermitian(out);
  return es.values(es.values.size() - 1);
}

double processed_werner_min_eig_closed_form(double lambda) {
  if (lambda <= 1.0 / 3.0) {
    return (7.0 + 3.0 * lambda - std::sqrt(13.0 - 30.0 * lambda + 37.0 * lambda * lambda)) / 48.0;
  }
  return (3.0 - lambda) / 24.0;
}

std::optional<ViolatingChannel> find_violating_channel(const DensityOp& rho, int dim_c,
                                                       int seeds, std::uint64_t base_seed) {
  if (dim_c < 2) throw DomainError("find_violating_channel: |C| must be >= 2");
  if (rho.dims().size() != 2) throw LabelError("find_violating_channel: state is not bipartite");
  SeesawOptions opts;
  opts.restarts = std::max(1, seeds);
  opts.seed = base_seed;
  const SeesawResult res = lambda_star(rho, dim_c, opts);
  if (!res.channel) return std::nullopt;
  const DensityOp out = apply_channel(*res.channel, rho, rho.dims().labels()[1]);
  auto report = reduction_check(out);
  if (!report.violated) return std::nullopt;
  return ViolatingChannel{*res.channel, std::move(report), static_cast<int>(res.best_restart)};
}

}  // namespace tdc
