#include "tdc/channel.hpp"

#include <cmath>

#include "tdc/errors.hpp"
#include "tdc/tolerances.hpp"

namespace tdc {

namespace {

void validate_kraus(const std::vector<Matrix>& kraus, int dim_in, int dim_out) {
  if (kraus.empty()) throw ValidationError("Channel: empty Kraus list");
  Matrix sum = Matrix::Zero(dim_in, dim_in);
  for (const auto& k : kraus) {
    if (k.rows() != dim_out || k.cols() != dim_in) {
      throw DimensionError("Channel: Kraus operator is " + std::to_string(k.rows()) + "x" +
                           std::to_string(k.cols()) + ", expected " + std::to_string(dim_out) +
                           "x" + std::to_string(dim_in));
    }
    sum += k.adjoint() * k;
  }
  const double err = linalg::max_abs(sum - Matrix::Identity(dim_in, dim_in));
  if (err > tol().cptp) {
    throw ValidationError("Channel: Kraus operators are not trace preserving (residual " +
                          std::to_string(err) + ")");
  }
}

void validate_choi(const Matrix& choi, int dim_in, int dim_out) {
  if (choi.rows() != dim_in * dim_out || choi.cols() != dim_in * dim_out) {
    throw DimensionError("Channel: Choi matrix has wrong size");
  }
  const auto es = linalg::eigh(linalg::hermitian_part(choi));
  if (es.values(es.values.size() - 1) < -tol().psd) {
    throw ValidationError("Channel: Choi matrix is not positive semidefinite (eigenvalue " +
                          std::to_string(es.values(es.values.size() - 1)) + ")");
  }
  const std::vector<int> dims{dim_in, dim_out};
  const Matrix marginal = linalg::partial_trace(choi, dims, {false, true});
  const double err = linalg::max_abs(marginal - Matrix::Identity(dim_in, dim_in));
  if (err > tol().cptp) {
    throw ValidationError("Channel: partial trace of the Choi matrix is not the identity "
                          "(residual " +
                          std::to_string(err) + ")");
  }
}

SystemDims check_dims(const SystemDims& in, const SystemDims& out) {
  return in.concat(out);  // rejects shared labels
}

}  // namespace

Channel::Channel(SystemDims in, SystemDims out, std::vector<Matrix> kraus, HermOp choi)
    : in_(std::move(in)), out_(std::move(out)), kraus_(std::move(kraus)), choi_(std::move(choi)) {}

Channel Channel::from_kraus(SystemDims in, SystemDims out, std::vector<Matrix> kraus) {
  auto joint = check_dims(in, out);
  validate_kraus(kraus, in.total(), out.total());
  HermOp choi(std::move(joint), choi_from_kraus(kraus, in.total()));
  return Channel(std::move(in), std::move(out), std::move(kraus), std::move(choi));
}

Channel Channel::from_choi(SystemDims in, SystemDims out, Matrix choi) {
  auto joint = check_dims(in, out);
  validate_choi(choi, in.total(), out.total());
  auto kraus = kraus_from_choi(choi, in.total(), out.total());
  validate_kraus(kraus, in.total(), out.total());
  return Channel(std::move(in), std::move(out), std::move(kraus),
                 HermOp(std::move(joint), std::move(choi)));
}

Channel Channel::from_both(SystemDims in, SystemDims out, std::vector<Matrix> kraus,
                           Matrix choi) {
  auto joint = check_dims(in, out);
  validate_kraus(kraus, in.total(), out.total());
  validate_choi(choi, in.total(), out.total());
  const double err = linalg::max_abs(choi_from_kraus(kraus, in.total()) - choi);
  if (err > tol().cptp) {
    throw ValidationError("Channel: Kraus and Choi representations disagree (residual " +
                          std::to_string(err) + ")");
  }
  return Channel(std::move(in), std::move(out), std::move(kraus),
                 HermOp(std::move(joint), std::move(choi)));
}

Channel Channel::then_unitary(const Matrix& u) const {
  if (u.rows() != dim_out() || u.cols() != dim_out()) {
    throw DimensionError("then_unitary: unitary does not match the output dimension");
  }
  std::vector<Matrix> k;
  k.reserve(kraus_.size());
  for (const auto& op : kraus_) k.push_back(u * op);
  return from_kraus(in_, out_, std::move(k));
}

Matrix choi_from_kraus(const std::vector<Matrix>& kraus, int dim_in) {
  if (kraus.empty()) throw ValidationError("choi_from_kraus: empty Kraus list");
  const Eigen::Index dim_out = kraus.front().rows();
  Matrix j = Matrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (const auto& k : kraus) {
    // column vector Σ_i |i> ⊗ K|i>
    Vector v(dim_in * dim_out);
    for (int i = 0; i < dim_in; ++i) v.segment(i * dim_out, dim_out) = k.col(i);
    j += v * v.adjoint();
  }
  return j;
}

HermOp choi_from_kraus(const Channel& ch) {
  return HermOp(ch.in_dims().concat(ch.out_dims()), choi_from_kraus(ch.kraus(), ch.dim_in()));
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, int dim_in, int dim_out) {
  const auto es = linalg::eigh(linalg::hermitian_part(choi));
  const double cutoff = 1e-13 * std::max(1.0, es.values(0));
  std::vector<Matrix> kraus;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) <= cutoff) break;
    const double s = std::sqrt(es.values(k));
    Matrix op(dim_out, dim_in);
    for (int i = 0; i < dim_in; ++i) {
      op.col(i) = s * es.vectors.col(k).segment(i * dim_out, dim_out);
    }
    kraus.push_back(std::move(op));
  }
  if (kraus.empty()) throw ValidationError("kraus_from_choi: Choi matrix is zero");
  return kraus;
}

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& x, std::span<const int> dims,
                   std::size_t target) {
  Matrix out;
  for (const auto& k : kraus) {
    const Matrix e = linalg::embed(k, dims, target);
    if (out.size() == 0) {
      out = e * x * e.adjoint();
    } else {
      out += e * x * e.adjoint();
    }
  }
  return out;
}

namespace {

struct Placement {
  std::size_t pos;
  SystemDims out_dims;
};

Placement place_output(const Channel& ch, const SystemDims& dims, std::string_view target) {
  const std::size_t pos = dims.index_of(target);
  if (dims.dims()[pos] != ch.dim_in()) {
    throw DimensionError("apply_channel: factor '" + std::string(target) + "' has dimension " +
                         std::to_string(dims.dims()[pos]) + " but the channel expects " +
                         std::to_string(ch.dim_in()));
  }
  std::vector<std::string> labels;
  std::vector<int> ds;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (s == pos) {
      labels.push_back(ch.out_dims().labels().size() == 1 ? ch.out_dims().labels()[0]
                                                          : std::string(target));
      ds.push_back(ch.dim_out());
    } else {
      labels.push_back(dims.labels()[s]);
      ds.push_back(dims.dims()[s]);
    }
  }
  return {pos, SystemDims(std::move(labels), std::move(ds))};
}

}  // namespace

HermOp apply_kraus(const Channel& ch, const HermOp& x, std::string_view target) {
  auto placed = place_output(ch, x.dims(), target);
  return HermOp(std::move(placed.out_dims),
                apply_kraus(ch.kraus(), x.matrix(), x.dims().dims(), placed.pos));
}

HermOp apply_choi(const Channel& ch, const HermOp& x, std::string_view target) {
  auto placed = place_output(ch, x.dims(), target);
  const auto& dims = x.dims().dims();
  const std::size_t k = dims.size();
  // move target last
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < k; ++s) {
    if (s != placed.pos) order.push_back(s);
  }
  order.push_back(placed.pos);
  const Matrix xs = linalg::permute_systems(x.matrix(), dims, order);
  const int dt = ch.dim_in();
  const int dout = ch.dim_out();
  const int dr = x.dims().total() / dt;
  const Matrix& j = ch.choi().matrix();
  // Y[(r,o),(r2,o2)] = Σ_{t,t2} X[(r,t2),(r2,t)] J[(t2,o),(t,o2)]
  Matrix y = Matrix::Zero(dr * dout, dr * dout);
  for (int r = 0; r < dr; ++r) {
    for (int r2 = 0; r2 < dr; ++r2) {
      for (int t = 0; t < dt; ++t) {
        for (int t2 = 0; t2 < dt; ++t2) {
          const Complex xv = xs(r * dt + t2, r2 * dt + t);
          if (xv == Complex(0.0)) continue;
          for (int o = 0; o < dout; ++o) {
            for (int o2 = 0; o2 < dout; ++o2) {
              y(r * dout + o, r2 * dout + o2) += xv * j(t2 * dout + o, t * dout + o2);
            }
          }
        }
      }
    }
  }
  // move the output factor back into place
  std::vector<int> tmp_dims;
  for (std::size_t s = 0; s < k; ++s) {
    if (s != placed.pos) tmp_dims.push_back(dims[s]);
  }
  tmp_dims.push_back(dout);
  std::vector<std::size_t> back(k);
  for (std::size_t s = 0, src = 0; s < k; ++s) {
    back[s] = s == placed.pos ? k - 1 : src++;
  }
  return HermOp(std::move(placed.out_dims), linalg::permute_systems(y, tmp_dims, back));
}

HermOp apply_channel(const Channel& ch, const HermOp& x, std::string_view target) {
  return apply_kraus(ch, x, target);
}

DensityOp apply_channel(const Channel& ch, const DensityOp& x, std::string_view target) {
  return DensityOp(apply_kraus(ch, x.op(), target));
}

Channel identity_channel(int d, std::string in, std::string out) {
  return Channel::from_kraus(SystemDims::single(std::move(in), d),
                             SystemDims::single(std::move(out), d), {Matrix::Identity(d, d)});
}

Channel prepare_channel(int dim_in, int dim_out, int k, std::string in, std::string out) {
  if (k < 0 || k >= dim_out) throw DomainError("prepare_channel: state index out of range");
  std::vector<Matrix> kraus;
  for (int j = 0; j < dim_in; ++j) {
    Matrix op = Matrix::Zero(dim_out, dim_in);
    op(k, j) = 1.0;
    kraus.push_back(std::move(op));
  }
  return Channel::from_kraus(SystemDims::single(std::move(in), dim_in),
                             SystemDims::single(std::move(out), dim_out), std::move(kraus));
}

Channel depolarizing_channel(int dim_in, int dim_out, std::string in, std::string out) {
  std::vector<Matrix> kraus;
  const double s = 1.0 / std::sqrt(static_cast<double>(dim_out));
  for (int o = 0; o < dim_out; ++o) {
    for (int j = 0; j < dim_in; ++j) {
      Matrix op = Matrix::Zero(dim_out, dim_in);
      op(o, j) = s;
      kraus.push_back(std::move(op));
    }
  }
  return Channel::from_kraus(SystemDims::single(std::move(in), dim_in),
                             SystemDims::single(std::move(out), dim_out), std::move(kraus));
}

Channel measure_prepare_channel(int d, std::string in, std::string out) {
  std::vector<Matrix> kraus;
  for (int j = 0; j < d; ++j) {
    Matrix op = Matrix::Zero(d, d);
    op(j, j) = 1.0;
    kraus.push_back(std::move(op));
  }
  return Channel::from_kraus(SystemDims::single(std::move(in), d),
                             SystemDims::single(std::move(out), d), std::move(kraus));
}

Channel truncating_identity(int dim_in, int dim_out, std::string in, std::string out) {
  std::vector<Matrix> kraus;
  Matrix p = Matrix::Zero(dim_out, dim_in);
  for (int i = 0; i < std::min(dim_in, dim_out); ++i) p(i, i) = 1.0;
  kraus.push_back(std::move(p));
  for (int j = dim_out; j < dim_in; ++j) {
    Matrix q = Matrix::Zero(dim_out, dim_in);
    q(0, j) = 1.0;
    kraus.push_back(std::move(q));
  }
  return Channel::from_kraus(SystemDims::single(std::move(in), dim_in),
                             SystemDims::single(std::move(out), dim_out), std::move(kraus));
}

}  // namespace tdc
