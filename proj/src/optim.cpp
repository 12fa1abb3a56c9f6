#include "tdc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <functional>

#include "tdc/errors.hpp"
#include "tdc/random.hpp"
#include "tdc/sdp.hpp"
#include "tdc/tolerances.hpp"
#include "tdc/witness.hpp"

namespace tdc {

Ensemble::Ensemble(std::vector<double> priors, std::vector<DensityOp> states)
    : priors_(std::move(priors)), states_(std::move(states)) {
  if (states_.empty()) throw DimensionError("Ensemble: no states");
  if (priors_.size() != states_.size()) {
    throw DimensionError("Ensemble: priors and states differ in length");
  }
  double total = 0.0;
  for (double p : priors_) {
    if (!(p >= 0.0)) throw DomainError("Ensemble: negative prior");
    total += p;
  }
  if (std::abs(total - 1.0) > tol().trace) throw DomainError("Ensemble: priors do not sum to 1");
  for (const auto& s : states_) {
    if (!(s.dims() == states_.front().dims())) {
      throw DimensionError("Ensemble: states live on different systems");
    }
  }
}

Ensemble Ensemble::uniform(std::vector<DensityOp> states) {
  std::vector<double> priors(states.size(), states.empty() ? 0.0 : 1.0 / states.size());
  return Ensemble(std::move(priors), std::move(states));
}

double succ_prob(const Ensemble& ens, const Povm& m) {
  if (m.size() != ens.size()) throw DimensionError("succ_prob: POVM size differs from ensemble");
  if (m.dims().total() != ens.dims().total()) throw DimensionError("succ_prob: dimension mismatch");
  double sum = 0.0;
  for (std::size_t x = 0; x < ens.size(); ++x) {
    sum += ens.priors()[x] * trace_product(m[x].matrix(), ens.states()[x].matrix());
  }
  return sum;
}

Povm pretty_good_measurement(const Ensemble& ens) {
  std::vector<Matrix> weighted;
  for (std::size_t x = 0; x < ens.size(); ++x) {
    weighted.push_back(ens.priors()[x] * ens.states()[x].matrix());
  }
  return Povm(ens.dims(), normalize_effects(std::move(weighted)));
}

DiscriminationResult optimal_discrimination(const Ensemble& ens) {
  std::vector<Matrix> targets;
  for (std::size_t x = 0; x < ens.size(); ++x) {
    targets.push_back(ens.priors()[x] * ens.states()[x].matrix());
  }
  auto sdp = solve_measurement_sdp(targets, ens.dims().total(), 1);
  Povm povm(ens.dims(), std::move(sdp.primal));
  const double p = succ_prob(ens, povm);
  DiscriminationResult res{std::move(povm), p, std::move(sdp.dual), sdp.dual_value};
  if (res.gap() > 1e-6) {
    throw ConvergenceError("optimal_discrimination: duality gap " + std::to_string(res.gap()));
  }
  return res;
}

double min_entropy(const Ensemble& ens) { return -std::log2(optimal_discrimination(ens).p_star); }

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

Matrix channel_gradient(const Matrix& k_ab, const Matrix& w_ac, int dim_a, int dim_b,
                        int dim_c) {
  if (k_ab.rows() != dim_a * dim_b || w_ac.rows() != dim_a * dim_c) {
    throw DimensionError("channel_gradient: operand sizes do not match dimensions");
  }
  Matrix g = Matrix::Zero(dim_b * dim_c, dim_b * dim_c);
  for (int t = 0; t < dim_b; ++t) {
    for (int t2 = 0; t2 < dim_b; ++t2) {
      for (int o = 0; o < dim_c; ++o) {
        for (int o2 = 0; o2 < dim_c; ++o2) {
          Complex s = 0.0;
          for (int a = 0; a < dim_a; ++a) {
            for (int a2 = 0; a2 < dim_a; ++a2) {
              s += w_ac(a2 * dim_c + o2, a * dim_c + o) * k_ab(a * dim_b + t2, a2 * dim_b + t);
            }
          }
          g(t * dim_c + o2, t2 * dim_c + o) = s;
        }
      }
    }
  }
  return linalg::hermitian_part(g);
}

Matrix best_channel_choi(const Matrix& g, int dim_b, int dim_c) {
  auto sdp = solve_measurement_sdp({g}, dim_b, dim_c);
  return linalg::hermitian_part(sdp.primal.front());
}

namespace {

// Runs every restart (concurrently when requested) and picks the best.
SeesawResult run_restarts(const SeesawOptions& opts,
                          const std::function<RestartRecord(int, SeesawResult&)>& run) {
  if (opts.restarts < 1) throw DomainError("see-saw: restarts must be >= 1");
  std::vector<SeesawResult> partial(opts.restarts);
  std::vector<RestartRecord> records(opts.restarts);
  if (opts.parallel && opts.restarts > 1) {
    std::vector<std::future<RestartRecord>> futures;
    for (int r = 0; r < opts.restarts; ++r) {
      futures.push_back(std::async(std::launch::async, [&, r] { return run(r, partial[r]); }));
    }
    for (int r = 0; r < opts.restarts; ++r) records[r] = futures[r].get();
  } else {
    for (int r = 0; r < opts.restarts; ++r) records[r] = run(r, partial[r]);
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].value > records[best].value) best = r;
  }
  SeesawResult out = std::move(partial[best]);
  out.value = records[best].value;
  out.iterations = records[best].iterations;
  out.trace = records[best].trace;
  out.converged = records[best].converged;
  out.best_restart = best;
  out.restarts = std::move(records);
  return out;
}

Matrix choi_of(const Channel& ch) { return ch.choi().matrix(); }

Channel channel_from_choi(const Matrix& j, int dim_b, int dim_c) {
  return Channel::from_choi(SystemDims::single(label::B, dim_b),
                            SystemDims::single(label::C, dim_c), j);
}

// (id ⊗ E)(X) for a Choi matrix J of E on (B,C); X on (R,B), result on (R,C).
Matrix apply_choi_raw(const Matrix& x, const Matrix& j, int dim_r, int dim_b, int dim_c) {
  Matrix y = Matrix::Zero(dim_r * dim_c, dim_r * dim_c);
  for (int r = 0; r < dim_r; ++r) {
    for (int r2 = 0; r2 < dim_r; ++r2) {
      for (int t = 0; t < dim_b; ++t) {
        for (int t2 = 0; t2 < dim_b; ++t2) {
          const Complex xv = x(r * dim_b + t, r2 * dim_b + t2);
          if (xv == 0.0) continue;
          y.block(r * dim_c, r2 * dim_c, dim_c, dim_c) +=
              xv * j.block(t * dim_c, t2 * dim_c, dim_c, dim_c);
        }
      }
    }
  }
  return y;
}

}  // namespace

SeesawResult lambda_star(const DensityOp& rho, int dim_c, const SeesawOptions& opts) {
  if (dim_c < 1) throw DomainError("lambda_star: |C| must be >= 1");
  const ConditionalState cond = conditional_state(rho);
  const Matrix k = cond.op.matrix();
  const int da = cond.op.dims().dims()[0];
  const int db = cond.op.dims().dims()[1];
  const int full_a = rho.dims().dims()[0];

  auto run = [&](int r, SeesawResult& slot) {
    RestartRecord rec{opts.seed + static_cast<std::uint64_t>(r), "", 0.0, {}, 0, false};
    Matrix j;
    if (r == 0) {
      rec.init = "truncating-identity";
      j = choi_of(truncating_identity(db, dim_c));
    } else if (r == 1) {
      rec.init = "depolarizing";
      j = choi_of(depolarizing_channel(db, dim_c));
    } else {
      rec.init = "random";
      Rng rng(rec.seed);
      j = choi_of(random_channel(rng, SystemDims::single(label::B, db),
                                 SystemDims::single(label::C, dim_c)));
    }
    Vector sigma;
    double value = -1.0;
    try {
      for (int it = 0; it < opts.max_iter; ++it) {
        const auto es = linalg::eigh(apply_choi_raw(k, j, da, db, dim_c));
        const double next = es.values(0);
        if (it > 0 && next < value) {
          // Not an improvement: keep the previous state and stop.
          rec.converged = true;
          break;
        }
        const double gain = next - value;
        value = next;
        sigma = es.vectors.col(0);
        rec.trace.push_back(value);
        rec.iterations = it + 1;
        if (it > 0 && gain < opts.tolerance) {
          rec.converged = true;
          break;
        }
        const Matrix w = sigma * sigma.adjoint();
        const Matrix g = channel_gradient(k, w, da, db, dim_c);
        const Matrix candidate = best_channel_choi(g, db, dim_c);
        if (trace_product(candidate, g) >= trace_product(j, g)) {
          j = candidate;
        } else {
          rec.converged = true;
          break;
        }
      }
    } catch (const ConvergenceError&) {
      rec.converged = false;
    }
    rec.value = value;
    if (sigma.size() > 0) {
      const Vector full = linalg::kron(cond.support, Matrix::Identity(dim_c, dim_c)) * sigma;
      slot.sigma = PureState(SystemDims({rho.dims().labels()[0], label::C}, {full_a, dim_c}),
                             linalg::fix_phase(full.normalized()));
    }
    slot.channel = channel_from_choi(j, db, dim_c);
    return rec;
  };
  return run_restarts(opts, run);
}

SeesawResult maximize_teleportation_fidelity(const DensityOp& rho, int dim_c, int n,
                                             const SeesawOptions& opts) {
  if (dim_c < 1) throw DomainError("maximize_teleportation_fidelity: |C| must be >= 1");
  if (n < 1) throw DomainError("maximize_teleportation_fidelity: N must be >= 1");
  if (rho.dims().size() != 2) {
    throw LabelError("maximize_teleportation_fidelity: state is not bipartite");
  }
  const int da = rho.dims().dims()[0];
  const int db = rho.dims().dims()[1];
  const DensityOp resource(SystemDims({label::A, label::B}, {da, db}), rho.matrix());
  const Matrix k = resource.matrix();
  const double dc2 = static_cast<double>(dim_c) * dim_c;

  auto run = [&](int r, SeesawResult& slot) {
    RestartRecord rec{opts.seed + static_cast<std::uint64_t>(r), "", 0.0, {}, 0, false};
    std::vector<Matrix> js;
    if (r == 0) {
      rec.init = "truncating-identity+weyl";
      const Channel base = truncating_identity(db, dim_c);
      for (int i = 0; i < n; ++i) {
        const int w = i % (dim_c * dim_c);
        js.push_back(choi_of(base.then_unitary(heisenberg_weyl(dim_c, w / dim_c, w % dim_c))));
      }
    } else if (r == 1) {
      rec.init = "classical-preparation";
      for (int i = 0; i < n; ++i) js.push_back(choi_of(prepare_channel(db, dim_c, i % dim_c)));
    } else {
      rec.init = "random";
      Rng rng(rec.seed);
      for (int i = 0; i < n; ++i) {
        js.push_back(choi_of(random_channel(rng, SystemDims::single(label::B, db),
                                            SystemDims::single(label::C, dim_c))));
      }
    }
    std::vector<Matrix> effects;
    double value = -1.0;
    try {
      for (int it = 0; it < opts.max_iter; ++it) {
        std::vector<Matrix> omegas;
        for (const auto& j : js) omegas.push_back(apply_choi_raw(k, j, da, db, dim_c));
        auto sdp = solve_measurement_sdp(omegas, da * dim_c, 1);
        double next = 0.0;
        for (int i = 0; i < n; ++i) next += trace_product(sdp.primal[i], omegas[i]);
        next /= dc2;
        if (it > 0 && next < value) {
          rec.converged = true;
          break;
        }
        const double gain = next - value;
        value = next;
        effects = std::move(sdp.primal);
        rec.trace.push_back(value);
        rec.iterations = it + 1;
        if (it > 0 && gain < opts.tolerance) {
          rec.converged = true;
          break;
        }
        std::vector<Matrix> candidates;
        double old_total = 0.0;
        double new_total = 0.0;
        for (int i = 0; i < n; ++i) {
          const Matrix g = channel_gradient(k, effects[i], da, db, dim_c);
          candidates.push_back(best_channel_choi(g, db, dim_c));
          old_total += trace_product(js[i], g);
          new_total += trace_product(candidates[i], g);
        }
        if (new_total < old_total) {
          rec.converged = true;
          break;
        }
        js = std::move(candidates);
      }
    } catch (const ConvergenceError&) {
      rec.converged = false;
    }
    if (!effects.empty()) {
      std::vector<Matrix> moved;
      for (const auto& e : effects) moved.push_back(effect_ac_to_cprime_a(e, da, dim_c));
      std::vector<Channel> decoders;
      for (const auto& j : js) decoders.push_back(channel_from_choi(j, db, dim_c));
      slot.protocol = TeleportProtocol(
          resource, Povm(SystemDims({label::Cin, label::A}, {dim_c, da}), std::move(moved)),
          std::move(decoders), dim_c);
      value = fidelity_via_discrimination(*slot.protocol).fidelity;
    }
    rec.value = value;
    return rec;
  };
  return run_restarts(opts, run);
}

}  // namespace tdc
