#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdc/teleport.hpp"

namespace tdc {

/// Prior-weighted list of states with common dimensions.
class Ensemble {
 public:
  Ensemble(std::vector<double> priors, std::vector<DensityOp> states);
  static Ensemble uniform(std::vector<DensityOp> states);

  const std::vector<double>& priors() const { return priors_; }
  const std::vector<DensityOp>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const SystemDims& dims() const { return states_.front().dims(); }

 private:
  std::vector<double> priors_;
  std::vector<DensityOp> states_;
};

/// Σ_x p_x tr(M_x ρ_x)
double succ_prob(const Ensemble& ens, const Povm& m);

Povm pretty_good_measurement(const Ensemble& ens);

struct DiscriminationResult {
  Povm povm;
  double p_star;      ///< succ_prob of `povm`
  Matrix dual;        ///< Y with Y >= p_x ρ_x for every x
  double dual_value;  ///< tr Y, an upper bound on the optimum
  double gap() const { return dual_value - p_star; }
};

/// Optimal discrimination with a dual certificate. Throws ConvergenceError
/// if the certified gap exceeds 1e-6.
DiscriminationResult optimal_discrimination(const Ensemble& ens);

/// H_min(X|B) of the cq state Σ_x p_x |x><x| ⊗ ρ_x in bits, so that
/// 2^{-H_min} is the optimal guessing probability.
double min_entropy(const Ensemble& ens);

/// h(p) in bits.
double binary_entropy(double p);

struct SeesawOptions {
  int restarts = 8;
  int max_iter = 200;
  std::uint64_t seed = 0;
  /// Stop when one full iteration improves the objective by less than this.
  double tolerance = 1e-10;
  bool parallel = true;
};

/// One see-saw run.
struct RestartRecord {
  std::uint64_t seed;
  std::string init;  ///< how the run was initialised
  double value;
  std::vector<double> trace;  ///< objective after every iteration
  int iterations;
  bool converged;
};

struct SeesawResult {
  double value;  ///< best value over restarts: a lower bound
  int iterations;
  std::vector<double> trace;
  bool converged;
  std::size_t best_restart;
  std::vector<RestartRecord> restarts;

  /// lambda_star: optimal channel and state on (A,C)
  std::optional<Channel> channel;
  std::optional<PureState> sigma;
  /// maximize_teleportation_fidelity: the protocol reaching `value`
  std::optional<TeleportProtocol> protocol;
};

/// Channel objective shared by both see-saws: for a state K on (A,B) and a
/// weight W on (A,C), the operator G on (B,C) with
///   tr[W (id ⊗ E)(K)] = tr[J_E G]  for every channel E with Choi J_E.
Matrix channel_gradient(const Matrix& k_ab, const Matrix& w_ac, int dim_a, int dim_b,
                        int dim_c);

/// Choi matrix (B,C) of the channel maximising tr[J G]; exact up to the
/// SDP gap.
Matrix best_channel_choi(const Matrix& g, int dim_b, int dim_c);

/// Lower bound on λ*(ρ) = max over channels E: B -> C of the top eigenvalue
/// of the conditional state of (id ⊗ E)(ρ). Values above 1 certify a
/// violation of the reduction criterion after processing.
SeesawResult lambda_star(const DensityOp& rho, int dim_c, const SeesawOptions& opts = {});

/// Lower bound on the best teleportation fidelity with N messages.
SeesawResult maximize_teleportation_fidelity(const DensityOp& rho, int dim_c, int n,
                                             const SeesawOptions& opts = {});

}  // namespace tdc
