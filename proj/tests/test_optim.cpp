#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tdc/errors.hpp"
#include "tdc/optim.hpp"
#include "tdc/random.hpp"
#include "tdc/synth.hpp"
#include "tdc/witness.hpp"

using namespace tdc;
using oracle::eye;

namespace {

DensityOp qubit(const Vector& v) {
  return DensityOp(SystemDims::single("X", 2), v * v.adjoint());
}

Ensemble trine() {
  std::vector<DensityOp> states;
  for (int k = 0; k < 3; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 3.0;
    Vector v(2);
    v << std::cos(t / 2.0), std::sin(t / 2.0);
    states.push_back(qubit(v));
  }
  return Ensemble::uniform(std::move(states));
}

void check_monotone(const std::vector<double>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] >= trace[i - 1] - 1e-9);
}

SeesawOptions quick(int restarts, std::uint64_t seed = 0) {
  SeesawOptions o;
  o.restarts = restarts;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("state discrimination") {
  SUBCASE("two states match the trace-norm formula") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = qubit(haar_vector(rng, 2));
      const auto b = qubit(haar_vector(rng, 2));
      const double p = 0.1 + 0.8 * rng.uniform();
      const Ensemble ens({p, 1.0 - p}, {a, b});
      const auto res = optimal_discrimination(ens);
      CHECK(res.p_star == doctest::Approx(oracle::helstrom(a.matrix(), b.matrix(), p)).epsilon(1e-7));
      CHECK(res.gap() >= -1e-9);
      CHECK(res.gap() <= 1e-6);
    }
  }
  SUBCASE("mixed qutrit pairs") {
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_density(rng, SystemDims::single("X", 3));
      const auto b = random_density(rng, SystemDims::single("X", 3));
      const auto res = optimal_discrimination(Ensemble::uniform({a, b}));
      CHECK(res.p_star == doctest::Approx(oracle::helstrom(a.matrix(), b.matrix(), 0.5)).epsilon(1e-7));
    }
  }
  SUBCASE("trine") {
    const auto ens = trine();
    const auto res = optimal_discrimination(ens);
    CHECK(std::abs(res.p_star - 2.0 / 3.0) <= 1e-6);
    CHECK(res.gap() <= 1e-6);
    CHECK(min_entropy(ens) == doctest::Approx(-std::log2(res.p_star)));
    CHECK(succ_prob(ens, pretty_good_measurement(ens)) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  }
  SUBCASE("dual certificate is feasible") {
    Rng rng(33);
    std::vector<DensityOp> states;
    for (int k = 0; k < 4; ++k) states.push_back(random_density(rng, SystemDims::single("X", 3)));
    const auto ens = Ensemble::uniform(states);
    const auto res = optimal_discrimination(ens);
    for (std::size_t k = 0; k < ens.size(); ++k) {
      const Matrix slack = res.dual - ens.priors()[k] * ens.states()[k].matrix();
      CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(slack).eigenvalues().minCoeff() > -1e-8);
    }
    CHECK(res.dual_value == doctest::Approx(res.dual.trace().real()));
    CHECK(succ_prob(ens, res.povm) == doctest::Approx(res.p_star).epsilon(1e-12));
    CHECK(succ_prob(ens, pretty_good_measurement(ens)) <= res.p_star + 1e-9);
  }
  SUBCASE("entropies") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.1) == doctest::Approx(0.4689955935892812));
    // identical states: guessing the prior
    const auto s = qubit(oracle::basis(2, 0));
    CHECK(min_entropy(Ensemble({0.75, 0.25}, {s, s})) == doctest::Approx(-std::log2(0.75)).epsilon(1e-7));
  }
  SUBCASE("ensemble validation") {
    const auto s = qubit(oracle::basis(2, 0));
    CHECK_THROWS(Ensemble({0.5, 0.6}, {s, s}));
    CHECK_THROWS(Ensemble({1.0}, {s, s}));
    CHECK_THROWS(Ensemble({0.5, 0.5}, {s, DensityOp(SystemDims::single("X", 3), eye(3) / 3.0)}));
  }
}

TEST_CASE("channel objective") {
  Rng rng(41);
  const int da = 2, db = 3, dc = 2;
  const Matrix k = random_density(rng, SystemDims({"A", "B"}, {da, db})).matrix();
  const Matrix w = oracle::random_hermitian(rng, da * dc);
  const Matrix g = channel_gradient(k, w, da, db, dc);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ch = random_channel(rng, SystemDims::single("B", db), SystemDims::single("C", dc), 3);
    const Matrix out = oracle::apply_second(ch.kraus(), k, da);
    const double direct = (w * out).trace().real();
    const double via_choi = (oracle::choi(ch.kraus()) * g).trace().real();
    CHECK(direct == doctest::Approx(via_choi).epsilon(1e-12));
  }

  const Matrix best = best_channel_choi(g, db, dc);
  CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(best).eigenvalues().minCoeff() > -1e-8);
  CHECK(oracle::max_abs(oracle::trace_second(best, db, dc) - eye(db)) < 1e-8);
  const double value = (best * g).trace().real();
  for (int trial = 0; trial < 50; ++trial) {
    const auto ch = random_channel(rng, SystemDims::single("B", db), SystemDims::single("C", dc),
                                   rng.uniform_int(2, 6));
    CHECK((oracle::choi(ch.kraus()) * g).trace().real() <= value + 1e-7);
  }
}

TEST_CASE("processed conditional eigenvalue search") {
  SUBCASE("maximally entangled qubits reach 2") {
    const auto res = lambda_star(max_entangled(2, "A", "B").density(), 2, quick(2));
    CHECK(res.value >= 2.0 - 1e-6);
    for (const auto& r : res.restarts) check_monotone(r.trace);
  }
  SUBCASE("separable states stay at most 1") {
    Rng rng(42);
    for (int trial = 0; trial < 3; ++trial) {
      const auto rho = random_separable(rng, 2, 2, 3);
      const auto res = lambda_star(DensityOp(SystemDims({"A", "B"}, {2, 2}), rho.matrix()), 2, quick(3, trial));
      CHECK(res.value <= 1.0 + 1e-6);
    }
  }
  SUBCASE("Werner lambda = -1 with |C| = 2") {
    const auto res = lambda_star(werner_state(3, -1.0), 2, quick(4));
    CHECK(res.value > 1.0);
    REQUIRE(res.channel.has_value());
    REQUIRE(res.sigma.has_value());
    const auto cond = conditional_state(apply_channel(*res.channel, werner_state(3, -1.0), "B"));
    CHECK(cond.max_eigenvalue() == doctest::Approx(res.value).epsilon(1e-6));
    CHECK(res.restarts.size() == 4);
    CHECK(res.value == res.restarts[res.best_restart].value);
    for (const auto& r : res.restarts) check_monotone(r.trace);
  }
}

TEST_CASE("teleportation fidelity search") {
  SUBCASE("maximally entangled qubits") {
    const auto res = maximize_teleportation_fidelity(max_entangled(2, "A", "B").density(), 2, 4, quick(2));
    CHECK(res.value >= 1.0 - 1e-6);
  }
  SUBCASE("separable resource cannot beat 1/|C|") {
    Rng rng(43);
    const auto rho = random_separable(rng, 2, 2, 3);
    const auto res = maximize_teleportation_fidelity(DensityOp(SystemDims({"A", "B"}, {2, 2}), rho.matrix()),
                                                     2, 4, quick(3));
    CHECK(res.value <= 0.5 + 1e-6);
    CHECK(res.value >= 0.5 - 1e-6);
  }
  SUBCASE("Werner lambda = -1 at least matches the constructive protocol") {
    const auto rho = werner_state(3, -1.0);
    const auto res = maximize_teleportation_fidelity(rho, 2, 4, quick(4));
    const auto omega = apply_channel(qutrit_fold_channel(), rho, "B");
    const auto synth = synthesize({rho, qutrit_fold_channel(), *reduction_check(omega).witness, 2});
    CHECK(res.value > 0.5);
    CHECK(res.value >= synth.fidelity - 1e-9);
    REQUIRE(res.protocol.has_value());
    CHECK(fidelity_via_discrimination(*res.protocol).fidelity == doctest::Approx(res.value).epsilon(1e-9));
    for (const auto& r : res.restarts) check_monotone(r.trace);
  }
  SUBCASE("fixed seed is reproducible and threading does not change results") {
    const auto rho = werner_state(3, -0.8);
    SeesawOptions o = quick(3, 7);
    o.max_iter = 40;
    const auto a = maximize_teleportation_fidelity(rho, 2, 4, o);
    const auto b = maximize_teleportation_fidelity(rho, 2, 4, o);
    o.parallel = false;
    const auto c = maximize_teleportation_fidelity(rho, 2, 4, o);
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
    CHECK(a.trace == c.trace);
    CHECK(a.best_restart == c.best_restart);
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(maximize_teleportation_fidelity(werner_state(2, 0.0), 2, 0), DomainError);
  }
}
