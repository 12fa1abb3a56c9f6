#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tdc/errors.hpp"
#include "tdc/random.hpp"
#include "tdc/teleport.hpp"

using namespace tdc;
using oracle::eye;

namespace {

// Λ(|j><k|) = Σ_i tr_{C'A}[(Π^i ⊗ I)(|j><k| ⊗ ω^i)], assembled into a Choi matrix
// from basis sums only.
Matrix oracle_channel_choi(const TeleportProtocol& p) {
  const int dc = p.dim_c();
  const int da = p.dim_a();
  const auto ens = decoded_ensemble(p);
  Matrix j = Matrix::Zero(dc * dc, dc * dc);
  for (int a = 0; a < dc; ++a) {
    for (int b = 0; b < dc; ++b) {
      Matrix out = Matrix::Zero(dc, dc);
      for (int i = 0; i < p.n(); ++i) {
        const Matrix joint = oracle::kron(oracle::unit(dc, a, b), ens.states[i].matrix());
        const Matrix w = oracle::kron(p.povm()[i].matrix(), eye(dc)) * joint;
        out += oracle::trace_first(w, dc * da, dc);
      }
      j += oracle::kron(oracle::unit(dc, a, b), out);
    }
  }
  return j;
}

// <Φ+|J/d|Φ+> from a Choi matrix.
double oracle_fidelity(const Matrix& choi, int d) {
  Vector phi = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return (phi.adjoint() * (choi / d) * phi)(0, 0).real();
}

}  // namespace

TEST_CASE("decoded ensemble") {
  SUBCASE("identity decoders on a maximally entangled resource") {
    const auto phi = max_entangled(2).density();
    std::vector<Matrix> effects{eye(4) / 2.0, eye(4) / 2.0};
    const TeleportProtocol p(phi, Povm(SystemDims({"C'", "A"}, {2, 2}), effects),
                             {identity_channel(2), identity_channel(2)}, 2);
    for (const auto& w : decoded_ensemble(p).states) {
      CHECK(oracle::max_abs(w.matrix() - phi.matrix()) < 1e-15);
      CHECK(w.dims() == SystemDims({"A", "C"}, {2, 2}));
    }
  }
  SUBCASE("preparation decoders give product states") {
    Rng rng(3);
    const auto rho = random_density(rng, SystemDims({"A", "B"}, {2, 3}));
    const auto p = classical_protocol(rho, 3);
    const std::vector<std::string> b{"B"};
    const Matrix rho_a = partial_trace(rho, b).matrix();
    const auto ens = decoded_ensemble(p);
    for (int i = 0; i < 3; ++i) {
      CHECK(oracle::max_abs(ens.states[i].matrix() - oracle::kron(rho_a, oracle::unit(3, i, i))) <
            1e-14);
    }
  }
  SUBCASE("every decoded state has marginal rho_A") {
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = random_protocol(rng, 3, 2, 2, 3);
      const std::vector<std::string> b{"B"};
      const Matrix rho_a = partial_trace(p.rho_ab(), b).matrix();
      for (const auto& w : decoded_ensemble(p).states) {
        CHECK(oracle::max_abs(oracle::trace_second(w.matrix(), 3, 2) - rho_a) < 1e-9);
      }
    }
  }
}

TEST_CASE("protocol construction validates its parts") {
  const auto phi = max_entangled(2).density();
  const Povm good(SystemDims({"C'", "A"}, {2, 2}), {eye(4)});
  CHECK_THROWS_AS(TeleportProtocol(phi, good, {identity_channel(2), identity_channel(2)}, 2),
                  DimensionError);
  CHECK_THROWS_AS(TeleportProtocol(phi, good, {identity_channel(3)}, 2), DimensionError);
  const Povm wrong_labels(SystemDims({"A", "C'"}, {2, 2}), {eye(4)});
  CHECK_THROWS_AS(TeleportProtocol(phi, wrong_labels, {identity_channel(2)}, 2), LabelError);
  CHECK_NOTHROW(TeleportProtocol(phi, good, {identity_channel(2)}, 2));
}

TEST_CASE("teleportation channel") {
  SUBCASE("standard protocol realises the identity") {
    for (int d = 2; d <= 3; ++d) {
      const Channel lam = teleportation_channel(standard_protocol(d));
      CHECK(oracle::max_abs(lam.choi().matrix() - identity_channel(d).choi().matrix()) < 1e-12);
      CHECK(lam.in_dims() == SystemDims::single("C'", d));
      CHECK(lam.out_dims() == SystemDims::single("C", d));
    }
  }
  SUBCASE("classical protocol realises measure and prepare") {
    const Channel lam = teleportation_channel(classical_protocol(2, 3));
    CHECK(oracle::max_abs(lam.choi().matrix() - measure_prepare_channel(3).choi().matrix()) < 1e-14);
  }
  SUBCASE("maximally mixed resource with standard measurement depolarises") {
    for (int d = 2; d <= 3; ++d) {
      const auto std_p = standard_protocol(d);
      const DensityOp mixed(SystemDims({"A", "B"}, {d, d}), eye(d * d) / (d * d));
      const TeleportProtocol p(mixed, std_p.povm(), std_p.decoders(), d);
      const Channel lam = teleportation_channel(p);
      CHECK(oracle::max_abs(lam.choi().matrix() - eye(d * d) / d) < 1e-13);
      CHECK(entanglement_fidelity(lam) == doctest::Approx(1.0 / (d * d)));
    }
  }
  SUBCASE("matches the basis-sum construction on random protocols") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const auto p = random_protocol(rng, 1 + trial % 3, 1 + (trial / 3) % 3, 1 + (trial / 9) % 3,
                                     1 + trial % 5);
      const Matrix j = oracle_channel_choi(p);
      CHECK(oracle::max_abs(teleportation_channel(p).choi().matrix() - j) < 1e-12);
    }
  }
}

TEST_CASE("entanglement fidelity") {
  CHECK(entanglement_fidelity(identity_channel(2)) == doctest::Approx(1.0));
  for (int d = 2; d <= 4; ++d) {
    CHECK(entanglement_fidelity(depolarizing_channel(d, d)) == doctest::Approx(1.0 / (d * d)));
    CHECK(entanglement_fidelity(measure_prepare_channel(d)) == doctest::Approx(1.0 / d));
  }
  CHECK_THROWS_AS(entanglement_fidelity(truncating_identity(3, 2)), DimensionError);
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Channel ch = random_channel(rng, SystemDims::single("B", 3), SystemDims::single("C", 3));
    const double f = entanglement_fidelity(ch);
    CHECK(f == doctest::Approx(oracle_fidelity(oracle::choi(ch.kraus()), 3)).epsilon(1e-12));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("fidelity via discrimination") {
  SUBCASE("standard d = 2") {
    const auto r = fidelity_via_discrimination(standard_protocol(2));
    CHECK(r.p_succ == doctest::Approx(1.0));
    CHECK(r.fidelity == doctest::Approx(1.0));
  }
  SUBCASE("classical |C| = 3") {
    CHECK(fidelity_via_discrimination(classical_protocol(2, 3)).fidelity ==
          doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("agrees with the channel fidelity on random protocols") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
      const int da = rng.uniform_int(1, 3);
      const int db = rng.uniform_int(1, 3);
      const int dc = rng.uniform_int(1, 3);
      const int n = rng.uniform_int(1, 9);
      const auto p = random_protocol(rng, da, db, dc, n);
      const auto disc = fidelity_via_discrimination(p);
      const double f_channel = entanglement_fidelity(teleportation_channel(p));
      CHECK(std::abs(f_channel - static_cast<double>(n) / (dc * dc) * disc.p_succ) <= 1e-9);
      // dimension bound
      CHECK(f_channel <= static_cast<double>(da) / dc + 1e-9);
    }
  }
  SUBCASE("moving effects between orderings is a pure swap") {
    Rng rng(6);
    const Matrix x = oracle::random_hermitian(rng, 6);  // on (C',A) = (2,3)
    const Matrix moved = effect_cprime_a_to_ac(x, 2, 3);
    // F|c>|a> = |a>|c>
    Matrix f = Matrix::Zero(6, 6);
    for (int c = 0; c < 2; ++c) {
      for (int a = 0; a < 3; ++a) {
        f += oracle::kron(oracle::basis(3, a), oracle::basis(2, c)) *
             oracle::kron(oracle::basis(2, c), oracle::basis(3, a)).adjoint();
      }
    }
    CHECK(oracle::max_abs(moved - f * x * f.adjoint()) < 1e-15);
    CHECK(oracle::max_abs(effect_ac_to_cprime_a(moved, 3, 2) - x) == 0.0);
  }
}

TEST_CASE("dimension bound and its saturation") {
  SUBCASE("|A| = 1 classical protocol") {
    for (int dc = 2; dc <= 4; ++dc) {
      const auto r = dim_bound_check(classical_protocol(1, dc));
      CHECK(r.bound == doctest::Approx(1.0 / dc));
      CHECK(r.saturated);
    }
  }
  SUBCASE("standard protocol") {
    for (int d = 2; d <= 3; ++d) {
      const auto r = dim_bound_check(standard_protocol(d));
      CHECK(r.bound == doctest::Approx(1.0));
      CHECK(r.saturated);
    }
  }
  SUBCASE("random noisy protocol") {
    Rng rng(1);
    const auto r = dim_bound_check(random_protocol(rng, 2, 2, 2, 4));
    CHECK_FALSE(r.saturated);
  }
}

TEST_CASE("average fidelity") {
  CHECK(average_fidelity(1.0, 2) == doctest::Approx(1.0));
  CHECK(average_fidelity(0.5, 2) == doctest::Approx(2.0 / 3.0));
  for (int d = 2; d <= 5; ++d) CHECK(average_fidelity(1.0 / (d * d), d) == doctest::Approx(1.0 / d));
  CHECK_THROWS_AS(average_fidelity(1.5, 2), DomainError);
  CHECK_THROWS_AS(average_fidelity(0.5, 1), DomainError);
}

TEST_CASE("Haar-averaged fidelity matches the closed form") {
  Rng rng(99);
  const int d = 2;
  for (const Channel& ch : {identity_channel(d), depolarizing_channel(d, d), measure_prepare_channel(d)}) {
    const int samples = 20000;
    double sum = 0.0;
    double sq = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Vector psi = haar_vector(rng, d);
      double v = 0.0;
      for (const auto& k : ch.kraus()) v += std::norm(psi.dot(k * psi));
      sum += v;
      sq += v * v;
    }
    const double mean = sum / samples;
    const double se = std::sqrt(std::max(sq / samples - mean * mean, 0.0) / samples);
    const double expected = average_fidelity(entanglement_fidelity(ch), d);
    CHECK(std::abs(mean - expected) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("standard protocol structure") {
  for (int d = 2; d <= 3; ++d) {
    const auto p = standard_protocol(d);
    CHECK(p.n() == d * d);
    // Gram matrix of the effects is the identity: pairwise orthogonal rank-one projectors
    for (int i = 0; i < p.n(); ++i) {
      for (int j = 0; j < p.n(); ++j) {
        const double g = trace_product(p.povm()[i].matrix(), p.povm()[j].matrix());
        CHECK(g == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
    CHECK(fidelity_via_discrimination(p).fidelity == doctest::Approx(1.0).epsilon(1e-9));
  }
  const Matrix w = heisenberg_weyl(3, 1, 0);
  CHECK(std::abs(w(1, 0) - 1.0) < 1e-15);
  const Matrix z = heisenberg_weyl(3, 0, 1);
  CHECK(std::abs(z(1, 1) - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < 1e-15);
}

TEST_CASE("classical protocol reaches exactly 1/|C|") {
  Rng rng(31);
  for (int dc = 2; dc <= 5; ++dc) {
    CHECK(fidelity_via_discrimination(classical_protocol(2, dc)).fidelity ==
          doctest::Approx(1.0 / dc).epsilon(1e-12));
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = random_density(rng, SystemDims({"A", "B"}, {2, 2}));
      const auto p = classical_protocol(rho, dc);
      CHECK(p.n() == dc);
      CHECK(std::abs(entanglement_fidelity(teleportation_channel(p)) - 1.0 / dc) <= 1e-12);
    }
  }
}
