#pragma once

#include <cstdint>
#include <random>

#include "tdc/channel.hpp"
#include "tdc/povm.hpp"

namespace tdc {

/// Portable seeded generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Distributions are implemented here rather than with the
/// <random> distribution classes, whose algorithms are
/// implementation-defined:
///   uniform()  = (next() >> 11) * 2^-53
///   normal()   = Box-Muller on two uniforms, first output only
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();
  /// Standard complex Gaussian (E|z|^2 = 1).
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
};

Matrix ginibre(Rng& rng, int rows, int cols);
/// Haar-random pure state vector (normalised complex Gaussian).
Vector haar_vector(Rng& rng, int d);
Matrix haar_unitary(Rng& rng, int d);
/// Haar-random isometry C^cols -> C^rows (rows >= cols).
Matrix haar_isometry(Rng& rng, int rows, int cols);

/// Random density operator G G^dagger / tr, with G of size total x rank.
DensityOp random_density(Rng& rng, const SystemDims& dims, int rank = 0);
PureState random_pure(Rng& rng, const SystemDims& dims);

/// Channel from a Haar-random Stinespring isometry with `n_kraus` Kraus
/// operators (0: d_in * d_out).
Channel random_channel(Rng& rng, const SystemDims& in, const SystemDims& out,
                       int n_kraus = 0);

/// Random POVM with `n` effects (normalised random PSD operators).
Povm random_povm(Rng& rng, const SystemDims& dims, int n);

/// Random separable state: mixture of `terms` random product states.
DensityOp random_separable(Rng& rng, int dim_a, int dim_b, int terms);

}  // namespace tdc
