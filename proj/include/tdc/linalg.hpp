#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tdc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Raw dense kernels on matrices over a tensor product of factors with
/// dimensions `dims` (last factor fastest). The labelled wrappers in
/// operators.hpp validate and forward here.
namespace linalg {

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Reorders tensor factors: factor k of the result is factor `order[k]` of
/// the input.
Matrix permute_systems(const Matrix& x, std::span<const int> dims,
                       std::span<const std::size_t> order);
Vector permute_systems(const Vector& v, std::span<const int> dims,
                       std::span<const std::size_t> order);

/// Traces out every factor whose mask entry is true.
Matrix partial_trace(const Matrix& x, std::span<const int> dims,
                     const std::vector<bool>& traced);

/// Transposes every factor whose mask entry is true.
Matrix partial_transpose(const Matrix& x, std::span<const int> dims,
                         const std::vector<bool>& transposed);

/// I ⊗ op ⊗ I with `op` acting on factor `target`; `op` may be rectangular
/// (maps dims[target] to op.rows()).
Matrix embed(const Matrix& op, std::span<const int> dims, std::size_t target);

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};
EigenSystem eigh(const Matrix& h);

/// f(h) applied to the eigenvalues of Hermitian `h`; eigenvalues with
/// magnitude <= cutoff map to zero (generalised inverse powers).
Matrix psd_power(const Matrix& h, double exponent, double cutoff);

/// (x + x^dagger) / 2
Matrix hermitian_part(const Matrix& x);

double max_abs(const Matrix& x);

/// Multiplies `v` by a unit phase so that its first entry with modulus
/// above 1e-12 is real and positive.
Vector fix_phase(const Vector& v);

}  // namespace linalg
}  // namespace tdc
