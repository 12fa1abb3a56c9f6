#pragma once

#include <span>
#include <string>
#include <vector>

#include "tdc/linalg.hpp"
#include "tdc/system_dims.hpp"

namespace tdc {

/// Hermitian operator on a labelled tensor product. The stored matrix is
/// exactly Hermitian (symmetrised on construction after validation).
class HermOp {
 public:
  HermOp(SystemDims dims, Matrix matrix);

  static HermOp identity(SystemDims dims);

  const SystemDims& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  SystemDims dims_;
  Matrix matrix_;
};

/// Density operator: PSD, unit trace.
///
/// Eigenvalues in [-tol.psd, 0) are clamped to zero and the trace
/// renormalised; larger negativity or a trace off by more than tol.trace
/// is a ValidationError.
class DensityOp {
 public:
  explicit DensityOp(HermOp op);
  DensityOp(SystemDims dims, Matrix matrix)
      : DensityOp(HermOp(std::move(dims), std::move(matrix))) {}

  const HermOp& op() const { return op_; }
  const SystemDims& dims() const { return op_.dims(); }
  const Matrix& matrix() const { return op_.matrix(); }
  double purity() const;

  operator const HermOp&() const { return op_; }

 private:
  HermOp op_;
};

/// Unit vector on a labelled tensor product.
class PureState {
 public:
  PureState(SystemDims dims, Vector vector);

  const SystemDims& dims() const { return dims_; }
  const Vector& vector() const { return vector_; }
  DensityOp density() const;

 private:
  SystemDims dims_;
  Vector vector_;
};

HermOp tensor(const HermOp& a, const HermOp& b);
DensityOp tensor(const DensityOp& a, const DensityOp& b);
PureState tensor(const PureState& a, const PureState& b);

HermOp partial_trace(const HermOp& x, std::span<const std::string> labels);
DensityOp partial_trace(const DensityOp& x, std::span<const std::string> labels);

HermOp partial_transpose(const HermOp& x, std::span<const std::string> labels);

/// Permutes tensor factors into `order` (a permutation of the labels).
HermOp reorder(const HermOp& x, std::span<const std::string> order);
DensityOp reorder(const DensityOp& x, std::span<const std::string> order);
PureState reorder(const PureState& x, std::span<const std::string> order);

HermOp relabel(const HermOp& x, std::string_view from, std::string to);

/// |Φ+> = d^{-1/2} Σ_i |i>|i> on labels (left, right).
PureState max_entangled(int d, std::string left = "A", std::string right = "B");

/// Swap operator F|ij> = |ji> on labels (left, right).
HermOp swap_operator(int d, std::string left = "A", std::string right = "B");

linalg::EigenSystem eig_hermitian(const HermOp& x);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  ///< sqrt(sigma_i), descending
  Matrix left;                       ///< columns: orthonormal left vectors
  Matrix right;                      ///< columns: orthonormal right vectors
  SystemDims left_dims;
  SystemDims right_dims;
  int rank() const { return static_cast<int>(coefficients.size()); }
};

/// Schmidt decomposition across the cut (left_labels | rest). Coefficients
/// with sigma_i <= tol.schmidt are dropped.
SchmidtDecomposition schmidt_decompose(const PureState& psi,
                                       std::span<const std::string> left_labels);

/// Expectation <psi|X|psi> (real part).
double expectation(const HermOp& x, const Vector& psi);

/// tr(XY) for Hermitian X, Y (real part).
double trace_product(const Matrix& x, const Matrix& y);

}  // namespace tdc
