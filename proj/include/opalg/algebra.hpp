#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "opalg/errors.hpp"
#include "opalg/rng.hpp"
#include "opalg/tolerances.hpp"

namespace opalg {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Ordered list of matrix block dimensions of a multi-matrix algebra.
struct BlockSpec {
  std::vector<int> sizes;
};

/// Positive weights, one per block.  The trace of an element is
/// sum_k w_k * Tr(x_k) with Tr the plain matrix trace, and the weights
/// are normalized so the identity has trace one.
struct TraceWeights {
  std::vector<double> weights;
};

class AlgebraElement;

/// A finite direct sum of full complex matrix algebras carrying a
/// faithful normalized trace.  Immutable after construction; all
/// operations on it and on its elements are pure functions.
class MultiMatrixAlgebra {
 public:
  MultiMatrixAlgebra(BlockSpec blocks, TraceWeights trace,
                     const Tolerances& tol = default_tolerances());

  int block_count() const { return static_cast<int>(blocks_.sizes.size()); }
  int block_size(int k) const { return blocks_.sizes[k]; }
  double weight(int k) const { return trace_.weights[k]; }
  const BlockSpec& blocks() const { return blocks_; }
  const TraceWeights& trace_weights() const { return trace_; }

  /// Vector-space dimension, sum of n_k^2.
  int total_dim() const { return total_dim_; }

  /// Offset of block k in the coordinate vector.
  int block_offset(int k) const { return offsets_[k]; }

  bool operator==(const MultiMatrixAlgebra& other) const;
  bool operator!=(const MultiMatrixAlgebra& other) const { return !(*this == other); }

  AlgebraElement zero() const;
  AlgebraElement identity() const;
  AlgebraElement from_blocks(std::vector<Matrix> blocks) const;
  /// Element supported on a single block, zero elsewhere.
  AlgebraElement embed(int block, const Matrix& m) const;

  /// i-th element of the trace-orthonormal basis (scaled matrix units,
  /// block-major, column-major inside each block).
  AlgebraElement basis_element(int i) const;

  /// Coordinates of x against the trace-orthonormal basis; satisfies
  /// coords(y).dot-conj coords(x) = tr(y* x).
  Vector coords(const AlgebraElement& x) const;
  AlgebraElement from_coords(const Vector& v) const;

  /// Element with independent standard complex Gaussian block entries.
  AlgebraElement random_element(Rng& rng) const;
  AlgebraElement random_hermitian(Rng& rng) const;
  /// x* x of a random element; strictly positive with probability one.
  AlgebraElement random_positive(Rng& rng) const;
  /// Block-diagonal unitary with Haar-distributed blocks.
  AlgebraElement random_unitary(Rng& rng) const;

 private:
  BlockSpec blocks_;
  TraceWeights trace_;
  std::vector<int> offsets_;
  int total_dim_ = 0;
};

/// An element of a MultiMatrixAlgebra: one complex matrix per block.
class AlgebraElement {
 public:
  AlgebraElement(MultiMatrixAlgebra owner, std::vector<Matrix> blocks);

  const MultiMatrixAlgebra& owner() const { return owner_; }
  const Matrix& block(int k) const { return blocks_[k]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  AlgebraElement adjoint() const;
  bool is_zero(double tol = 1e-14) const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(cxd scalar);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, cxd s) { return a *= s; }
  friend AlgebraElement operator*(cxd s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  MultiMatrixAlgebra owner_;
  std::vector<Matrix> blocks_;
};

/// Faithful normalized trace: sum_k w_k Tr(x_k).
cxd trace(const AlgebraElement& x);

/// Trace inner product tr(y* x).
cxd inner(const AlgebraElement& x, const AlgebraElement& y);

/// L^2 norm sqrt(tr(x* x)).
double norm2(const AlgebraElement& x);

/// Largest eigenvalue over all blocks of a self-adjoint element.
double max_eigenvalue(const AlgebraElement& x);
/// Smallest eigenvalue over all blocks of a self-adjoint element.
double min_eigenvalue(const AlgebraElement& x);

/// Throws OwnerMismatch unless both elements live in the same algebra.
void require_same_owner(const AlgebraElement& a, const AlgebraElement& b);

/// Throws NotUnitary unless u* u = u u* = 1 within tol.
void require_unitary(const AlgebraElement& u, double tol);

}  // namespace opalg
