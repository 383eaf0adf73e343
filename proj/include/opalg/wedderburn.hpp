#pragma once

#include <cstdint>
#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/group.hpp"
#include "opalg/linalg.hpp"

namespace opalg {

/// Result of recognizing a concrete unital *-algebra A in M_d as a direct
/// sum of full matrix blocks with multiplicities: a unitary change of
/// basis U with U* a U = sum_k I_{m_k} (x) y_k for every a in A, and
/// structure maps between the concrete and abstract presentations.
/// The abstract algebra carries the normalized concrete trace (1/d) Tr,
/// i.e. block weights m_k / d.
struct WedderburnDecomposition {
  MultiMatrixAlgebra algebra;
  std::vector<int> multiplicities;
  Matrix basis_change;  ///< d x d unitary; columns grouped block-major, copy-major, row index fastest
  int concrete_dim = 0;

  Matrix to_concrete(const AlgebraElement& x) const;
  AlgebraElement to_abstract(const Matrix& concrete) const;
};

struct WedderburnOptions {
  std::uint64_t seed = 0;
  /// When set, the span of the generators must already be a unital
  /// *-algebra; a failed closure check raises NotStarClosed instead of
  /// enlarging the span.
  bool assume_closed = false;
  int max_retries = 3;
  Tolerances tol = default_tolerances();
};

/// Orthonormal basis (Hilbert-Schmidt) of the unital *-algebra generated
/// by the given d x d matrices.
std::vector<Matrix> close_matrix_algebra(const std::vector<Matrix>& generators,
                                         double accept_tol = 1e-9);

/// Recovers block sizes, multiplicities and the exhibiting unitary from
/// arbitrary matrix generators.  Splitting runs in two randomized stages,
/// both driven by the seeded generator in `options`: eigenvalue clusters
/// of a random self-adjoint central element separate the central blocks,
/// and eigenvalue clusters of a random self-adjoint algebra element
/// separate each central block into a factor times a multiplicity space.
/// Rank and spectral-split decisions inside the undetermined tolerance
/// band raise RankDeficiencyUndetermined.
WedderburnDecomposition wedderburn_decompose(
    const std::vector<Matrix>& generators,
    const WedderburnOptions& options = {});

/// A finite group algebra in block form, with the canonical normalized
/// trace (the identity coefficient) and the image of the group basis.
struct GroupAlgebra {
  FiniteGroup group;
  MultiMatrixAlgebra algebra;
  std::vector<AlgebraElement> basis;  ///< g -> block form of the left regular matrix
  WedderburnDecomposition decomposition;

  /// Block-form element of a subset sum (1/|S|) sum_{g in S} g.
  AlgebraElement average(const std::vector<int>& elements) const;
};

GroupAlgebra group_algebra(const FiniteGroup& g, std::uint64_t seed = 0);

}  // namespace opalg
