#pragma once

#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/automorphism.hpp"
#include "opalg/linalg.hpp"
#include "opalg/wedderburn.hpp"

namespace opalg {

/// A unital *-subalgebra of a multi-matrix algebra, held as a
/// trace-orthonormal basis together with the matrix of basis coordinates.
class Subalgebra {
 public:
  /// Wraps an orthonormal spanning set and verifies the subalgebra
  /// invariants: contains 1, closed under adjoint and multiplication,
  /// orthonormal basis.  Throws NotSubalgebra.
  static Subalgebra from_orthonormal_basis(MultiMatrixAlgebra ambient,
                                           std::vector<AlgebraElement> basis,
                                           const Tolerances& tol = default_tolerances());

  const MultiMatrixAlgebra& ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<AlgebraElement>& basis() const { return basis_; }
  const AlgebraElement& basis_element(int i) const { return basis_[i]; }

  /// D x dim matrix whose columns are the coordinates of the basis.
  const Matrix& coord_basis() const { return coords_; }

  /// Residual of x against the span, relative to |x|.
  double membership_residual(const AlgebraElement& x) const;

 private:
  Subalgebra(MultiMatrixAlgebra ambient, std::vector<AlgebraElement> basis,
             Matrix coords)
      : ambient_(std::move(ambient)), basis_(std::move(basis)),
        coords_(std::move(coords)) {}

  MultiMatrixAlgebra ambient_;
  std::vector<AlgebraElement> basis_;
  Matrix coords_;
};

/// Smallest unital *-subalgebra containing the generators; 1 and adjoints
/// are adjoined automatically, and the basis comes from deterministic
/// length-lex word closure with re-orthonormalization.
Subalgebra close_under_algebra(const MultiMatrixAlgebra& m,
                               const std::vector<AlgebraElement>& generators,
                               const Tolerances& tol = default_tolerances());

/// The scalars C1.
Subalgebra trivial_subalgebra(const MultiMatrixAlgebra& m);
/// The whole algebra as a subalgebra of itself.
Subalgebra full_subalgebra(const MultiMatrixAlgebra& m);

/// Subspace intersection, computed from the orthogonal projections onto
/// the coordinate spans (top eigenspace of their sum); automatically a
/// unital *-subalgebra.  Throws AmbientMismatch.
Subalgebra intersect(const std::vector<Subalgebra>& parts,
                     const Tolerances& tol = default_tolerances());

/// Joint fixed points {x : alpha(x) = x for all alpha}.  Inputs are
/// validated; throws InvariantViolation when a map fails the
/// automorphism laws.
Subalgebra fixed_point_algebra(const MultiMatrixAlgebra& m,
                               const std::vector<StarAutomorphism>& autos,
                               const Tolerances& tol = default_tolerances());

/// Subalgebra spanned by the images of the given group elements inside a
/// group algebra in block form; the set must be closed (a subgroup).
Subalgebra subgroup_algebra(const GroupAlgebra& ga,
                            const std::vector<int>& subgroup_elements,
                            const Tolerances& tol = default_tolerances());

/// Conjugate u P u* by a unitary of the ambient algebra.
Subalgebra conjugate(const Subalgebra& p, const AlgebraElement& u,
                     const Tolerances& tol = default_tolerances());

}  // namespace opalg
