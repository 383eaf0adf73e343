#pragma once

#include "opalg/algebra.hpp"

namespace opalg {

/// A *-automorphism of a multi-matrix algebra, stored as its matrix
/// against the trace-orthonormal basis.  Trace-preserving automorphisms
/// act unitarily on coordinates, so inverse = adjoint.
class StarAutomorphism {
 public:
  /// Validates the automorphism laws (multiplicative, *-preserving,
  /// unital, trace-preserving) on the basis; throws InvariantViolation.
  static StarAutomorphism from_matrix(MultiMatrixAlgebra owner, Matrix action,
                                      double law_tol = 1e-10);

  const MultiMatrixAlgebra& owner() const { return owner_; }
  const Matrix& matrix() const { return action_; }

  AlgebraElement apply(const AlgebraElement& x) const;

  StarAutomorphism compose(const StarAutomorphism& other) const;  // this after other
  StarAutomorphism inverse() const;

  double distance(const StarAutomorphism& other) const {
    return (action_ - other.action_).norm();
  }

 private:
  StarAutomorphism(MultiMatrixAlgebra owner, Matrix action)
      : owner_(std::move(owner)), action_(std::move(action)) {}

  MultiMatrixAlgebra owner_;
  Matrix action_;
};

/// Identity automorphism.
StarAutomorphism identity_automorphism(const MultiMatrixAlgebra& m);

/// Inner automorphism x -> u x u*; throws NotUnitary unless u is unitary
/// within tol.
StarAutomorphism automorphism_from_unitary(const AlgebraElement& u,
                                           double tol = 1e-10);

/// Smallest k in [1, bound] with alpha^k = id, or 0 when none is found.
int automorphism_order(const StarAutomorphism& alpha, int bound,
                       double tol = 1e-9);

}  // namespace opalg
