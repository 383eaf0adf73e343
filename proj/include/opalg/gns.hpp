#pragma once

#include <string>
#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/linalg.hpp"
#include "opalg/subalgebra.hpp"

namespace opalg {

/// L^2(M, tr): the algebra viewed as a Hilbert space under
/// <x, y> = tr(y* x), with cyclic vector Omega = 1.  Coordinates are the
/// ones of MultiMatrixAlgebra::coords, whose implicit basis (scaled
/// matrix units) is orthonormal for this inner product.
class GnsSpace {
 public:
  explicit GnsSpace(MultiMatrixAlgebra algebra) : algebra_(std::move(algebra)) {}

  const MultiMatrixAlgebra& algebra() const { return algebra_; }
  int dim() const { return algebra_.total_dim(); }

  /// Coordinates of the cyclic vector Omega = 1.
  Vector omega() const { return algebra_.coords(algebra_.identity()); }

  /// The orthonormal basis as algebra elements.
  std::vector<AlgebraElement> orthonormal_basis() const;

 private:
  MultiMatrixAlgebra algebra_;
};

/// A linear operator on a GNS space.
struct RepresentedOperator {
  int space_dim = 0;
  Matrix matrix;

  RepresentedOperator() = default;
  RepresentedOperator(int dim, Matrix m) : space_dim(dim), matrix(std::move(m)) {}
};

/// Left multiplication operator lambda(m).
RepresentedOperator left_rep(const AlgebraElement& m, const GnsSpace& h);
/// Right multiplication operator rho(m).
RepresentedOperator right_rep(const AlgebraElement& m, const GnsSpace& h);

/// The canonical conjugation J: x -> x*.  J is antiunitary and is stored
/// as a real permutation-like matrix acting through
/// v -> real_matrix * conj(v); it is never handled as a complex-linear
/// matrix.
class ModularConjugation {
 public:
  explicit ModularConjugation(const GnsSpace& h);

  const Matrix& real_matrix() const { return mat_; }

  Vector apply(const Vector& v) const { return mat_ * v.conjugate(); }

  /// Conjugation of a linear operator: X -> J X J (again linear).
  Matrix conjugate_operator(const Matrix& x) const {
    return mat_ * x.conjugate() * mat_;
  }

 private:
  Matrix mat_;
};

/// Orthogonal projection of L^2(M) onto {p Omega : p in P}.  Satisfies
/// e = e* = e^2, e lambda(m) e = lambda(E_P(m)) e and rank e = dim P.
RepresentedOperator jones_projection(const Subalgebra& p, const GnsSpace& h);

/// An orthonormally-spanned space of operators on a GNS space, stored as
/// vectorized columns.
struct OperatorSpan {
  int space_dim = 0;
  Matrix vecs;  ///< (space_dim^2) x dim, orthonormal columns

  int dim() const { return static_cast<int>(vecs.cols()); }
  Matrix member(int i) const {
    return linalg::unvec(vecs.col(i), space_dim, space_dim);
  }
  double residual(const Matrix& op) const {
    return linalg::span_residual(linalg::vec(op), vecs);
  }
  /// Residual norm without normalization by |op|; the right scale when op
  /// is a product of unit-norm members and may itself be nearly zero.
  double residual_abs(const Matrix& op) const {
    Vector r = linalg::vec(op);
    for (int pass = 0; pass < 2; ++pass)
      if (vecs.cols() > 0) r -= vecs * (vecs.adjoint() * r);
    return r.norm();
  }
};

/// Basis of {T : [T, s] = 0 and [T, s*] = 0 for all s in S}, obtained by
/// solving the commutation equations as one accumulated Gram kernel.  The
/// result is verified to be closed under adjoints and products.
OperatorSpan commutant(const GnsSpace& h,
                       const std::vector<RepresentedOperator>& s,
                       const Tolerances& tol = default_tolerances());

/// The algebra generated by a family of operators, by length-lex word
/// closure with re-orthonormalization; the unit is always adjoined.
struct GeneratedOperatorAlgebra {
  OperatorSpan span;
  bool stabilized = false;
};

GeneratedOperatorAlgebra generated_operator_algebra(
    const GnsSpace& h, const std::vector<RepresentedOperator>& generators,
    const Tolerances& tol = default_tolerances());

/// The algebra generated by lambda(M) and the Jones projection of N on
/// L^2(M).  In finite dimensions it equals both
/// span(lambda(M) e lambda(M)) + lambda(M) and J lambda(N)' J; both
/// identities are available as checks through the returned span.
GeneratedOperatorAlgebra basic_construction(const Subalgebra& n, const GnsSpace& h,
                                            const Tolerances& tol = default_tolerances());

/// Span of lambda(M) as operators.
OperatorSpan left_rep_span(const GnsSpace& h);

/// Span of lambda(M) + lambda(M) e lambda(M) for the given projection.
OperatorSpan rank_one_extension_span(const GnsSpace& h,
                                     const RepresentedOperator& e,
                                     const Tolerances& tol = default_tolerances());

/// J S J for every member of the span.
OperatorSpan conjugate_span(const OperatorSpan& s, const ModularConjugation& j);

/// CSV dump, row-major with alternating re,im cells, 17 significant digits.
std::string to_csv(const RepresentedOperator& op);

}  // namespace opalg
