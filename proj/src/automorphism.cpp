#include "opalg/automorphism.hpp"

namespace opalg {

StarAutomorphism StarAutomorphism::from_matrix(MultiMatrixAlgebra owner,
                                               Matrix action, double law_tol) {
  const int d = owner.total_dim();
  if (action.rows() != d || action.cols() != d)
    throw ShapeMismatch("automorphism matrix does not match the algebra");
  StarAutomorphism alpha(std::move(owner), std::move(action));
  const MultiMatrixAlgebra& m = alpha.owner_;

  AlgebraElement one = m.identity();
  if (norm2(alpha.apply(one) - one) > law_tol)
    throw InvariantViolation("automorphism is not unital");

  std::vector<AlgebraElement> images;
  images.reserve(d);
  for (int i = 0; i < d; ++i) images.push_back(alpha.apply(m.basis_element(i)));

  for (int i = 0; i < d; ++i) {
    const AlgebraElement bi = m.basis_element(i);
    if (std::abs(trace(images[i]) - trace(bi)) > law_tol)
      throw InvariantViolation("automorphism does not preserve the trace");
    if (norm2(alpha.apply(bi.adjoint()) - images[i].adjoint()) > law_tol)
      throw InvariantViolation("automorphism does not preserve the adjoint");
    for (int j = 0; j < d; ++j) {
      AlgebraElement lhs = alpha.apply(bi * m.basis_element(j));
      if (norm2(lhs - images[i] * images[j]) > law_tol)
        throw InvariantViolation("automorphism is not multiplicative");
    }
  }
  return alpha;
}

AlgebraElement StarAutomorphism::apply(const AlgebraElement& x) const {
  if (x.owner() != owner_)
    throw OwnerMismatch("automorphism applied to a foreign element");
  return owner_.from_coords(action_ * owner_.coords(x));
}

StarAutomorphism StarAutomorphism::compose(const StarAutomorphism& other) const {
  if (owner_ != other.owner_)
    throw OwnerMismatch("composing automorphisms of different algebras");
  return StarAutomorphism(owner_, action_ * other.action_);
}

StarAutomorphism StarAutomorphism::inverse() const {
  // Trace-preserving *-automorphisms are unitary on coordinates.
  return StarAutomorphism(owner_, action_.adjoint());
}

StarAutomorphism identity_automorphism(const MultiMatrixAlgebra& m) {
  return StarAutomorphism::from_matrix(
      m, Matrix::Identity(m.total_dim(), m.total_dim()));
}

StarAutomorphism automorphism_from_unitary(const AlgebraElement& u, double tol) {
  require_unitary(u, tol);
  const MultiMatrixAlgebra& m = u.owner();
  const int d = m.total_dim();
  Matrix action(d, d);
  AlgebraElement ustar = u.adjoint();
  for (int j = 0; j < d; ++j)
    action.col(j) = m.coords(u * m.basis_element(j) * ustar);
  return StarAutomorphism::from_matrix(m, std::move(action));
}

int automorphism_order(const StarAutomorphism& alpha, int bound, double tol) {
  const int d = alpha.owner().total_dim();
  Matrix id = Matrix::Identity(d, d);
  Matrix power = alpha.matrix();
  for (int k = 1; k <= bound; ++k) {
    if ((power - id).norm() <= tol) return k;
    power = power * alpha.matrix();
  }
  return 0;
}

}  // namespace opalg
