#include "opalg/subalgebra.hpp"

#include <algorithm>

#include <optional>

namespace opalg {

Subalgebra Subalgebra::from_orthonormal_basis(MultiMatrixAlgebra ambient,
                                              std::vector<AlgebraElement> basis,
                                              const Tolerances& tol) {
  if (basis.empty()) throw NotSubalgebra("a subalgebra needs a nonempty basis");
  const int d = ambient.total_dim();
  Matrix coords(d, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].owner() != ambient)
      throw AmbientMismatch("basis element from a different algebra");
    coords.col(i) = ambient.coords(basis[i]);
  }
  Matrix gram = coords.adjoint() * coords;
  double gram_err =
      (gram - Matrix::Identity(coords.cols(), coords.cols())).cwiseAbs().maxCoeff();
  if (gram_err > tol.invariant)
    throw NotSubalgebra("basis is not orthonormal under the trace inner product");

  // Closure residuals are measured absolutely against the element scale:
  // products of basis elements may legitimately vanish, where a relative
  // residual would read as pure noise.
  auto residual = [&](const AlgebraElement& x) {
    Vector v = ambient.coords(x);
    Vector r = v;
    for (int pass = 0; pass < 2; ++pass) r -= coords * (coords.adjoint() * r);
    return r.norm() / std::max(1.0, v.norm());
  };
  if (residual(ambient.identity()) > tol.span_residual)
    throw NotSubalgebra("subalgebra does not contain the identity");
  for (const AlgebraElement& b : basis)
    if (residual(b.adjoint()) > tol.span_residual)
      throw NotSubalgebra("subalgebra is not closed under adjoints");
  for (const AlgebraElement& b1 : basis)
    for (const AlgebraElement& b2 : basis)
      if (residual(b1 * b2) > tol.span_residual)
        throw NotSubalgebra("subalgebra is not closed under multiplication");

  return Subalgebra(std::move(ambient), std::move(basis), std::move(coords));
}

double Subalgebra::membership_residual(const AlgebraElement& x) const {
  return linalg::span_residual(ambient_.coords(x), coords_);
}

Subalgebra close_under_algebra(const MultiMatrixAlgebra& m,
                               const std::vector<AlgebraElement>& generators,
                               const Tolerances& tol) {
  std::vector<AlgebraElement> gens;
  gens.reserve(2 * generators.size());
  for (const AlgebraElement& g : generators) {
    if (g.owner() != m) throw OwnerMismatch("generator from a different algebra");
    gens.push_back(g);
  }
  for (const AlgebraElement& g : generators) gens.push_back(g.adjoint());

  std::optional<AlgebraElement> unit = m.identity();
  auto closure = linalg::close_words<AlgebraElement>(
      gens, unit,
      [](const AlgebraElement& a, const AlgebraElement& b) { return a * b; },
      [&m](const AlgebraElement& x) { return m.coords(x); }, m.total_dim(),
      tol.span_residual);

  std::vector<AlgebraElement> basis;
  basis.reserve(closure.basis.cols());
  for (Eigen::Index j = 0; j < closure.basis.cols(); ++j)
    basis.push_back(m.from_coords(closure.basis.col(j)));
  return Subalgebra::from_orthonormal_basis(m, std::move(basis), tol);
}

Subalgebra trivial_subalgebra(const MultiMatrixAlgebra& m) {
  return Subalgebra::from_orthonormal_basis(m, {m.identity()});
}

Subalgebra full_subalgebra(const MultiMatrixAlgebra& m) {
  std::vector<AlgebraElement> basis;
  basis.reserve(m.total_dim());
  for (int i = 0; i < m.total_dim(); ++i) basis.push_back(m.basis_element(i));
  return Subalgebra::from_orthonormal_basis(m, std::move(basis));
}

Subalgebra intersect(const std::vector<Subalgebra>& parts, const Tolerances& tol) {
  if (parts.empty()) throw AmbientMismatch("intersect needs at least one subalgebra");
  const MultiMatrixAlgebra& m = parts[0].ambient();
  for (const Subalgebra& p : parts)
    if (p.ambient() != m)
      throw AmbientMismatch("intersect: subalgebras of different algebras");

  const int d = m.total_dim();
  const int n = static_cast<int>(parts.size());
  Matrix sum = Matrix::Zero(d, d);
  for (const Subalgebra& p : parts)
    sum += p.coord_basis() * p.coord_basis().adjoint();

  // The intersection of the spans is the eigenspace of the projection sum
  // at eigenvalue n.
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  std::vector<AlgebraElement> basis;
  for (Eigen::Index i = 0; i < d; ++i)
    if (es.eigenvalues()(i) >= n - tol.cluster)
      basis.push_back(m.from_coords(es.eigenvectors().col(i)));
  return Subalgebra::from_orthonormal_basis(m, std::move(basis), tol);
}

Subalgebra fixed_point_algebra(const MultiMatrixAlgebra& m,
                               const std::vector<StarAutomorphism>& autos,
                               const Tolerances& tol) {
  const int d = m.total_dim();
  for (const StarAutomorphism& a : autos) {
    if (a.owner() != m) throw OwnerMismatch("automorphism of a different algebra");
    // Re-validate the laws on the stored matrix.
    StarAutomorphism::from_matrix(m, a.matrix(), tol.invariant);
  }
  Matrix gram = Matrix::Zero(d, d);
  for (const StarAutomorphism& a : autos) {
    Matrix delta = a.matrix() - Matrix::Identity(d, d);
    gram += delta.adjoint() * delta;
  }
  Matrix null = autos.empty() ? Matrix::Identity(d, d)
                              : linalg::gram_nullspace(gram);
  std::vector<AlgebraElement> basis;
  basis.reserve(null.cols());
  for (Eigen::Index j = 0; j < null.cols(); ++j)
    basis.push_back(m.from_coords(null.col(j)));
  return Subalgebra::from_orthonormal_basis(m, std::move(basis), tol);
}

Subalgebra subgroup_algebra(const GroupAlgebra& ga,
                            const std::vector<int>& subgroup_elements,
                            const Tolerances& tol) {
  // Group elements are trace-orthonormal, so the images already form an
  // orthonormal basis of the span.
  std::vector<AlgebraElement> basis;
  basis.reserve(subgroup_elements.size());
  for (int g : subgroup_elements) basis.push_back(ga.basis[g]);
  return Subalgebra::from_orthonormal_basis(ga.algebra, std::move(basis), tol);
}

Subalgebra conjugate(const Subalgebra& p, const AlgebraElement& u,
                     const Tolerances& tol) {
  require_unitary(u, tol.unitary);
  AlgebraElement ustar = u.adjoint();
  std::vector<AlgebraElement> basis;
  basis.reserve(p.dim());
  for (const AlgebraElement& b : p.basis()) basis.push_back(u * b * ustar);
  return Subalgebra::from_orthonormal_basis(p.ambient(), std::move(basis), tol);
}

}  // namespace opalg
