#include "opalg/gns.hpp"

#include <cstdio>
#include <optional>

namespace opalg {

using linalg::vec;
using linalg::unvec;

std::vector<AlgebraElement> GnsSpace::orthonormal_basis() const {
  std::vector<AlgebraElement> out;
  out.reserve(dim());
  for (int i = 0; i < dim(); ++i) out.push_back(algebra_.basis_element(i));
  return out;
}

RepresentedOperator left_rep(const AlgebraElement& m, const GnsSpace& h) {
  if (m.owner() != h.algebra())
    throw OwnerMismatch("left_rep: element of a different algebra");
  const int d = h.dim();
  Matrix out = Matrix::Zero(d, d);
  for (int k = 0; k < m.owner().block_count(); ++k) {
    int n = m.owner().block_size(k);
    int off = m.owner().block_offset(k);
    // Column-major block coordinates: lambda(m) acts as I (x) m_k.
    out.block(off, off, n * n, n * n) =
        linalg::kron(Matrix::Identity(n, n), m.block(k));
  }
  return {d, std::move(out)};
}

RepresentedOperator right_rep(const AlgebraElement& m, const GnsSpace& h) {
  if (m.owner() != h.algebra())
    throw OwnerMismatch("right_rep: element of a different algebra");
  const int d = h.dim();
  Matrix out = Matrix::Zero(d, d);
  for (int k = 0; k < m.owner().block_count(); ++k) {
    int n = m.owner().block_size(k);
    int off = m.owner().block_offset(k);
    // rho(m) acts as m_k^T (x) I.
    out.block(off, off, n * n, n * n) =
        linalg::kron(m.block(k).transpose(), Matrix::Identity(n, n));
  }
  return {d, std::move(out)};
}

ModularConjugation::ModularConjugation(const GnsSpace& h) {
  const MultiMatrixAlgebra& m = h.algebra();
  const int d = h.dim();
  mat_ = Matrix::Zero(d, d);
  for (int k = 0; k < m.block_count(); ++k) {
    int n = m.block_size(k);
    int off = m.block_offset(k);
    // x -> x* transposes each block; with column-major coordinates the
    // entry (i, j) of the block sits at off + j*n + i.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mat_(off + i * n + j, off + j * n + i) = 1.0;
  }
}

RepresentedOperator jones_projection(const Subalgebra& p, const GnsSpace& h) {
  if (p.ambient() != h.algebra())
    throw NotSubalgebra("jones_projection: subalgebra of a different algebra");
  const Matrix& c = p.coord_basis();
  return {h.dim(), c * c.adjoint()};
}

OperatorSpan commutant(const GnsSpace& h,
                       const std::vector<RepresentedOperator>& s,
                       const Tolerances& tol) {
  const int d = h.dim();
  Matrix gram = Matrix::Zero(d * d, d * d);
  Matrix id = Matrix::Identity(d, d);
  auto add_constraint = [&](const Matrix& t) {
    // vec([X, T]) = (T^T (x) I - I (x) T) vec(X).
    Matrix c = linalg::kron(t.transpose(), id) - linalg::kron(id, t);
    gram += c.adjoint() * c;
  };
  for (const RepresentedOperator& op : s) {
    if (op.space_dim != d) throw ShapeMismatch("operator on a different space");
    add_constraint(op.matrix);
    add_constraint(op.matrix.adjoint());
  }
  Matrix null = s.empty() ? Matrix::Identity(d * d, d * d)
                          : linalg::gram_nullspace(gram);
  OperatorSpan out{d, std::move(null)};

  // The commutant is an algebra; verify closure of the numerical basis.
  // Members have unit norm, so absolute residuals are the right measure
  // (products may legitimately vanish).
  for (int i = 0; i < out.dim(); ++i) {
    Matrix bi = out.member(i);
    if (out.residual_abs(bi.adjoint()) > 10 * tol.span_residual)
      throw NumericalFailure("commutant basis not closed under adjoints");
    for (int j = 0; j < out.dim(); ++j)
      if (out.residual_abs(bi * out.member(j)) > 10 * tol.span_residual)
        throw NumericalFailure("commutant basis not closed under products");
  }
  return out;
}

GeneratedOperatorAlgebra generated_operator_algebra(
    const GnsSpace& h, const std::vector<RepresentedOperator>& generators,
    const Tolerances& tol) {
  const int d = h.dim();
  std::vector<Matrix> gens;
  gens.reserve(2 * generators.size());
  for (const RepresentedOperator& g : generators) {
    if (g.space_dim != d) throw ShapeMismatch("generator on a different space");
    gens.push_back(g.matrix);
  }
  for (const RepresentedOperator& g : generators) gens.push_back(g.matrix.adjoint());

  std::optional<Matrix> unit = Matrix::Identity(d, d);
  auto closure = linalg::close_words<Matrix>(
      gens, unit, [](const Matrix& a, const Matrix& b) { return a * b; },
      [](const Matrix& m) { return vec(m); }, d * d, tol.span_residual);
  return {OperatorSpan{d, closure.basis}, closure.stabilized};
}

GeneratedOperatorAlgebra basic_construction(const Subalgebra& n, const GnsSpace& h,
                                            const Tolerances& tol) {
  RepresentedOperator e = jones_projection(n, h);
  std::vector<RepresentedOperator> gens;
  gens.reserve(h.dim() + 1);
  for (int i = 0; i < h.dim(); ++i)
    gens.push_back(left_rep(h.algebra().basis_element(i), h));
  gens.push_back(e);
  return generated_operator_algebra(h, gens, tol);
}

OperatorSpan left_rep_span(const GnsSpace& h) {
  const int d = h.dim();
  Matrix cols(d * d, d);
  for (int i = 0; i < d; ++i)
    cols.col(i) = vec(left_rep(h.algebra().basis_element(i), h).matrix);
  return {d, linalg::orthonormalize(cols, 1e-12)};
}

OperatorSpan rank_one_extension_span(const GnsSpace& h,
                                     const RepresentedOperator& e,
                                     const Tolerances& tol) {
  const int d = h.dim();
  std::vector<Matrix> lam;
  lam.reserve(d);
  for (int i = 0; i < d; ++i)
    lam.push_back(left_rep(h.algebra().basis_element(i), h).matrix);

  Matrix cols(d * d, d + d * d);
  for (int i = 0; i < d; ++i) cols.col(i) = vec(lam[i]);
  int c = d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) cols.col(c++) = vec(lam[i] * e.matrix * lam[j]);
  return {d, linalg::orthonormalize(cols, tol.span_residual)};
}

OperatorSpan conjugate_span(const OperatorSpan& s, const ModularConjugation& j) {
  OperatorSpan out{s.space_dim, Matrix(s.vecs.rows(), s.vecs.cols())};
  for (int i = 0; i < s.dim(); ++i)
    out.vecs.col(i) = vec(j.conjugate_operator(s.member(i)));
  // J is antiunitary, so the images of an orthonormal family stay
  // orthonormal; no re-orthonormalization needed.
  return out;
}

std::string to_csv(const RepresentedOperator& op) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) {
      if (j > 0) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", op.matrix(i, j).real(),
                    op.matrix(i, j).imag());
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace opalg
