#include "opalg/angles.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace opalg {

namespace {

using linalg::vec;
using linalg::unvec;

void require_projection(const Matrix& f, double tol) {
  if ((f * f - f).cwiseAbs().maxCoeff() > tol ||
      (f.adjoint() - f).cwiseAbs().maxCoeff() > tol)
    throw NotProjection("operator is not an orthogonal projection");
}

/// Orthonormal columns spanning the eigenspace of a projection-like
/// Hermitian matrix at eigenvalue ~1.
Matrix range_basis(const Matrix& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) ++count;
  return es.eigenvectors().rightCols(count);
}

}  // namespace

AngleSpectrum angle_spectrum(const Subalgebra& p, const Subalgebra& q,
                             const Tolerances& tol) {
  if (p.ambient() != q.ambient())
    throw AmbientMismatch("angle spectrum needs a common ambient algebra");
  GnsSpace h(p.ambient());
  Matrix ep = jones_projection(p, h).matrix;
  Matrix eq = jones_projection(q, h).matrix;
  Matrix a = ep * eq * ep;
  a = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);

  AngleSpectrum out;
  out.raw_eigenvalues.assign(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
  for (double lam : out.raw_eigenvalues)
    if (lam > tol.cluster && lam < 1.0 - tol.cluster)
      out.angles.push_back(std::acos(std::sqrt(lam)));
  std::sort(out.angles.begin(), out.angles.end());
  out.intersection_rank = intersect({p, q}, tol).dim();
  return out;
}

RepresentedOperator wedge(const std::vector<RepresentedOperator>& projections,
                          const Tolerances& tol) {
  if (projections.empty()) throw ShapeMismatch("wedge of an empty family");
  const int d = projections[0].space_dim;
  Matrix complements = Matrix::Zero(d, d);
  for (const RepresentedOperator& f : projections) {
    if (f.space_dim != d) throw ShapeMismatch("projections on different spaces");
    require_projection(f.matrix, tol.unitary);
    complements += Matrix::Identity(d, d) - f.matrix;
  }
  // Kernel of the stacked complements = intersection of the ranges.
  Eigen::SelfAdjointEigenSolver<Matrix> es(complements);
  int count = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    if (es.eigenvalues()(i) <= tol.cluster) ++count;
  Matrix basis = es.eigenvectors().leftCols(count);
  return {d, basis * basis.adjoint()};
}

HalmosDecomposition halmos_decompose(const RepresentedOperator& p,
                                     const RepresentedOperator& q,
                                     const Tolerances& tol) {
  if (p.space_dim != q.space_dim)
    throw ShapeMismatch("projections on different spaces");
  require_projection(p.matrix, tol.unitary);
  require_projection(q.matrix, tol.unitary);
  const int d = p.space_dim;

  HalmosDecomposition out;
  Matrix up = range_basis(p.matrix);
  Matrix uq = range_basis(q.matrix);

  {  // Split range p by the compression of q.
    Matrix b = up.adjoint() * q.matrix * up;
    b = (b + b.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(b);
    std::vector<int> ones, zeros;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      double lam = es.eigenvalues()(i);
      Vector u = up * es.eigenvectors().col(i);
      if (lam >= 1.0 - tol.cluster) {
        ones.push_back(static_cast<int>(i));
      } else if (lam <= tol.cluster) {
        zeros.push_back(static_cast<int>(i));
      } else {
        HalmosDecomposition::GenericBlock blk;
        blk.cos2 = lam;
        blk.u = u;
        Vector w = q.matrix * u - lam * u;
        blk.w = w / w.norm();
        out.blocks.push_back(std::move(blk));
      }
    }
    out.both = Matrix(d, ones.size());
    for (std::size_t i = 0; i < ones.size(); ++i)
      out.both.col(i) = up * es.eigenvectors().col(ones[i]);
    out.p_only = Matrix(d, zeros.size());
    for (std::size_t i = 0; i < zeros.size(); ++i)
      out.p_only.col(i) = up * es.eigenvectors().col(zeros[i]);
  }

  {  // ker p cap range q from the compression of p to range q.
    Matrix c = uq.adjoint() * p.matrix * uq;
    c = (c + c.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(c);
    std::vector<int> zeros;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) <= tol.cluster) zeros.push_back(static_cast<int>(i));
    out.q_only = Matrix(d, zeros.size());
    for (std::size_t i = 0; i < zeros.size(); ++i)
      out.q_only.col(i) = uq * es.eigenvectors().col(zeros[i]);
  }

  {  // ker p cap ker q = kernel of p + q.
    Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix + q.matrix);
    int count = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      if (es.eigenvalues()(i) <= tol.cluster) ++count;
    out.neither = es.eigenvectors().leftCols(count);
  }

  // Reconstruction from the pieces.
  Matrix prec = out.both * out.both.adjoint() + out.p_only * out.p_only.adjoint();
  Matrix qrec = out.both * out.both.adjoint() + out.q_only * out.q_only.adjoint();
  for (const auto& blk : out.blocks) {
    prec += blk.u * blk.u.adjoint();
    double c = std::sqrt(blk.cos2);
    double s = std::sqrt(1.0 - blk.cos2);
    Vector v = c * blk.u + s * blk.w;
    qrec += v * v.adjoint();
  }
  out.reconstruction_residual =
      std::max((prec - p.matrix).norm(), (qrec - q.matrix).norm());

  std::vector<double> cos2;
  for (const auto& blk : out.blocks) cos2.push_back(blk.cos2);
  std::sort(cos2.begin(), cos2.end());
  if (!cos2.empty()) {
    Eigen::VectorXd sorted = Eigen::Map<Eigen::VectorXd>(cos2.data(), cos2.size());
    for (const auto& [value, mult] : linalg::cluster_sorted(sorted, tol.cluster))
      out.distinct_cos2.push_back(value);
  }
  return out;
}

GeneratedAlgebra generated_projection_algebra(
    const std::vector<RepresentedOperator>& projections, bool adjoin_unit,
    const Tolerances& tol) {
  if (projections.empty()) throw ShapeMismatch("empty projection family");
  const int d = projections[0].space_dim;
  std::vector<Matrix> gens;
  for (const RepresentedOperator& f : projections) {
    if (f.space_dim != d) throw ShapeMismatch("projections on different spaces");
    require_projection(f.matrix, tol.unitary);
    gens.push_back(f.matrix);
  }

  std::optional<Matrix> unit;
  if (adjoin_unit) unit = Matrix::Identity(d, d);
  auto closure = linalg::close_words<Matrix>(
      gens, unit, [](const Matrix& a, const Matrix& b) { return a * b; },
      [](const Matrix& m) { return vec(m); }, d * d, tol.span_residual);

  GeneratedAlgebra out;
  out.generators = projections;
  out.span = OperatorSpan{d, closure.basis};
  out.dim = static_cast<int>(closure.basis.cols());
  out.ell = closure.longest_word;
  out.unit_adjoined = adjoin_unit;
  out.stabilized = closure.stabilized;
  for (auto& item : closure.items) out.basis_words.push_back(std::move(item.word));
  return out;
}

BoundReport bound_check(const MultiMatrixAlgebra& m,
                        const std::vector<Subalgebra>& family,
                        const IndexOptions& index_options,
                        const Tolerances& tol) {
  if (family.empty()) throw AmbientMismatch("bound check needs a nonempty family");
  GnsSpace h(m);
  BoundReport report;

  std::vector<RepresentedOperator> jones;
  for (const Subalgebra& p : family) {
    if (p.ambient() != m) throw AmbientMismatch("family member in a different algebra");
    jones.push_back(jones_projection(p, h));
    ConditionalExpectation e = conditional_expectation(m, p, tol);
    report.member_indices.push_back(pimsner_popa_index(e, index_options).value);
  }
  report.max_index =
      *std::max_element(report.member_indices.begin(), report.member_indices.end());

  Subalgebra n = intersect(family, tol);
  report.intersection_dim = n.dim();
  ConditionalExpectation en = conditional_expectation(m, n, tol);
  report.intersection_index = pimsner_popa_index(en, index_options).value;

  GeneratedAlgebra with_unit = generated_projection_algebra(jones, true, tol);
  GeneratedAlgebra without_unit = generated_projection_algebra(jones, false, tol);
  report.ell = with_unit.ell;
  report.dim_algebra = with_unit.dim;
  report.ell_no_unit = without_unit.ell;
  report.dim_no_unit = without_unit.dim;
  report.stabilized = with_unit.stabilized && without_unit.stabilized;

  report.bound = std::pow(report.max_index, report.ell) * report.dim_algebra;
  report.satisfied =
      report.intersection_index <= report.bound * (1.0 + tol.index_bracket_rel);
  report.has_improved = family.size() == 2;
  if (report.has_improved) {
    report.improved_bound = report.bound / 4.0;
    report.improved_satisfied = report.intersection_index <=
                                report.improved_bound * (1.0 + tol.index_bracket_rel);
  }

  RepresentedOperator en_proj = jones_projection(n, h);
  RepresentedOperator meet = wedge(jones, tol);
  report.wedge_vs_intersection_residual = (meet.matrix - en_proj.matrix).norm();
  report.e_n_in_span_residual = with_unit.span.residual(en_proj.matrix);
  return report;
}

InnerSpectrumProbe counterexample_probe(const std::vector<AlgebraElement>& unitaries,
                                        const Tolerances& tol) {
  if (unitaries.empty()) throw ShapeMismatch("probe needs at least one unitary");
  const MultiMatrixAlgebra& m = unitaries[0].owner();
  const int d = m.total_dim();
  for (const AlgebraElement& u : unitaries) {
    if (u.owner() != m) throw OwnerMismatch("unitaries in different algebras");
    require_unitary(u, tol.unitary);
  }

  std::vector<Matrix> pair_maps;
  AlgebraElement element_sum = m.zero();
  for (const AlgebraElement& u : unitaries)
    for (const AlgebraElement& v : unitaries) {
      AlgebraElement w = u * v.adjoint();
      element_sum += w;
      pair_maps.push_back(automorphism_from_unitary(w, tol.unitary).matrix());
    }

  // Unital algebra generated by the pair maps; the set is closed under
  // adjoints (the adjoint of Ad(uv*) is Ad(vu*)).
  std::optional<Matrix> unit = Matrix::Identity(d, d);
  auto closure = linalg::close_words<Matrix>(
      pair_maps, unit, [](const Matrix& a, const Matrix& b) { return a * b; },
      [](const Matrix& x) { return vec(x); }, d * d, tol.span_residual);

  InnerSpectrumProbe out;
  out.map_algebra_dim = static_cast<int>(closure.basis.cols());

  Matrix map_sum = Matrix::Zero(d, d);
  for (const Matrix& a : pair_maps) map_sum += a;
  map_sum = (map_sum + map_sum.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(map_sum);
  for (const auto& [value, mult] :
       linalg::cluster_sorted(es.eigenvalues(), tol.cluster))
    out.map_sum_eigenvalues.push_back(value);
  out.map_sum_spectrum_points = static_cast<int>(out.map_sum_eigenvalues.size());

  std::vector<double> elem_eigs;
  for (int k = 0; k < m.block_count(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> bs(element_sum.block(k));
    for (Eigen::Index i = 0; i < bs.eigenvalues().size(); ++i)
      elem_eigs.push_back(bs.eigenvalues()(i));
  }
  std::sort(elem_eigs.begin(), elem_eigs.end());
  Eigen::VectorXd sorted =
      Eigen::Map<Eigen::VectorXd>(elem_eigs.data(), elem_eigs.size());
  for (const auto& [value, mult] : linalg::cluster_sorted(sorted, tol.cluster))
    out.element_sum_eigenvalues.push_back(value);
  out.element_sum_spectrum_points =
      static_cast<int>(out.element_sum_eigenvalues.size());

  out.consistent = out.map_sum_spectrum_points <= out.map_algebra_dim;
  return out;
}

}  // namespace opalg
