#include "opalg/direct_sum_model.hpp"

#include <cmath>

namespace opalg {

AlgebraElement DirectSumModel::embed(const AlgebraElement& x) const {
  if (x.owner() != base) throw OwnerMismatch("embed: element of a foreign algebra");
  std::vector<Matrix> blocks;
  blocks.reserve(big.block_count());
  for (int a = 0; a < family_size(); ++a)
    for (int k = 0; k < base.block_count(); ++k) blocks.push_back(x.block(k));
  return big.from_blocks(std::move(blocks));
}

AlgebraElement DirectSumModel::embed_twisted(const AlgebraElement& x) const {
  if (x.owner() != base) throw OwnerMismatch("embed: element of a foreign algebra");
  std::vector<Matrix> blocks;
  blocks.reserve(big.block_count());
  for (int a = 0; a < family_size(); ++a) {
    AlgebraElement ax = autos[a].apply(x);
    for (int k = 0; k < base.block_count(); ++k) blocks.push_back(ax.block(k));
  }
  return big.from_blocks(std::move(blocks));
}

AlgebraElement DirectSumModel::summand(const AlgebraElement& x, int a) const {
  if (x.owner() != big) throw OwnerMismatch("summand: element of a foreign algebra");
  std::vector<Matrix> blocks;
  blocks.reserve(base.block_count());
  for (int k = 0; k < base.block_count(); ++k)
    blocks.push_back(x.block(a * base.block_count() + k));
  return base.from_blocks(std::move(blocks));
}

DirectSumModel build_direct_sum_model(const MultiMatrixAlgebra& base,
                                      const std::vector<StarAutomorphism>& autos,
                                      const Tolerances& tol) {
  if (autos.empty())
    throw DuplicateAutomorphism("the automorphism family must be nonempty");
  for (const StarAutomorphism& a : autos)
    if (a.owner() != base)
      throw OwnerMismatch("automorphism of a different algebra");
  for (std::size_t i = 0; i < autos.size(); ++i)
    for (std::size_t j = i + 1; j < autos.size(); ++j)
      if (autos[i].distance(autos[j]) <= 1e-8)
        throw DuplicateAutomorphism("two family members coincide as maps");

  const int g = static_cast<int>(autos.size());
  std::vector<int> sizes;
  std::vector<double> weights;
  for (int a = 0; a < g; ++a)
    for (int k = 0; k < base.block_count(); ++k) {
      sizes.push_back(base.block_size(k));
      weights.push_back(base.weight(k) / g);
    }
  MultiMatrixAlgebra big(BlockSpec{sizes}, TraceWeights{weights}, tol);

  DirectSumModel model{base, autos, big, trivial_subalgebra(big),
                       trivial_subalgebra(big), Matrix(), Matrix()};

  const int dn = base.total_dim();
  const double root_g = std::sqrt(static_cast<double>(g));
  model.embed_isometry = Matrix::Zero(big.total_dim(), dn);
  for (int a = 0; a < g; ++a)
    model.embed_isometry.middleRows(a * dn, dn) =
        Matrix::Identity(dn, dn) / root_g;

  // The summand weights carry the 1/g factor, so both embeddings are
  // already trace isometries.
  std::vector<AlgebraElement> p_basis, q_basis;
  for (int i = 0; i < dn; ++i) {
    AlgebraElement b = base.basis_element(i);
    p_basis.push_back(model.embed(b));
    q_basis.push_back(model.embed_twisted(b));
  }
  model.p = Subalgebra::from_orthonormal_basis(big, std::move(p_basis), tol);
  model.q = Subalgebra::from_orthonormal_basis(big, std::move(q_basis), tol);

  model.t_matrix = Matrix::Zero(dn, dn);
  for (const StarAutomorphism& a : autos)
    for (const StarAutomorphism& b : autos)
      model.t_matrix += a.matrix() * b.matrix().adjoint();
  return model;
}

DirectSumModelReport direct_sum_model_spectrum(const DirectSumModel& model,
                                               const IndexOptions& index_options,
                                               const Tolerances& tol) {
  DirectSumModelReport report;
  const int g = model.family_size();
  const MultiMatrixAlgebra& big = model.big;

  Matrix t = (model.t_matrix + model.t_matrix.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(t);
  report.t_eigenvalues.assign(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
  report.t_spectrum_points = static_cast<int>(
      linalg::cluster_sorted(es.eigenvalues(), tol.cluster).size());

  ConditionalExpectation ep = conditional_expectation(big, model.p, tol);
  ConditionalExpectation eq = conditional_expectation(big, model.q, tol);

  // E_P E_Q E_P = (1/g^2) iota T iota^H E_P on coordinates.
  Matrix sandwich = ep.matrix() * eq.matrix() * ep.matrix();
  Matrix through_t = model.embed_isometry * model.t_matrix *
                     model.embed_isometry.adjoint() * ep.matrix() /
                     (static_cast<double>(g) * g);
  report.proportionality_residual = (sandwich - through_t).norm();

  // Closed-form expectation formulas, checked on the trace basis.
  for (int i = 0; i < big.total_dim(); ++i) {
    AlgebraElement x = big.basis_element(i);
    AlgebraElement avg = model.base.zero();
    for (int a = 0; a < g; ++a) avg += model.summand(x, a);
    avg *= cxd(1.0 / g, 0.0);
    report.ep_formula_residual =
        std::max(report.ep_formula_residual, norm2(ep.apply(x) - model.embed(avg)));

    AlgebraElement pulled = model.base.zero();
    for (int a = 0; a < g; ++a)
      pulled += model.autos[a].inverse().apply(model.summand(x, a));
    pulled *= cxd(1.0 / g, 0.0);
    report.eq_formula_residual = std::max(
        report.eq_formula_residual, norm2(eq.apply(x) - model.embed_twisted(pulled)));
  }

  Subalgebra fixed = fixed_point_algebra(model.base, model.autos, tol);
  std::vector<AlgebraElement> embedded;
  for (const AlgebraElement& b : fixed.basis()) embedded.push_back(model.embed(b));
  Subalgebra diag_fixed =
      Subalgebra::from_orthonormal_basis(big, std::move(embedded), tol);
  report.fixed_point_dim = diag_fixed.dim();
  ConditionalExpectation ef = conditional_expectation(big, diag_fixed, tol);
  report.fixed_point_index = pimsner_popa_index(ef, index_options).value;
  return report;
}

}  // namespace opalg
