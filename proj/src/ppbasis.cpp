#include "opalg/ppbasis.hpp"

#include <cmath>

namespace opalg {

namespace {

/// Applies a real function to a self-adjoint element blockwise, with the
/// eigenvalue support decided against the element's global scale.  Used
/// for the support projection (f(t) = 1 on the support) and the
/// normalizer (f(t) = t^{-1/2} on the support).
struct SupportCalculus {
  AlgebraElement support;
  AlgebraElement inv_sqrt;
};

SupportCalculus support_calculus(const AlgebraElement& h, const Tolerances& tol) {
  const MultiMatrixAlgebra& m = h.owner();
  double top = 0.0;
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eigs;
  eigs.reserve(m.block_count());
  for (int k = 0; k < m.block_count(); ++k) {
    eigs.emplace_back(h.block(k));
    top = std::max(top, eigs.back().eigenvalues().cwiseAbs().maxCoeff());
  }
  if (top <= 0.0)
    throw DegenerateNormalization("normalizing a numerically zero element");

  std::vector<Matrix> sup_blocks, inv_blocks;
  for (int k = 0; k < m.block_count(); ++k) {
    const auto& es = eigs[k];
    int n = m.block_size(k);
    Eigen::VectorXd sup = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      double rel = es.eigenvalues()(i) / top;
      if (rel >= tol.rank_band_hi) {
        sup(i) = 1.0;
        inv(i) = 1.0 / std::sqrt(es.eigenvalues()(i));
      } else if (rel > tol.rank_band_lo) {
        throw DegenerateNormalization(
            "spectrum of E(r* r) straddles the tolerance band");
      }
      // rel <= band_lo (including tiny negative noise): outside the support.
    }
    sup_blocks.push_back(es.eigenvectors() * sup.asDiagonal() *
                         es.eigenvectors().adjoint());
    inv_blocks.push_back(es.eigenvectors() * inv.asDiagonal() *
                         es.eigenvectors().adjoint());
  }
  return {m.from_blocks(std::move(sup_blocks)), m.from_blocks(std::move(inv_blocks))};
}

}  // namespace

double PPBasis::reconstruction_residual(const AlgebraElement& x) const {
  AlgebraElement acc = expectation.source().zero();
  for (const AlgebraElement& mj : elements)
    acc += mj * expectation.apply(mj.adjoint() * x);
  double nx = norm2(x);
  if (nx == 0.0) return 0.0;
  return norm2(x - acc) / nx;
}

double PPBasis::worst_reconstruction_residual() const {
  double worst = 0.0;
  const MultiMatrixAlgebra& m = expectation.source();
  for (int i = 0; i < m.total_dim(); ++i)
    worst = std::max(worst, reconstruction_residual(m.basis_element(i)));
  return worst;
}

double PPBasis::orthogonality_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) {
      AlgebraElement g = expectation.apply(elements[i].adjoint() * elements[j]);
      if (i == j) g -= supports[j];
      worst = std::max(worst, norm2(g));
    }
  return worst;
}

double PPBasis::support_projection_residual() const {
  double worst = 0.0;
  for (const AlgebraElement& f : supports) {
    worst = std::max(worst, norm2(f * f - f));
    worst = std::max(worst, norm2(f.adjoint() - f));
  }
  return worst;
}

PPBasis pp_basis(const ConditionalExpectation& e,
                 const std::optional<std::vector<AlgebraElement>>& candidates,
                 const Tolerances& tol) {
  const MultiMatrixAlgebra& m = e.source();
  std::vector<AlgebraElement> pool;
  if (candidates) {
    pool = *candidates;
  } else {
    // The identity leads so that inclusions of full support start from the
    // unit; the trace basis follows in its fixed order.
    pool.reserve(m.total_dim() + 1);
    pool.push_back(m.identity());
    for (int i = 0; i < m.total_dim(); ++i) pool.push_back(m.basis_element(i));
  }

  PPBasis basis{e, {}, {}};
  for (const AlgebraElement& x : pool) {
    AlgebraElement r = x;
    // Two passes keep the module Gram-Schmidt numerically orthogonal.
    for (int pass = 0; pass < 2; ++pass)
      for (const AlgebraElement& mj : basis.elements)
        r -= mj * e.apply(mj.adjoint() * r);
    if (norm2(r) <= tol.span_residual * std::max(norm2(x), 1.0)) continue;

    AlgebraElement h = e.apply(r.adjoint() * r);
    SupportCalculus calc = support_calculus(h, tol);
    AlgebraElement elem = r * calc.inv_sqrt;
    basis.elements.push_back(std::move(elem));
    basis.supports.push_back(std::move(calc.support));
  }
  return basis;
}

}  // namespace opalg
