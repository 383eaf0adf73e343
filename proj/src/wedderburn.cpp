#include "opalg/wedderburn.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace opalg {

namespace {

using linalg::vec;
using linalg::unvec;

struct CentralBlock {
  Matrix range;  // d x (n*m), orthonormal columns
  int n = 0;
  int m = 0;
  Matrix local_unitary;  // d x (n*m) columns of the final basis, copy-major
};

/// Random element of the Hermitian real form of a complex span: both
/// Hermitian parts of every basis element enter with independent real
/// coefficients, so the draw is generic within all Hermitian elements of
/// the span.
Matrix random_hermitian_combination(const std::vector<Matrix>& basis, Rng& rng) {
  Matrix z = Matrix::Zero(basis[0].rows(), basis[0].cols());
  const cxd half_i(0.0, -0.5);
  for (const Matrix& b : basis) {
    Matrix h = (b + b.adjoint()) / 2.0;
    Matrix k = half_i * (b - b.adjoint());
    z += rng.normal() * h + rng.normal() * k;
  }
  return z;
}

}  // namespace

std::vector<Matrix> close_matrix_algebra(const std::vector<Matrix>& generators,
                                         double accept_tol) {
  if (generators.empty()) throw ShapeMismatch("need at least one generator");
  const Eigen::Index d = generators[0].rows();
  for (const Matrix& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw ShapeMismatch("generators must be square matrices of equal size");

  std::vector<Matrix> gens = generators;
  for (const Matrix& g : generators) gens.push_back(g.adjoint());
  std::optional<Matrix> unit = Matrix::Identity(d, d);

  auto closure = linalg::close_words<Matrix>(
      gens, unit, [](const Matrix& a, const Matrix& b) { return a * b; },
      [](const Matrix& m) { return vec(m); }, static_cast<int>(d * d),
      accept_tol);

  std::vector<Matrix> basis;
  basis.reserve(closure.basis.cols());
  for (Eigen::Index j = 0; j < closure.basis.cols(); ++j)
    basis.push_back(unvec(closure.basis.col(j), static_cast<int>(d),
                          static_cast<int>(d)));
  return basis;
}

Matrix WedderburnDecomposition::to_concrete(const AlgebraElement& x) const {
  Matrix out = Matrix::Zero(concrete_dim, concrete_dim);
  int off = 0;
  for (int k = 0; k < algebra.block_count(); ++k) {
    int n = algebra.block_size(k);
    for (int mu = 0; mu < multiplicities[k]; ++mu) {
      out.block(off, off, n, n) = x.block(k);
      off += n;
    }
  }
  return basis_change * out * basis_change.adjoint();
}

AlgebraElement WedderburnDecomposition::to_abstract(const Matrix& concrete) const {
  Matrix rotated = basis_change.adjoint() * concrete * basis_change;
  std::vector<Matrix> blocks;
  int off = 0;
  for (int k = 0; k < algebra.block_count(); ++k) {
    int n = algebra.block_size(k);
    Matrix y = Matrix::Zero(n, n);
    for (int mu = 0; mu < multiplicities[k]; ++mu) {
      y += rotated.block(off, off, n, n);
      off += n;
    }
    blocks.push_back(y / static_cast<double>(multiplicities[k]));
  }
  return algebra.from_blocks(std::move(blocks));
}

WedderburnDecomposition wedderburn_decompose(
    const std::vector<Matrix>& generators, const WedderburnOptions& options) {
  if (generators.empty()) throw ShapeMismatch("need at least one generator");
  const int d = static_cast<int>(generators[0].rows());
  const Tolerances& tol = options.tol;

  std::vector<Matrix> basis;
  if (options.assume_closed) {
    // The span itself must contain 1, adjoints and products.
    Matrix raw(d * d, generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) raw.col(i) = vec(generators[i]);
    Matrix q = linalg::orthonormalize(raw, tol.span_residual);
    auto in_span = [&](const Matrix& m) {
      return linalg::span_residual(vec(m), q) <= tol.span_residual;
    };
    if (!in_span(Matrix::Identity(d, d)))
      throw NotStarClosed("generator span does not contain the identity");
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
      Matrix bi = unvec(q.col(i), d, d);
      if (!in_span(bi.adjoint()))
        throw NotStarClosed("generator span is not closed under adjoints");
      for (Eigen::Index j = 0; j < q.cols(); ++j)
        if (!in_span(bi * unvec(q.col(j), d, d)))
          throw NotStarClosed("generator span is not closed under products");
    }
    basis.reserve(q.cols());
    for (Eigen::Index i = 0; i < q.cols(); ++i) basis.push_back(unvec(q.col(i), d, d));
  } else {
    basis = close_matrix_algebra(generators, tol.span_residual);
  }
  const int a = static_cast<int>(basis.size());

  // Center of the algebra: coefficient vectors c with [sum_i c_i b_i, b_j] = 0
  // for every j, found as the kernel of the accumulated Gram matrix.
  Matrix gram = Matrix::Zero(a, a);
  for (int j = 0; j < a; ++j) {
    Matrix cj(d * d, a);
    for (int i = 0; i < a; ++i)
      cj.col(i) = vec(basis[i] * basis[j] - basis[j] * basis[i]);
    gram += cj.adjoint() * cj;
  }
  Matrix center_coeff = linalg::gram_nullspace(gram);
  const int r = static_cast<int>(center_coeff.cols());
  if (r < 1) throw RankDeficiencyUndetermined("empty center detected");
  std::vector<Matrix> center;
  center.reserve(r);
  for (int c = 0; c < r; ++c) {
    Matrix z = Matrix::Zero(d, d);
    for (int i = 0; i < a; ++i) z += center_coeff(i, c) * basis[i];
    center.push_back(z);
  }

  Rng rng = Rng(options.seed).child(0x77ed);
  std::string last_error = "wedderburn splitting failed";
  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    try {
      // Stage 1: split by a random self-adjoint central element.
      Matrix z = random_hermitian_combination(center, rng);
      Eigen::SelfAdjointEigenSolver<Matrix> zes(z);
      auto central_clusters =
          linalg::banded_clusters(zes.eigenvalues(), tol.rank_band_lo, tol.rank_band_hi);
      if (static_cast<int>(central_clusters.size()) != r)
        throw RankDeficiencyUndetermined(
            "central element did not separate the center");

      // Stage 2: split each central block by a random self-adjoint
      // algebra element.
      Matrix ah = random_hermitian_combination(basis, rng);
      std::vector<CentralBlock> blocks;
      for (const auto& cluster : central_clusters) {
        CentralBlock blk;
        blk.range = Matrix(d, cluster.size());
        for (std::size_t i = 0; i < cluster.size(); ++i)
          blk.range.col(i) = zes.eigenvectors().col(cluster[i]);
        const int rk = static_cast<int>(cluster.size());

        Matrix xk = blk.range.adjoint() * ah * blk.range;
        xk = (xk + xk.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Matrix> xes(xk);
        auto eig_clusters = linalg::banded_clusters(
            xes.eigenvalues(), tol.rank_band_lo, tol.rank_band_hi);
        blk.n = static_cast<int>(eig_clusters.size());
        blk.m = static_cast<int>(eig_clusters[0].size());
        for (const auto& ec : eig_clusters)
          if (static_cast<int>(ec.size()) != blk.m)
            throw RankDeficiencyUndetermined(
                "eigenvalue multiplicities differ inside a central block");
        if (blk.n * blk.m != rk)
          throw RankDeficiencyUndetermined("central block size mismatch");

        // Eigenspace bases lifted back to C^d.
        std::vector<Matrix> spaces(blk.n);
        for (int i = 0; i < blk.n; ++i) {
          Matrix wi(rk, blk.m);
          for (int c = 0; c < blk.m; ++c)
            wi.col(c) = xes.eigenvectors().col(eig_clusters[i][c]);
          spaces[i] = blk.range * wi;
        }

        // Align the multiplicity spaces: connect eigenspace 1 to each
        // eigenspace i through the best-conditioned basis element, then
        // take the unitary polar factor of the connecting map.
        std::vector<Matrix> aligned(blk.n);
        aligned[0] = spaces[0];
        for (int i = 1; i < blk.n; ++i) {
          double best = -1.0;
          Matrix best_t;
          for (const Matrix& b : basis) {
            Matrix t = spaces[0].adjoint() * b * spaces[i];
            Eigen::JacobiSVD<Matrix> svd(t);
            double smin = svd.singularValues().minCoeff();
            if (smin > best) {
              best = smin;
              best_t = t;
            }
          }
          if (best <= tol.rank_band_hi)
            throw RankDeficiencyUndetermined(
                "could not connect matrix-unit eigenspaces");
          Eigen::JacobiSVD<Matrix> svd(best_t,
                                       Eigen::ComputeFullU | Eigen::ComputeFullV);
          Matrix polar = svd.matrixV() * svd.matrixU().adjoint();
          aligned[i] = spaces[i] * polar;
        }

        // Columns copy-major with the factor index fastest.
        blk.local_unitary = Matrix(d, rk);
        int col = 0;
        for (int mu = 0; mu < blk.m; ++mu)
          for (int i = 0; i < blk.n; ++i) blk.local_unitary.col(col++) = aligned[i].col(mu);
        blocks.push_back(std::move(blk));
      }

      // Canonical block order: ascending size, then multiplicity.
      std::vector<int> order(blocks.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        if (blocks[x].n != blocks[y].n) return blocks[x].n < blocks[y].n;
        return blocks[x].m < blocks[y].m;
      });

      std::vector<int> sizes, mults;
      Matrix u(d, d);
      int col = 0;
      for (int idx : order) {
        sizes.push_back(blocks[idx].n);
        mults.push_back(blocks[idx].m);
        u.middleCols(col, blocks[idx].local_unitary.cols()) = blocks[idx].local_unitary;
        col += static_cast<int>(blocks[idx].local_unitary.cols());
      }
      if (col != d)
        throw RankDeficiencyUndetermined("central blocks do not fill the space");

      std::vector<double> weights;
      for (int m : mults) weights.push_back(static_cast<double>(m) / d);
      WedderburnDecomposition result{
          MultiMatrixAlgebra(BlockSpec{sizes}, TraceWeights{weights}),
          mults, u, d};

      // Validation: every basis element must become block diagonal with
      // identical copies, and the structure maps must invert each other.
      double worst = 0.0;
      for (const Matrix& b : basis) {
        Matrix round_trip = result.to_concrete(result.to_abstract(b));
        worst = std::max(worst, (round_trip - b).norm() / std::max(b.norm(), 1.0));
      }
      if (worst > 1e3 * tol.span_residual)
        throw RankDeficiencyUndetermined(
            "recovered block structure fails validation");
      return result;
    } catch (const RankDeficiencyUndetermined& e) {
      last_error = e.what();
    }
  }
  throw RankDeficiencyUndetermined(last_error);
}

AlgebraElement GroupAlgebra::average(const std::vector<int>& elements) const {
  AlgebraElement acc = algebra.zero();
  for (int g : elements) acc += basis[g];
  return acc * cxd(1.0 / static_cast<double>(elements.size()), 0.0);
}

GroupAlgebra group_algebra(const FiniteGroup& g, std::uint64_t seed) {
  std::vector<Matrix> gens;
  gens.reserve(g.order());
  for (int i = 0; i < g.order(); ++i) gens.push_back(g.left_regular_matrix(i));
  WedderburnOptions opt;
  opt.seed = seed;
  WedderburnDecomposition dec = wedderburn_decompose(gens, opt);
  std::vector<AlgebraElement> basis;
  basis.reserve(g.order());
  for (int i = 0; i < g.order(); ++i) basis.push_back(dec.to_abstract(gens[i]));
  return GroupAlgebra{g, dec.algebra, std::move(basis), std::move(dec)};
}

}  // namespace opalg
