#include "opalg/index.hpp"

#include <algorithm>
#include <cmath>

#include "opalg/linalg.hpp"

namespace opalg {

namespace {

using linalg::vec;
using linalg::unvec;

/// Block-k compression of the expectation as a map on n x n matrices.
/// With trace-orthonormal coordinates the scaling factors cancel, so this
/// is just the (k, k) diagonal block of the coordinate operator.
Matrix block_compression(const MultiMatrixAlgebra& m, const Matrix& e_matrix,
                         int block) {
  int n = m.block_size(block);
  int off = m.block_offset(block);
  return e_matrix.block(off, off, n * n, n * n);
}

struct GEval {
  double value;
  Vector y;  // H^+ xi
};

GEval evaluate_g(const Matrix& phi, const Vector& xi, const Tolerances& tol,
                 bool check_carrier) {
  int n = static_cast<int>(xi.size());
  Matrix p = xi * xi.adjoint();
  Matrix h = unvec(phi * vec(p), n, n);
  h = (h + h.adjoint()) / 2.0;
  Matrix hp = linalg::pinv_hermitian(h, tol.pinv_rel_cutoff);
  Vector y = hp * xi;
  if (check_carrier) {
    Vector back = h * y;
    if ((back - xi).norm() > 1e-6)
      throw CarrierViolation(
          "vector outside the carrier of E(p); the map is not a faithful "
          "expectation");
  }
  return {std::real(xi.dot(y)), std::move(y)};
}

/// Wirtinger gradient of g(xi) = <H(xi)^+ xi, xi>, H = Phi(xi xi*):
/// 2 (y - K xi) with y = H^+ xi and K = Phi^H(y y*).
Vector gradient(const Matrix& phi, const Vector& xi, const GEval& at) {
  int n = static_cast<int>(xi.size());
  Matrix yy = at.y * at.y.adjoint();
  Matrix k = unvec(phi.adjoint() * vec(yy), n, n);
  k = (k + k.adjoint()) / 2.0;
  return 2.0 * (at.y - k * xi);
}

struct BlockBest {
  double g = -1.0;
  Vector xi;
};

BlockBest optimize_block(const Matrix& phi, int n, Rng rng,
                         const std::vector<Vector>& extra_starts,
                         const IndexOptions& opt) {
  BlockBest best;
  auto ascend = [&](Vector xi) {
    xi.normalize();
    GEval cur = evaluate_g(phi, xi, opt.tol, true);
    double step = 0.5;
    for (int it = 0; it < opt.max_iters; ++it) {
      Vector grad = gradient(phi, xi, cur);
      // Tangent component on the unit sphere.
      grad -= std::real(xi.dot(grad)) * xi;
      double gn = grad.norm();
      if (gn <= 1e-12 * std::max(1.0, cur.value)) break;
      bool moved = false;
      while (step > 1e-14) {
        Vector trial = xi + step * grad;
        trial.normalize();
        GEval t = evaluate_g(phi, trial, opt.tol, true);
        if (t.value > cur.value + 1e-15 * std::abs(cur.value)) {
          xi = std::move(trial);
          cur = std::move(t);
          step = std::min(step * 1.5, 1.0);
          moved = true;
          break;
        }
        step /= 2.0;
      }
      if (!moved) break;
    }
    if (cur.value > best.g) {
      best.g = cur.value;
      best.xi = xi;
    }
  };

  for (int s = 0; s < opt.starts; ++s) ascend(rng.normal_vector(n));
  for (const Vector& v : extra_starts)
    if (v.size() == n && v.norm() > 0) ascend(v);
  return best;
}

}  // namespace

double rank_one_constant(const MultiMatrixAlgebra& m, const Matrix& e_matrix,
                         int block, const Vector& xi, const Tolerances& tol) {
  Vector unit = xi / xi.norm();
  Matrix phi = block_compression(m, e_matrix, block);
  GEval g = evaluate_g(phi, unit, tol, true);
  return 1.0 / g.value;
}

IndexResult index_from_operator(const MultiMatrixAlgebra& m,
                                const Matrix& e_matrix,
                                const IndexOptions& options) {
  Rng root(options.seed);
  IndexResult res;
  res.seed = options.seed;
  res.starts_used = options.starts;


  std::vector<std::vector<Vector>> extra(m.block_count());
  auto apply_e = [&](const AlgebraElement& x) {
    return m.from_coords(e_matrix * m.coords(x));
  };

  for (int round = 0; round < 4; ++round) {
    double g_best = -1.0;
    for (int k = 0; k < m.block_count(); ++k) {
      Matrix phi = block_compression(m, e_matrix, k);
      BlockBest bb = optimize_block(phi, m.block_size(k),
                                    root.child(1000 + k), extra[k], options);
      if (bb.g > g_best) {
        g_best = bb.g;
        res.witness_block = k;
        res.witness_vector = bb.xi;
      }
    }
    res.value = g_best;
    res.best_constant = 1.0 / g_best;
    res.c_hi = res.best_constant;
    res.c_lo = res.c_hi * (1.0 - options.bracket_rel);
    res.witness = m.embed(res.witness_block,
                          res.witness_vector * res.witness_vector.adjoint());

    // Positivity audit of E - c_lo id on random positive samples.  A
    // violation means the optimizer missed the supremum; its spectral
    // directions are promoted to starts and the search repeats.
    Rng audit = root.child(777);
    bool violated = false;
    for (int s = 0; s < options.audit_samples && !violated; ++s) {
      AlgebraElement x = m.random_positive(audit);
      AlgebraElement gap = apply_e(x) - res.c_lo * x;
      for (int k = 0; k < m.block_count(); ++k) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(gap.block(k));
        if (es.eigenvalues().minCoeff() < -1e-9 * std::max(1.0, norm2(x))) {
          violated = true;
          Eigen::SelfAdjointEigenSolver<Matrix> xs(x.block(k));
          for (int c = 0; c < m.block_size(k); ++c)
            if (xs.eigenvalues()(c) > 1e-12)
              extra[k].push_back(xs.eigenvectors().col(c));
        }
      }
    }
    if (!violated) return res;
  }
  throw OptimizerNonConvergence(
      "index brackets failed to close: positivity audit keeps finding "
      "violations");
}

IndexResult pimsner_popa_index(const ConditionalExpectation& e,
                               const IndexOptions& options) {
  return index_from_operator(e.source(), e.matrix(), options);
}

}  // namespace opalg
