#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "opalg/errors.hpp"

namespace opalg::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Column-major vectorization.
inline Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, int rows, int cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kron(const Matrix& a, const Matrix& b);

/// Residual norm of v after projecting onto the orthonormal columns of q,
/// relative to |v|.  q may have zero columns.
double span_residual(const Vector& v, const Matrix& q);

/// Orthonormalizes the columns of m by modified Gram-Schmidt with
/// re-orthogonalization, dropping columns whose relative residual falls
/// below drop_tol.
Matrix orthonormalize(const Matrix& m, double drop_tol);

/// True when two orthonormal column spans coincide: equal dimension and
/// mutual projection residuals at most tol.  max_resid receives the worst
/// residual seen.
bool spans_equal(const Matrix& a, const Matrix& b, double tol,
                 double* max_resid = nullptr);

/// Orthonormal basis of the kernel of a Hermitian PSD Gram matrix:
/// eigenvectors whose eigenvalue is at most rel_tol * max eigenvalue.
/// The default sits well above the roundoff floor of accumulated Gram
/// matrices (about 1e-15 relative) and well below any honest nonzero
/// constraint eigenvalue.
Matrix gram_nullspace(const Matrix& gram, double rel_tol = 1e-12);

/// Numerical rank from singular values with an undetermined band:
/// values below band_lo * s_max count as zero, above band_hi * s_max as
/// nonzero, and anything inside the band throws RankDeficiencyUndetermined.
int banded_rank(const Eigen::VectorXd& singular_values, double band_lo,
                double band_hi);

/// Splits ascending eigenvalues into clusters with the banded gap rule:
/// gaps at most band_lo * scale merge, gaps at least band_hi * scale
/// split, anything between throws RankDeficiencyUndetermined.  The scale
/// is max(|largest eigenvalue|, 1).
std::vector<std::vector<int>> banded_clusters(const Eigen::VectorXd& ascending,
                                              double band_lo, double band_hi);

/// Clusters a sorted list of reals: a new cluster starts where the gap to
/// the previous value exceeds tol.  Returns (representative, multiplicity)
/// pairs; the representative is the cluster mean.
std::vector<std::pair<double, int>> cluster_sorted(
    const Eigen::VectorXd& sorted_values, double tol);

/// Moore-Penrose pseudo-inverse of a Hermitian matrix, with eigenvalues of
/// magnitude below rel_cutoff * max|eigenvalue| treated as zero.
Matrix pinv_hermitian(const Matrix& h, double rel_cutoff);

/// Spectral norm (largest singular value).
double op_norm(const Matrix& m);

/// One accepted word of a closure: generator indices (empty = unit) and
/// the product object it denotes.
template <class Obj>
struct ClosureItem {
  std::vector<int> word;
  Obj obj;
};

template <class Obj>
struct Closure {
  std::vector<ClosureItem<Obj>> items;  ///< accepted basis, length-lex order
  Matrix basis;                         ///< orthonormal coordinates, one column per item
  int longest_word = 0;
  bool stabilized = false;  ///< a full round added no dimension
};

/// Length-lex word closure with re-orthonormalization each round.
/// Starting from the unit (when given) and the generators, repeatedly
/// extends accepted words on the right by every generator; a candidate
/// enters the basis iff its relative residual against the current span
/// exceeds accept_tol.  Products whose norm is at the roundoff scale of
/// the factors that produced them count as zero, so noise never enters
/// the basis.  Stops when a full round adds nothing or the span fills the
/// coordinate space.
template <class Obj, class MulFn, class CoordFn>
Closure<Obj> close_words(const std::vector<Obj>& generators,
                         const std::optional<Obj>& unit, MulFn mul,
                         CoordFn coord, int coord_dim, double accept_tol) {
  Closure<Obj> out;
  out.basis = Matrix(coord_dim, 0);
  std::vector<double> item_norms;

  std::vector<double> gen_norms;
  gen_norms.reserve(generators.size());
  for (const Obj& g : generators) gen_norms.push_back(coord(g).norm());

  auto try_accept = [&](std::vector<int> word, const Obj& obj,
                        double noise_floor) -> bool {
    Vector c = coord(obj);
    double nrm = c.norm();
    if (nrm <= noise_floor) return false;
    Vector r = c;
    for (int pass = 0; pass < 2; ++pass)
      if (out.basis.cols() > 0) r -= out.basis * (out.basis.adjoint() * r);
    if (r.norm() <= std::max(accept_tol * nrm, noise_floor)) return false;
    r /= r.norm();
    out.basis.conservativeResize(Eigen::NoChange, out.basis.cols() + 1);
    out.basis.col(out.basis.cols() - 1) = r;
    out.longest_word = std::max(out.longest_word, static_cast<int>(word.size()));
    out.items.push_back({std::move(word), obj});
    item_norms.push_back(nrm);
    return true;
  };

  std::vector<std::size_t> frontier;
  if (unit) {
    if (try_accept({}, *unit, 0.0)) frontier.push_back(0);
  }
  // Round of length-1 words.
  {
    std::vector<std::size_t> next;
    for (int g = 0; g < static_cast<int>(generators.size()); ++g)
      if (try_accept({g}, generators[g], 0.0)) next.push_back(out.items.size() - 1);
    frontier = std::move(next);
  }

  while (!frontier.empty() && out.basis.cols() < coord_dim) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      for (int g = 0; g < static_cast<int>(generators.size()); ++g) {
        std::vector<int> word = out.items[idx].word;
        word.push_back(g);
        Obj prod = mul(out.items[idx].obj, generators[g]);
        double floor = 1e-12 * item_norms[idx] * gen_norms[g];
        if (try_accept(std::move(word), prod, floor))
          next.push_back(out.items.size() - 1);
      }
      if (out.basis.cols() >= coord_dim) break;
    }
    if (next.empty()) {
      out.stabilized = true;
      return out;
    }
    frontier = std::move(next);
  }
  // Either the span filled the whole coordinate space (no further growth
  // is possible) or the generators were all zero.
  out.stabilized = true;
  return out;
}

}  // namespace opalg::linalg
