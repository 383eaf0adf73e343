#include "opalg/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace opalg::linalg {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double span_residual(const Vector& v, const Matrix& q) {
  double nrm = v.norm();
  if (nrm == 0.0) return 0.0;
  Vector r = v;
  for (int pass = 0; pass < 2; ++pass)
    if (q.cols() > 0) r -= q * (q.adjoint() * r);
  return r.norm() / nrm;
}

Matrix orthonormalize(const Matrix& m, double drop_tol) {
  // Columns at the roundoff scale of the largest column count as zero;
  // without the floor, noise vectors would pass the relative residual
  // test and enter the basis.
  double scale = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) scale = std::max(scale, m.col(j).norm());
  double floor = 1e-12 * scale;

  Matrix q(m.rows(), 0);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Vector c = m.col(j);
    double nrm = c.norm();
    if (nrm <= floor || nrm < 1e-300) continue;
    Vector r = c;
    for (int pass = 0; pass < 2; ++pass)
      if (q.cols() > 0) r -= q * (q.adjoint() * r);
    if (r.norm() <= std::max(drop_tol * nrm, floor)) continue;
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = r / r.norm();
  }
  return q;
}

bool spans_equal(const Matrix& a, const Matrix& b, double tol, double* max_resid) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    worst = std::max(worst, span_residual(a.col(j), b));
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    worst = std::max(worst, span_residual(b.col(j), a));
  if (max_resid) *max_resid = worst;
  return a.cols() == b.cols() && worst <= tol;
}

Matrix gram_nullspace(const Matrix& gram, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const Eigen::VectorXd& ev = es.eigenvalues();
  double top = ev.cwiseAbs().maxCoeff();
  // The absolute floor absorbs grams that are pure constraint roundoff
  // (all constraints trivially satisfied, eigenvalues ~1e-30); without it
  // the relative threshold would read that noise as signal.
  double cut = std::max(rel_tol * top, 1e-20);
  int null_count = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) <= cut) ++null_count;
  // Eigenvalues come out ascending, so the kernel occupies the leading
  // columns.
  return es.eigenvectors().leftCols(null_count);
}

int banded_rank(const Eigen::VectorXd& singular_values, double band_lo,
                double band_hi) {
  if (singular_values.size() == 0) return 0;
  double top = singular_values.maxCoeff();
  if (top <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    double rel = singular_values(i) / top;
    if (rel >= band_hi) {
      ++rank;
    } else if (rel > band_lo) {
      throw RankDeficiencyUndetermined(
          "singular value falls inside the undetermined tolerance band");
    }
  }
  return rank;
}

std::vector<std::vector<int>> banded_clusters(const Eigen::VectorXd& ascending,
                                              double band_lo, double band_hi) {
  if (ascending.size() == 0) return {};
  double scale = std::max(ascending.cwiseAbs().maxCoeff(), 1.0);
  std::vector<std::vector<int>> clusters;
  clusters.push_back({0});
  for (Eigen::Index i = 1; i < ascending.size(); ++i) {
    double gap = ascending(i) - ascending(i - 1);
    if (gap >= band_hi * scale) {
      clusters.push_back({static_cast<int>(i)});
    } else if (gap <= band_lo * scale) {
      clusters.back().push_back(static_cast<int>(i));
    } else {
      throw RankDeficiencyUndetermined(
          "eigenvalue gap falls inside the undetermined tolerance band");
    }
  }
  return clusters;
}

std::vector<std::pair<double, int>> cluster_sorted(
    const Eigen::VectorXd& sorted_values, double tol) {
  std::vector<std::pair<double, int>> out;
  Eigen::Index i = 0;
  while (i < sorted_values.size()) {
    Eigen::Index j = i + 1;
    double sum = sorted_values(i);
    while (j < sorted_values.size() &&
           sorted_values(j) - sorted_values(j - 1) <= tol) {
      sum += sorted_values(j);
      ++j;
    }
    out.emplace_back(sum / static_cast<double>(j - i), static_cast<int>(j - i));
    i = j;
  }
  return out;
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().maxCoeff();
}

Matrix pinv_hermitian(const Matrix& h, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  double top = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > rel_cutoff * top) inv(i) = 1.0 / ev(i);
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace opalg::linalg
