#include "opalg/algebra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace opalg {

MultiMatrixAlgebra::MultiMatrixAlgebra(BlockSpec blocks, TraceWeights trace,
                                       const Tolerances& tol)
    : blocks_(std::move(blocks)), trace_(std::move(trace)) {
  if (blocks_.sizes.empty()) throw ShapeMismatch("algebra needs at least one block");
  if (blocks_.sizes.size() != trace_.weights.size()) {
    std::ostringstream os;
    os << "block count " << blocks_.sizes.size() << " != weight count "
       << trace_.weights.size();
    throw ShapeMismatch(os.str());
  }
  double norm = 0.0;
  for (std::size_t k = 0; k < blocks_.sizes.size(); ++k) {
    int n = blocks_.sizes[k];
    if (n < 1) throw ShapeMismatch("block sizes must be positive");
    double w = trace_.weights[k];
    if (!(w > 0.0)) throw NonPositiveWeight("trace weights must be positive");
    norm += w * n;
  }
  if (std::abs(norm - 1.0) > tol.normalization) {
    std::ostringstream os;
    os << "sum of w_k * n_k = " << norm << ", expected 1";
    throw NormalizationViolation(os.str());
  }
  offsets_.resize(blocks_.sizes.size());
  for (std::size_t k = 0; k < blocks_.sizes.size(); ++k) {
    offsets_[k] = total_dim_;
    total_dim_ += blocks_.sizes[k] * blocks_.sizes[k];
  }
}

bool MultiMatrixAlgebra::operator==(const MultiMatrixAlgebra& other) const {
  return blocks_.sizes == other.blocks_.sizes &&
         trace_.weights == other.trace_.weights;
}

AlgebraElement MultiMatrixAlgebra::zero() const {
  std::vector<Matrix> b;
  b.reserve(blocks_.sizes.size());
  for (int n : blocks_.sizes) b.push_back(Matrix::Zero(n, n));
  return AlgebraElement(*this, std::move(b));
}

AlgebraElement MultiMatrixAlgebra::identity() const {
  std::vector<Matrix> b;
  b.reserve(blocks_.sizes.size());
  for (int n : blocks_.sizes) b.push_back(Matrix::Identity(n, n));
  return AlgebraElement(*this, std::move(b));
}

AlgebraElement MultiMatrixAlgebra::from_blocks(std::vector<Matrix> blocks) const {
  return AlgebraElement(*this, std::move(blocks));
}

AlgebraElement MultiMatrixAlgebra::embed(int block, const Matrix& m) const {
  AlgebraElement x = zero();
  std::vector<Matrix> b = x.blocks();
  if (m.rows() != blocks_.sizes[block] || m.cols() != blocks_.sizes[block])
    throw ShapeMismatch("embedded matrix does not match the block size");
  b[block] = m;
  return AlgebraElement(*this, std::move(b));
}

AlgebraElement MultiMatrixAlgebra::basis_element(int i) const {
  Vector v = Vector::Zero(total_dim_);
  v(i) = 1.0;
  return from_coords(v);
}

Vector MultiMatrixAlgebra::coords(const AlgebraElement& x) const {
  if (x.owner() != *this) throw OwnerMismatch("coords: element of a different algebra");
  Vector v(total_dim_);
  for (int k = 0; k < block_count(); ++k) {
    int n = blocks_.sizes[k];
    double s = std::sqrt(trace_.weights[k]);
    Eigen::Map<const Vector> m(x.block(k).data(), n * n);
    v.segment(offsets_[k], n * n) = s * m;
  }
  return v;
}

AlgebraElement MultiMatrixAlgebra::from_coords(const Vector& v) const {
  if (v.size() != total_dim_) throw ShapeMismatch("coordinate vector has wrong length");
  std::vector<Matrix> b(blocks_.sizes.size());
  for (int k = 0; k < block_count(); ++k) {
    int n = blocks_.sizes[k];
    double s = 1.0 / std::sqrt(trace_.weights[k]);
    b[k] = s * Eigen::Map<const Matrix>(v.data() + offsets_[k], n, n);
  }
  return AlgebraElement(*this, std::move(b));
}

AlgebraElement MultiMatrixAlgebra::random_element(Rng& rng) const {
  std::vector<Matrix> b;
  b.reserve(blocks_.sizes.size());
  for (int n : blocks_.sizes) b.push_back(rng.normal_matrix(n, n));
  return AlgebraElement(*this, std::move(b));
}

AlgebraElement MultiMatrixAlgebra::random_hermitian(Rng& rng) const {
  std::vector<Matrix> b;
  b.reserve(blocks_.sizes.size());
  for (int n : blocks_.sizes) b.push_back(rng.random_hermitian(n));
  return AlgebraElement(*this, std::move(b));
}

AlgebraElement MultiMatrixAlgebra::random_positive(Rng& rng) const {
  AlgebraElement x = random_element(rng);
  return x.adjoint() * x;
}

AlgebraElement MultiMatrixAlgebra::random_unitary(Rng& rng) const {
  std::vector<Matrix> b;
  b.reserve(blocks_.sizes.size());
  for (int n : blocks_.sizes) b.push_back(rng.random_unitary(n));
  return AlgebraElement(*this, std::move(b));
}

AlgebraElement::AlgebraElement(MultiMatrixAlgebra owner, std::vector<Matrix> blocks)
    : owner_(std::move(owner)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != owner_.block_count())
    throw ShapeMismatch("element block count does not match the algebra");
  for (int k = 0; k < owner_.block_count(); ++k) {
    int n = owner_.block_size(k);
    if (blocks_[k].rows() != n || blocks_[k].cols() != n)
      throw ShapeMismatch("element block shape does not match the algebra");
  }
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Matrix> b;
  b.reserve(blocks_.size());
  for (const Matrix& m : blocks_) b.push_back(m.adjoint());
  return AlgebraElement(owner_, std::move(b));
}

bool AlgebraElement::is_zero(double tol) const {
  for (const Matrix& m : blocks_)
    if (m.cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same_owner(*this, rhs);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += rhs.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same_owner(*this, rhs);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= rhs.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cxd scalar) {
  for (Matrix& m : blocks_) m *= scalar;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_owner(a, b);
  std::vector<Matrix> out;
  out.reserve(a.blocks().size());
  for (std::size_t k = 0; k < a.blocks().size(); ++k)
    out.push_back(a.block(static_cast<int>(k)) * b.block(static_cast<int>(k)));
  return AlgebraElement(a.owner(), std::move(out));
}

cxd trace(const AlgebraElement& x) {
  cxd t = 0.0;
  for (int k = 0; k < x.owner().block_count(); ++k)
    t += x.owner().weight(k) * x.block(k).trace();
  return t;
}

cxd inner(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_owner(x, y);
  cxd t = 0.0;
  for (int k = 0; k < x.owner().block_count(); ++k)
    t += x.owner().weight(k) * (y.block(k).adjoint() * x.block(k)).trace();
  return t;
}

double norm2(const AlgebraElement& x) {
  double s = 0.0;
  for (int k = 0; k < x.owner().block_count(); ++k)
    s += x.owner().weight(k) * x.block(k).squaredNorm();
  return std::sqrt(s);
}

double max_eigenvalue(const AlgebraElement& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < x.owner().block_count(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.block(k));
    best = std::max(best, es.eigenvalues().maxCoeff());
  }
  return best;
}

double min_eigenvalue(const AlgebraElement& x) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < x.owner().block_count(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.block(k));
    best = std::min(best, es.eigenvalues().minCoeff());
  }
  return best;
}

void require_same_owner(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.owner() != b.owner())
    throw OwnerMismatch("elements belong to different algebras");
}

void require_unitary(const AlgebraElement& u, double tol) {
  AlgebraElement one = u.owner().identity();
  AlgebraElement d1 = u.adjoint() * u - one;
  AlgebraElement d2 = u * u.adjoint() - one;
  if (!d1.is_zero(tol) || !d2.is_zero(tol))
    throw NotUnitary("element is not unitary within tolerance");
}

}  // namespace opalg
