#include "opalg/expectation.hpp"

#include <algorithm>
#include <cmath>

namespace opalg {

AlgebraElement ConditionalExpectation::apply(const AlgebraElement& x) const {
  if (x.owner() != source_)
    throw OwnerMismatch("expectation applied to a foreign element");
  return source_.from_coords(op_ * source_.coords(x));
}

ConditionalExpectation ConditionalExpectation::unchecked(
    MultiMatrixAlgebra source, Subalgebra target, Matrix op) {
  return ConditionalExpectation(std::move(source), std::move(target), std::move(op));
}

ConditionalExpectation conditional_expectation(const MultiMatrixAlgebra& m,
                                               const Subalgebra& p,
                                               const Tolerances& tol) {
  if (p.ambient() != m)
    throw NotSubalgebra("expectation target lives in a different algebra");
  const Matrix& c = p.coord_basis();
  ConditionalExpectation e(m, p, c * c.adjoint());
  ExpectationLawResiduals laws = check_expectation_laws(e, 1, 4);
  if (laws.worst() > tol.invariant)
    throw InvariantViolation("constructed expectation fails its laws");
  return e;
}

double ExpectationLawResiduals::worst() const {
  return std::max({idempotent, unital, trace_preserving, star, bimodule, positivity});
}

ExpectationLawResiduals check_expectation_laws(const ConditionalExpectation& e,
                                               std::uint64_t seed,
                                               int positivity_samples) {
  const MultiMatrixAlgebra& m = e.source();
  const int d = m.total_dim();
  ExpectationLawResiduals r;

  r.idempotent = (e.matrix() * e.matrix() - e.matrix()).cwiseAbs().maxCoeff();

  AlgebraElement one = m.identity();
  r.unital = norm2(e.apply(one) - one);

  for (int i = 0; i < d; ++i) {
    AlgebraElement b = m.basis_element(i);
    AlgebraElement eb = e.apply(b);
    r.trace_preserving =
        std::max(r.trace_preserving, std::abs(trace(eb) - trace(b)));
    r.star = std::max(r.star, norm2(e.apply(b.adjoint()) - eb.adjoint()));
  }

  for (const AlgebraElement& a : e.target().basis()) {
    for (int i = 0; i < d; ++i) {
      AlgebraElement x = m.basis_element(i);
      AlgebraElement ex = e.apply(x);
      r.bimodule = std::max(r.bimodule, norm2(e.apply(a * x) - a * ex));
      r.bimodule = std::max(r.bimodule, norm2(e.apply(x * a) - ex * a));
    }
  }

  Rng rng(seed);
  for (int s = 0; s < positivity_samples; ++s) {
    AlgebraElement x = m.random_positive(rng);
    double lo = min_eigenvalue(e.apply(x));
    double scale = std::max(norm2(x), 1.0);
    r.positivity = std::max(r.positivity, std::max(0.0, -lo) / scale);
  }
  return r;
}

MultiplicativeDomainReport multiplicative_domain_check(
    const ConditionalExpectation& e, double tol) {
  MultiplicativeDomainReport report;
  const MultiMatrixAlgebra& m = e.source();
  for (int a = 0; a < e.target().dim(); ++a) {
    const AlgebraElement& ta = e.target().basis_element(a);
    for (int i = 0; i < m.total_dim(); ++i) {
      AlgebraElement x = m.basis_element(i);
      AlgebraElement ex = e.apply(x);
      double left = norm2(e.apply(ta * x) - ta * ex);
      if (left > tol) report.violations.push_back({a, i, true, left});
      double right = norm2(e.apply(x * ta) - ex * ta);
      if (right > tol) report.violations.push_back({a, i, false, right});
    }
  }
  return report;
}

double commutator_norm(const ConditionalExpectation& e1,
                       const ConditionalExpectation& e2) {
  return linalg::op_norm(e1.matrix() * e2.matrix() - e2.matrix() * e1.matrix());
}

Matrix alternating_product(const ConditionalExpectation& e1,
                           const ConditionalExpectation& e2, int k) {
  Matrix step = e1.matrix() * e2.matrix();
  Matrix acc = Matrix::Identity(step.rows(), step.cols());
  for (int i = 0; i < k; ++i) acc = acc * step;
  return acc;
}

}  // namespace opalg
