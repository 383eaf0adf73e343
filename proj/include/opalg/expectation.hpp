#pragma once

#include <vector>

#include "opalg/subalgebra.hpp"

namespace opalg {

/// The trace-preserving conditional expectation onto a unital
/// *-subalgebra: the orthogonal projection of M onto the subalgebra under
/// tr(y* x), stored as its matrix on trace-basis coordinates.  It is the
/// unique expectation with tr o E = tr.
class ConditionalExpectation {
 public:
  const MultiMatrixAlgebra& source() const { return source_; }
  const Subalgebra& target() const { return target_; }
  const Matrix& matrix() const { return op_; }

  AlgebraElement apply(const AlgebraElement& x) const;

  /// Wraps an arbitrary operator without validating the expectation laws;
  /// meant for diagnostics and negative tests.
  static ConditionalExpectation unchecked(MultiMatrixAlgebra source,
                                          Subalgebra target, Matrix op);

  friend ConditionalExpectation conditional_expectation(
      const MultiMatrixAlgebra& m, const Subalgebra& p, const Tolerances& tol);

 private:
  ConditionalExpectation(MultiMatrixAlgebra source, Subalgebra target, Matrix op)
      : source_(std::move(source)), target_(std::move(target)), op_(std::move(op)) {}

  MultiMatrixAlgebra source_;
  Subalgebra target_;
  Matrix op_;
};

/// Builds the trace-preserving expectation onto p.  Throws NotSubalgebra
/// when p does not live inside m.
ConditionalExpectation conditional_expectation(
    const MultiMatrixAlgebra& m, const Subalgebra& p,
    const Tolerances& tol = default_tolerances());

/// Residuals of every expectation law, measured on the trace basis and on
/// seeded random elements: idempotent, unital, trace-preserving,
/// adjoint-preserving, bimodule over the target, and positivity
/// (smallest eigenvalue of E(x*x) over random x, sign-flipped so that 0
/// means no violation).
struct ExpectationLawResiduals {
  double idempotent = 0;
  double unital = 0;
  double trace_preserving = 0;
  double star = 0;
  double bimodule = 0;
  double positivity = 0;

  double worst() const;
};

ExpectationLawResiduals check_expectation_laws(const ConditionalExpectation& e,
                                               std::uint64_t seed = 0,
                                               int positivity_samples = 16);

/// Entries where E(a x) != a E(x) or E(x a) != E(x) a beyond tol, for a in
/// the target basis and x in the trace basis.  Empty for a valid
/// expectation.
struct MultiplicativeDomainReport {
  struct Entry {
    int target_index;
    int ambient_index;
    bool left;  ///< true: E(a x) vs a E(x), false: E(x a) vs E(x) a
    double residual;
  };
  std::vector<Entry> violations;
  bool clean() const { return violations.empty(); }
};

MultiplicativeDomainReport multiplicative_domain_check(
    const ConditionalExpectation& e, double tol = 1e-10);

/// Operator norm of E1 E2 - E2 E1 on coordinates.
double commutator_norm(const ConditionalExpectation& e1,
                       const ConditionalExpectation& e2);

/// (E1 E2)^k as a coordinate operator; the alternating-product
/// approximation of the expectation onto the intersection.
Matrix alternating_product(const ConditionalExpectation& e1,
                           const ConditionalExpectation& e2, int k);

}  // namespace opalg
