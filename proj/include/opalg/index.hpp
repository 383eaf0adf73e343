#pragma once

#include <cstdint>
#include <optional>

#include "opalg/expectation.hpp"

namespace opalg {

struct IndexOptions {
  int starts = 32;        ///< multi-start count per block
  int max_iters = 500;    ///< gradient-ascent iterations per start
  std::uint64_t seed = 0;
  int audit_samples = 1000;
  double bracket_rel = 1e-6;
  Tolerances tol = default_tolerances();
};

/// Result of the probabilistic index computation.  value = 1/c* where c*
/// is the best constant with E(x) >= c* x for all positive x.  The
/// bracket [c_lo, c_hi] always satisfies c_hi - c_lo <= bracket_rel * c_hi;
/// c_hi comes from the optimizer, c_lo from a randomized positivity audit.
struct IndexResult {
  double value = 0.0;
  double best_constant = 0.0;
  bool is_finite = true;  ///< always true for a faithful finite-dimensional E
  int witness_block = 0;
  Vector witness_vector;                  ///< unit vector xi in the witness block
  std::optional<AlgebraElement> witness;  ///< the minimal projection embed(k, xi xi*)
  double c_lo = 0.0;
  double c_hi = 0.0;
  int starts_used = 0;
  std::uint64_t seed = 0;
};

/// Largest c with E(p) - c p psd, for the rank-one projection of a unit
/// vector in one block: 1 / <E(p)_k^+ xi, xi> by the Schur-complement
/// characterization.  Throws CarrierViolation when xi falls outside the
/// carrier of E(p)_k (impossible for a faithful expectation).
double rank_one_constant(const MultiMatrixAlgebra& m, const Matrix& e_matrix,
                         int block, const Vector& xi,
                         const Tolerances& tol = default_tolerances());

/// Index computation on a raw coordinate operator; exposed so diagnostics
/// and negative tests can drive corrupted maps through the same path.
IndexResult index_from_operator(const MultiMatrixAlgebra& m,
                                const Matrix& e_matrix,
                                const IndexOptions& options = {});

/// Pimsner-Popa probabilistic index of the trace-preserving expectation:
/// maximizes g(xi) = <E(xi xi*)^+ xi, xi> over the unit sphere of each
/// block by seeded multi-start projected gradient ascent with
/// backtracking, then audits positivity of E - c_lo id on random positive
/// samples.  Throws OptimizerNonConvergence when the audit keeps finding
/// violations the optimizer cannot absorb.
IndexResult pimsner_popa_index(const ConditionalExpectation& e,
                               const IndexOptions& options = {});

}  // namespace opalg
