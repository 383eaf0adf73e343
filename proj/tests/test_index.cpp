#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opalg/corpus.hpp"
#include "opalg/index.hpp"

using namespace opalg;

namespace {

MultiMatrixAlgebra scalar_in_mn(int n) {
  return MultiMatrixAlgebra(BlockSpec{{n}}, TraceWeights{{1.0 / n}});
}

/// Independent oracle for the best constant of a rank-one projection:
/// bisection on c with a direct smallest-eigenvalue test, no
/// pseudo-inverse anywhere.
double bisection_constant(const ConditionalExpectation& e, int block,
                          const Vector& xi) {
  const MultiMatrixAlgebra& m = e.source();
  Vector unit = xi / xi.norm();
  AlgebraElement p = m.embed(block, unit * unit.adjoint());
  AlgebraElement ep = e.apply(p);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    double c = (lo + hi) / 2.0;
    if (min_eigenvalue(ep - cxd(c, 0.0) * p) >= -1e-12)
      lo = c;
    else
      hi = c;
  }
  return lo;
}

/// Derivative-free independent search: many random starts refined by
/// random perturbation hill climbing on the bisection constant.
double oracle_index(const ConditionalExpectation& e, std::uint64_t seed,
                    int starts) {
  const MultiMatrixAlgebra& m = e.source();
  double best_c = 1.0;
  Rng rng(seed);
  for (int k = 0; k < m.block_count(); ++k) {
    int n = m.block_size(k);
    for (int s = 0; s < starts; ++s) {
      Vector xi = rng.normal_vector(n).normalized();
      double c = bisection_constant(e, k, xi);
      double sigma = 0.5;
      for (int it = 0; it < 120 && sigma > 1e-9; ++it) {
        Vector trial = (xi + sigma * rng.normal_vector(n)).normalized();
        double ct = bisection_constant(e, k, trial);
        if (ct < c) {
          c = ct;
          xi = trial;
        } else {
          sigma *= 0.8;
        }
      }
      best_c = std::min(best_c, c);
    }
  }
  return 1.0 / best_c;
}

}  // namespace

TEST_CASE("identity expectation has index one") {
  MultiMatrixAlgebra a = scalar_in_mn(2);
  ConditionalExpectation e = conditional_expectation(a, full_subalgebra(a));
  IndexResult r = pimsner_popa_index(e);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.is_finite);
}

TEST_CASE("scalars in M_n have index n") {
  for (int n = 2; n <= 5; ++n) {
    MultiMatrixAlgebra a = scalar_in_mn(n);
    ConditionalExpectation e = conditional_expectation(a, trivial_subalgebra(a));
    IndexResult r = pimsner_popa_index(e);
    CHECK(std::abs(r.value - n) < 1e-6);
    CHECK(r.c_hi - r.c_lo <= 1e-6 * r.c_hi + 1e-15);
  }
}

TEST_CASE("largest eigenvalue bound behind the scalar index") {
  // lambda_max(x) <= n tr(x) for positive x, with equality approached by
  // rank-one projections; this is what pins Ind = n.
  Rng rng(31);
  for (int n = 2; n <= 5; ++n) {
    MultiMatrixAlgebra a = scalar_in_mn(n);
    for (int s = 0; s < 50; ++s) {
      AlgebraElement x = a.random_positive(rng);
      CHECK(max_eigenvalue(x) <= n * std::real(trace(x)) + 1e-10);
    }
  }
}

TEST_CASE("diagonal of M2 has index two") {
  MultiMatrixAlgebra a = scalar_in_mn(2);
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  Subalgebra diag = close_under_algebra(a, {a.embed(0, e11)});
  ConditionalExpectation e = conditional_expectation(a, diag);
  IndexResult r = pimsner_popa_index(e);
  CHECK(std::abs(r.value - 2.0) < 1e-6);
}

TEST_CASE("tensor-embedded factor has index four") {
  // M2 (x) 1_2 inside M4: minimal projections of entangled vectors pin
  // the constant at 1/4, so the index is 4.
  MultiMatrixAlgebra a(BlockSpec{{4}}, TraceWeights{{0.25}});
  std::vector<AlgebraElement> gens;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix e = Matrix::Zero(2, 2);
      e(i, j) = 1.0;
      gens.push_back(a.embed(0, linalg::kron(e, Matrix::Identity(2, 2))));
    }
  Subalgebra n = close_under_algebra(a, gens);
  REQUIRE(n.dim() == 4);
  ConditionalExpectation e = conditional_expectation(a, n);
  IndexResult r = pimsner_popa_index(e);
  CHECK(std::abs(r.value - 4.0) < 1e-6);
  CHECK(std::abs(oracle_index(e, 55, 16) - 4.0) < 1e-6);
}

TEST_CASE("subgroup inclusions match the group index") {
  struct Case {
    const char* group;
    std::vector<int> subgroup_gens;
    double expected;
  };
  // Generators are element indices: rotations sit below n in the
  // dihedral listing, so S3 = {e, r, r2, s, sr, sr2} and D4 likewise.
  const Case cases[] = {
      {"Z4", {2}, 2.0},  // Z2 inside Z4
      {"S3", {1}, 2.0},  // Z3 inside S3
      {"S3", {3}, 3.0},  // Z2 inside S3
      {"D4", {1}, 2.0},  // Z4 inside D4
  };
  for (const Case& c : cases) {
    GroupAlgebra ga = group_algebra(builtin_group(c.group));
    Subalgebra h = subgroup_algebra(ga, ga.group.subgroup_closure(c.subgroup_gens));
    ConditionalExpectation e = conditional_expectation(ga.algebra, h);
    IndexResult r = pimsner_popa_index(e);
    CHECK(std::abs(r.value - c.expected) < 1e-6);
  }
}

TEST_CASE("optimizer value matches the bisection oracle") {
  Rng rng(404);
  for (int trial = 0; trial < 3; ++trial) {
    MultiMatrixAlgebra m = random_algebra(rng, 2, 3);
    Subalgebra p = close_under_algebra(m, random_subalgebra_generators(rng, m));
    ConditionalExpectation e = conditional_expectation(m, p);
    IndexResult r = pimsner_popa_index(e);
    double oracle = oracle_index(e, 1000 + trial, 16);
    CHECK(std::abs(r.value - oracle) < 1e-5 * std::max(1.0, oracle));
  }
}

TEST_CASE("witness projection pins the constant") {
  GroupAlgebra ga = group_algebra(symmetric_group_3());
  Subalgebra h = subgroup_algebra(ga, ga.group.subgroup_closure({3}));
  ConditionalExpectation e = conditional_expectation(ga.algebra, h);
  IndexResult r = pimsner_popa_index(e);

  REQUIRE(r.witness.has_value());
  AlgebraElement p = *r.witness;
  CHECK(norm2(p * p - p) < 1e-10);
  // Just below the constant: positive; just above: not.
  CHECK(min_eigenvalue(e.apply(p) - cxd(r.c_lo, 0) * p) > -1e-9);
  CHECK(min_eigenvalue(e.apply(p) - cxd(r.c_hi + 1e-6, 0) * p) < 0.0);
}

TEST_CASE("positivity audit holds at the reported lower constant") {
  MultiMatrixAlgebra a = scalar_in_mn(3);
  ConditionalExpectation e = conditional_expectation(a, trivial_subalgebra(a));
  IndexResult r = pimsner_popa_index(e);
  Rng rng(2024);
  for (int s = 0; s < 1000; ++s) {
    AlgebraElement x = a.random_positive(rng);
    AlgebraElement gap = e.apply(x) - cxd(r.c_lo, 0) * x;
    CHECK(min_eigenvalue(gap) > -1e-9 * std::max(1.0, norm2(x)));
  }
}

TEST_CASE("index is invariant under unitary conjugation of the target") {
  MultiMatrixAlgebra a(BlockSpec{{2, 2}}, TraceWeights{{0.3, 0.2}});
  Rng rng(77);
  Subalgebra p = close_under_algebra(a, random_subalgebra_generators(rng, a));
  Subalgebra q = conjugate(p, a.random_unitary(rng));
  IndexResult rp = pimsner_popa_index(conditional_expectation(a, p));
  IndexResult rq = pimsner_popa_index(conditional_expectation(a, q));
  CHECK(std::abs(rp.value - rq.value) < 1e-6 * std::max(1.0, rp.value));
}

TEST_CASE("maps that break the carrier condition are rejected") {
  // Compression onto a corner is not a faithful expectation: vectors
  // outside the corner fall out of the carrier of E(p).
  MultiMatrixAlgebra a = scalar_in_mn(2);
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  AlgebraElement corner = a.embed(0, e11);
  Matrix op(4, 4);
  for (int j = 0; j < 4; ++j)
    op.col(j) = a.coords(corner * a.basis_element(j) * corner);
  Vector outside(2);
  outside << 0.0, 1.0;
  CHECK_THROWS_AS(rank_one_constant(a, op, 0, outside), CarrierViolation);
}
