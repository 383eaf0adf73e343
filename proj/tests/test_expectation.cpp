#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opalg/corpus.hpp"
#include "opalg/expectation.hpp"
#include "opalg/gns.hpp"

using namespace opalg;

namespace {

MultiMatrixAlgebra m2() {
  return MultiMatrixAlgebra(BlockSpec{{2}}, TraceWeights{{0.5}});
}

Subalgebra diagonal_subalgebra(const MultiMatrixAlgebra& a) {
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  return close_under_algebra(a, {a.embed(0, e11)});
}

Subalgebra rotated_diagonal(const MultiMatrixAlgebra& a, double theta) {
  Matrix u(2, 2);
  u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return conjugate(diagonal_subalgebra(a), a.embed(0, u));
}

}  // namespace

TEST_CASE("close_under_algebra examples") {
  MultiMatrixAlgebra a = m2();
  CHECK(close_under_algebra(a, {}).dim() == 1);

  std::vector<AlgebraElement> units;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix e = Matrix::Zero(2, 2);
      e(i, j) = 1.0;
      units.push_back(a.embed(0, e));
    }
  CHECK(close_under_algebra(a, units).dim() == 4);

  CHECK(diagonal_subalgebra(a).dim() == 2);
}

TEST_CASE("expectation onto the whole algebra and onto scalars") {
  MultiMatrixAlgebra a = m2();
  ConditionalExpectation e_full = conditional_expectation(a, full_subalgebra(a));
  ConditionalExpectation e_triv = conditional_expectation(a, trivial_subalgebra(a));

  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    AlgebraElement x = a.random_element(rng);
    CHECK(norm2(e_full.apply(x) - x) < 1e-12);
    AlgebraElement expected = a.identity() * trace(x);
    CHECK(norm2(e_triv.apply(x) - expected) < 1e-12);
  }
}

TEST_CASE("group expectation keeps exactly the subgroup elements") {
  GroupAlgebra gs3 = group_algebra(symmetric_group_3());
  std::vector<int> h = gs3.group.subgroup_closure({1});  // rotations
  Subalgebra ch = subgroup_algebra(gs3, h);
  ConditionalExpectation e = conditional_expectation(gs3.algebra, ch);

  for (int g = 0; g < 6; ++g) {
    bool in_h = std::find(h.begin(), h.end(), g) != h.end();
    AlgebraElement expected = in_h ? gs3.basis[g] : gs3.algebra.zero();
    CHECK(norm2(e.apply(gs3.basis[g]) - expected) < 1e-10);
  }
}

TEST_CASE("expectation laws hold on random pairs") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    MultiMatrixAlgebra m = random_algebra(rng);
    Subalgebra p = close_under_algebra(m, random_subalgebra_generators(rng, m));
    ConditionalExpectation e = conditional_expectation(m, p);
    ExpectationLawResiduals laws = check_expectation_laws(e, 17, 32);
    CHECK(laws.worst() < 1e-10);
    CHECK(multiplicative_domain_check(e).clean());
  }
}

TEST_CASE("structural errors are reported as such") {
  MultiMatrixAlgebra a = m2();
  MultiMatrixAlgebra b(BlockSpec{{3}}, TraceWeights{{1.0 / 3}});
  // Target from a different algebra.
  CHECK_THROWS_AS(conditional_expectation(a, full_subalgebra(b)), NotSubalgebra);
  // A map that is linear but no automorphism.
  Matrix bad = Matrix::Identity(4, 4);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(StarAutomorphism::from_matrix(a, bad), InvariantViolation);
  // A non-orthonormal spanning set.
  CHECK_THROWS_AS(
      Subalgebra::from_orthonormal_basis(a, {a.identity(), a.identity()}),
      NotSubalgebra);
}

TEST_CASE("corrupted operators fail the multiplicative domain check") {
  MultiMatrixAlgebra a = m2();
  Subalgebra diag = diagonal_subalgebra(a);
  ConditionalExpectation good = conditional_expectation(a, diag);
  CHECK(multiplicative_domain_check(good).clean());

  Matrix bad = good.matrix();
  bad(1, 2) += 0.05;
  ConditionalExpectation corrupted =
      ConditionalExpectation::unchecked(a, diag, bad);
  CHECK_FALSE(multiplicative_domain_check(corrupted).clean());
}

TEST_CASE("intersections") {
  MultiMatrixAlgebra a = m2();
  Subalgebra diag = diagonal_subalgebra(a);

  Subalgebra self = intersect({diag, diag});
  CHECK(self.dim() == 2);
  Subalgebra with_full = intersect({diag, full_subalgebra(a)});
  CHECK(with_full.dim() == 2);

  // A conjugated copy of the diagonal meets it only in the scalars; the
  // orthogonal (Hadamard) rotation is the extreme case.
  Subalgebra hada = rotated_diagonal(a, 3.14159265358979323846 / 4.0);
  CHECK(intersect({diag, hada}).dim() == 1);
  Subalgebra generic = rotated_diagonal(a, 0.3);
  CHECK(intersect({diag, generic}).dim() == 1);

  MultiMatrixAlgebra b(BlockSpec{{3}}, TraceWeights{{1.0 / 3}});
  CHECK_THROWS_AS(intersect({diag, full_subalgebra(b)}), AmbientMismatch);
}

TEST_CASE("fixed point algebras") {
  MultiMatrixAlgebra a = m2();
  CHECK(fixed_point_algebra(a, {identity_automorphism(a)}).dim() == 4);

  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  StarAutomorphism flip = automorphism_from_unitary(a.embed(0, z));
  Subalgebra fixed = fixed_point_algebra(a, {flip});
  CHECK(fixed.dim() == 2);
  double resid = 0.0;
  CHECK(linalg::spans_equal(fixed.coord_basis(),
                            diagonal_subalgebra(a).coord_basis(), 1e-9, &resid));

  // The inner action of the whole group fixes exactly the center, whose
  // dimension is the conjugacy class count.
  GroupAlgebra gs3 = group_algebra(symmetric_group_3());
  std::vector<StarAutomorphism> inner;
  for (int g = 0; g < 6; ++g)
    inner.push_back(automorphism_from_unitary(gs3.basis[g]));
  Subalgebra center = fixed_point_algebra(gs3.algebra, inner);
  CHECK(center.dim() ==
        static_cast<int>(gs3.group.conjugacy_classes().size()));
}

TEST_CASE("subgroup expectations commute") {
  for (const char* name : {"S3", "D4"}) {
    GroupAlgebra ga = group_algebra(builtin_group(name));
    Rng rng(41);
    for (int trial = 0; trial < 4; ++trial) {
      int g1 = rng.uniform_int(0, ga.group.order() - 1);
      int g2 = rng.uniform_int(0, ga.group.order() - 1);
      Subalgebra h1 = subgroup_algebra(ga, ga.group.subgroup_closure({g1}));
      Subalgebra h2 = subgroup_algebra(ga, ga.group.subgroup_closure({g2}));
      ConditionalExpectation e1 = conditional_expectation(ga.algebra, h1);
      ConditionalExpectation e2 = conditional_expectation(ga.algebra, h2);
      CHECK(commutator_norm(e1, e2) < 1e-10);
    }
  }
}

TEST_CASE("alternating products converge to the intersection expectation") {
  // Subgroup pair: the product is exact immediately.
  GroupAlgebra gs3 = group_algebra(symmetric_group_3());
  Subalgebra h1 = subgroup_algebra(gs3, gs3.group.subgroup_closure({1}));
  Subalgebra h2 = subgroup_algebra(gs3, gs3.group.subgroup_closure({3}));
  ConditionalExpectation e1 = conditional_expectation(gs3.algebra, h1);
  ConditionalExpectation e2 = conditional_expectation(gs3.algebra, h2);
  ConditionalExpectation en =
      conditional_expectation(gs3.algebra, intersect({h1, h2}));
  CHECK((alternating_product(e1, e2, 64) - en.matrix()).norm() < 1e-8);

  // A genuinely angled pair in M2.
  MultiMatrixAlgebra a = m2();
  Subalgebra diag = diagonal_subalgebra(a);
  Subalgebra rot = rotated_diagonal(a, 0.5);
  ConditionalExpectation f1 = conditional_expectation(a, diag);
  ConditionalExpectation f2 = conditional_expectation(a, rot);
  ConditionalExpectation fn = conditional_expectation(a, intersect({diag, rot}));
  CHECK((alternating_product(f1, f2, 64) - fn.matrix()).norm() < 1e-8);
}
