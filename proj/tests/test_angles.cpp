#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "opalg/angles.hpp"
#include "opalg/corpus.hpp"
#include "opalg/wedderburn.hpp"

using namespace opalg;

namespace {

constexpr double kPi = 3.14159265358979323846;

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

RepresentedOperator projection_from_vectors(int dim, const Matrix& cols) {
  return {dim, cols * cols.adjoint()};
}

}  // namespace

TEST_CASE("equal subalgebras have a trivial angle spectrum") {
  MultiMatrixAlgebra a = m2();
  Subalgebra diag = diagonal_subalgebra(a);
  AngleSpectrum s = angle_spectrum(diag, diag);
  CHECK(s.angles.empty());
  CHECK(s.intersection_rank == 2);
  for (double lam : s.raw_eigenvalues)
    CHECK((std::abs(lam) < 1e-10 || std::abs(lam - 1.0) < 1e-10));
}

TEST_CASE("subgroup pairs only meet at right angles") {
  GroupAlgebra ga = group_algebra(symmetric_group_3());
  Subalgebra h1 = subgroup_algebra(ga, ga.group.subgroup_closure({1}));
  Subalgebra h2 = subgroup_algebra(ga, ga.group.subgroup_closure({3}));
  AngleSpectrum s = angle_spectrum(h1, h2);
  CHECK(s.angles.empty());
  CHECK(s.intersection_rank == 1);
}

TEST_CASE("rotated diagonal shows exactly one angle") {
  MultiMatrixAlgebra a = m2();
  Subalgebra diag = diagonal_subalgebra(a);

  // Generic rotation by theta: the only nontrivial angle is 2 theta
  // (the off-diagonal directions meet at cos 2theta).
  double theta = 0.3;
  AngleSpectrum s = angle_spectrum(diag, rotated_diagonal(a, theta));
  REQUIRE(s.angles.size() == 1);
  CHECK(std::abs(s.angles[0] - 2 * theta) < 1e-10);
  CHECK(s.intersection_rank == 1);

  // The Hadamard rotation is the degenerate right-angle case: the
  // conjugated diagonal commutes with the original and no nontrivial
  // angle remains.
  AngleSpectrum h = angle_spectrum(diag, rotated_diagonal(a, kPi / 4));
  CHECK(h.angles.empty());
  CHECK(h.intersection_rank == 1);
}

TEST_CASE("angle spectra are symmetric in the pair") {
  Rng rng(6);
  MultiMatrixAlgebra m = random_algebra(rng);
  Subalgebra p = close_under_algebra(m, random_subalgebra_generators(rng, m));
  Subalgebra q = close_under_algebra(m, random_subalgebra_generators(rng, m));
  AngleSpectrum pq = angle_spectrum(p, q);
  AngleSpectrum qp = angle_spectrum(q, p);
  REQUIRE(pq.angles.size() == qp.angles.size());
  for (std::size_t i = 0; i < pq.angles.size(); ++i)
    CHECK(std::abs(pq.angles[i] - qp.angles[i]) < 1e-9);
}

TEST_CASE("wedge computes intersections of ranges") {
  MultiMatrixAlgebra a = m2();
  GnsSpace h(a);
  Subalgebra diag = diagonal_subalgebra(a);
  RepresentedOperator e = jones_projection(diag, h);
  RepresentedOperator one{4, Matrix::Identity(4, 4)};

  CHECK((wedge({e, e}).matrix - e.matrix).norm() < 1e-10);
  CHECK((wedge({e, one}).matrix - e.matrix).norm() < 1e-10);

  // wedge(e_P, e_Q) = e_{P cap Q}.
  Subalgebra rot = rotated_diagonal(a, 0.4);
  RepresentedOperator eq = jones_projection(rot, h);
  RepresentedOperator meet = wedge({e, eq});
  RepresentedOperator direct = jones_projection(intersect({diag, rot}), h);
  CHECK((meet.matrix - direct.matrix).norm() < 1e-9);

  Matrix not_proj = Matrix::Identity(4, 4) * 0.5;
  CHECK_THROWS_AS(wedge({RepresentedOperator{4, not_proj}}), NotProjection);
}

TEST_CASE("halmos decomposition of hand-built pairs") {
  // p = q: everything is a corner, no generic part.
  Matrix pm = Matrix::Zero(2, 2);
  pm(0, 0) = 1.0;
  RepresentedOperator p{2, pm};
  HalmosDecomposition same = halmos_decompose(p, p);
  CHECK(same.blocks.empty());
  CHECK(same.both.cols() == 1);
  CHECK(same.neither.cols() == 1);
  CHECK(same.reconstruction_residual < 1e-12);

  // p perpendicular to q: only corners again.
  Matrix qm = Matrix::Zero(2, 2);
  qm(1, 1) = 1.0;
  HalmosDecomposition perp = halmos_decompose(p, {2, qm});
  CHECK(perp.blocks.empty());
  CHECK(perp.p_only.cols() == 1);
  CHECK(perp.q_only.cols() == 1);
  CHECK(perp.reconstruction_residual < 1e-12);

  // A projection at angle theta: one generic block with cos^2 theta.
  double theta = 0.7;
  Matrix qrot(2, 2);
  double c = std::cos(theta), s = std::sin(theta);
  qrot << c * c, c * s, c * s, s * s;
  HalmosDecomposition generic = halmos_decompose(p, {2, qrot});
  REQUIRE(generic.blocks.size() == 1);
  CHECK(std::abs(generic.blocks[0].cos2 - c * c) < 1e-12);
  CHECK(generic.reconstruction_residual < 1e-12);
}

TEST_CASE("halmos block count matches the sandwich spectrum on random pairs") {
  Rng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    int d = 4 + (trial % 3);
    Matrix u1 = rng.random_unitary(d);
    Matrix u2 = rng.random_unitary(d);
    int r1 = 1 + rng.uniform_int(0, d - 2);
    int r2 = 1 + rng.uniform_int(0, d - 2);
    RepresentedOperator p = projection_from_vectors(d, u1.leftCols(r1));
    RepresentedOperator q = projection_from_vectors(d, u2.leftCols(r2));

    HalmosDecomposition dec = halmos_decompose(p, q);
    CHECK(dec.reconstruction_residual < 1e-9);

    Matrix sandwich = p.matrix * q.matrix * p.matrix;
    Eigen::SelfAdjointEigenSolver<Matrix> es(sandwich);
    int inside = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      double lam = es.eigenvalues()(i);
      if (lam > 1e-8 && lam < 1.0 - 1e-8) ++inside;
    }
    CHECK(static_cast<int>(dec.blocks.size()) == inside);
  }
}

TEST_CASE("generated projection algebras") {
  MultiMatrixAlgebra a = m2();
  GnsSpace h(a);
  Subalgebra diag = diagonal_subalgebra(a);
  RepresentedOperator e = jones_projection(diag, h);

  // A single projection with the unit: the empty word and the projection.
  GeneratedAlgebra single = generated_projection_algebra({e}, true);
  CHECK(single.dim == 2);
  CHECK(single.ell == 1);
  CHECK(single.unit_adjoined);
  CHECK(single.stabilized);

  // Two commuting projections: 1, e1, e2, e1 e2.
  GroupAlgebra ga = group_algebra(symmetric_group_3());
  GnsSpace hg(ga.algebra);
  RepresentedOperator e1 =
      jones_projection(subgroup_algebra(ga, ga.group.subgroup_closure({1})), hg);
  RepresentedOperator e2 =
      jones_projection(subgroup_algebra(ga, ga.group.subgroup_closure({3})), hg);
  GeneratedAlgebra commuting = generated_projection_algebra({e1, e2}, true);
  CHECK(commuting.dim <= 4);
  CHECK(commuting.ell <= 2);

  // Two generic half-rank projections in dimension 4: the dimension
  // follows the distinct-angle count from the two-projection theory.
  Rng rng(23);
  Matrix u1 = rng.random_unitary(4), u2 = rng.random_unitary(4);
  RepresentedOperator p = projection_from_vectors(4, u1.leftCols(2));
  RepresentedOperator q = projection_from_vectors(4, u2.leftCols(2));
  GeneratedAlgebra gen = generated_projection_algebra({p, q}, true);
  HalmosDecomposition dec = halmos_decompose(p, q);
  // Every corner type present contributes one dimension (the algebra acts
  // as scalars there), every distinct angle a full 2x2 block.
  int corner_types = (dec.both.cols() > 0) + (dec.p_only.cols() > 0) +
                     (dec.q_only.cols() > 0) + (dec.neither.cols() > 0);
  CHECK(gen.dim == 4 * static_cast<int>(dec.distinct_cos2.size()) + corner_types);
  CHECK(gen.stabilized);

  CHECK_THROWS_AS(
      generated_projection_algebra({RepresentedOperator{4, u1}}, true),
      NotProjection);
}

TEST_CASE("generated spans are closed under adjoints and products") {
  Rng rng(29);
  Matrix u1 = rng.random_unitary(5), u2 = rng.random_unitary(5);
  RepresentedOperator p = projection_from_vectors(5, u1.leftCols(2));
  RepresentedOperator q = projection_from_vectors(5, u2.leftCols(3));
  GeneratedAlgebra gen = generated_projection_algebra({p, q}, true);
  REQUIRE(gen.stabilized);
  for (int i = 0; i < gen.dim; ++i) {
    Matrix bi = gen.span.member(i);
    CHECK(gen.span.residual_abs(bi.adjoint()) < 1e-9);
    for (int j = 0; j < gen.dim; ++j)
      CHECK(gen.span.residual_abs(bi * gen.span.member(j)) < 1e-9);
  }
  CHECK(gen.ell == static_cast<int>(std::max_element(
                       gen.basis_words.begin(), gen.basis_words.end(),
                       [](const auto& a, const auto& b) {
                         return a.size() < b.size();
                       })->size()));
}

TEST_CASE("bound check on the whole algebra alone") {
  MultiMatrixAlgebra a = m2();
  BoundReport r = bound_check(a, {full_subalgebra(a)});
  CHECK(std::abs(r.intersection_index - 1.0) < 1e-9);
  CHECK(r.bound >= 1.0);
  CHECK(r.satisfied);
  CHECK_FALSE(r.has_improved);
}

TEST_CASE("bound check for the S3 subgroup family") {
  GroupAlgebra ga = group_algebra(symmetric_group_3());
  Subalgebra h1 = subgroup_algebra(ga, ga.group.subgroup_closure({1}));
  Subalgebra h2 = subgroup_algebra(ga, ga.group.subgroup_closure({3}));
  BoundReport r = bound_check(ga.algebra, {h1, h2});

  CHECK(std::abs(r.intersection_index - 6.0) < 1e-5);
  CHECK(std::abs(r.max_index - 3.0) < 1e-6);
  CHECK(r.intersection_dim == 1);
  CHECK(r.dim_algebra == 4);
  CHECK(r.ell == 2);
  CHECK(std::abs(r.bound - 36.0) < 1e-4);
  CHECK(r.satisfied);
  CHECK(r.has_improved);
  CHECK(std::abs(r.improved_bound - 9.0) < 1e-5);
  CHECK(r.improved_satisfied);
  CHECK(r.wedge_vs_intersection_residual < 1e-9);
  CHECK(r.e_n_in_span_residual < 1e-8);
}

TEST_CASE("bound check tracks the improved bound for angled pairs") {
  MultiMatrixAlgebra a = m2();
  Subalgebra diag = diagonal_subalgebra(a);
  Subalgebra rot = rotated_diagonal(a, kPi / 4);
  BoundReport r = bound_check(a, {diag, rot});
  CHECK(r.has_improved);
  CHECK(r.satisfied);
  CHECK(std::abs(r.improved_bound - r.bound / 4.0) < 1e-12);
  CHECK(r.wedge_vs_intersection_residual < 1e-9);
  CHECK(r.e_n_in_span_residual < 1e-8);
}

TEST_CASE("counterexample probe on a single unitary") {
  MultiMatrixAlgebra a = m2();
  Rng rng(3);
  InnerSpectrumProbe probe = counterexample_probe({a.random_unitary(rng)});
  CHECK(probe.map_algebra_dim == 1);
  CHECK(probe.map_sum_spectrum_points == 1);
  CHECK(probe.element_sum_spectrum_points == 1);
  CHECK(probe.consistent);
}

TEST_CASE("counterexample probe on a dihedral pair of reflections") {
  MultiMatrixAlgebra a = m2();
  auto reflection = [&](double phi) {
    Matrix r(2, 2);
    r << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
    return a.embed(0, r);
  };
  // u v has order 8, so Ad(u v*) generates a rotation of order 8.
  AlgebraElement u = reflection(0.0);
  AlgebraElement v = reflection(kPi / 8);
  InnerSpectrumProbe probe = counterexample_probe({u, v});
  CHECK(probe.consistent);
  CHECK(probe.map_sum_spectrum_points <= probe.map_algebra_dim);
  CHECK(probe.map_algebra_dim >= 2);
}

TEST_CASE("counterexample probe with a third-root relative unitary") {
  // u v* of order three: the element sum 2 + uv* + (uv*)* has at most
  // four spectral points.
  MultiMatrixAlgebra a(BlockSpec{{3}}, TraceWeights{{1.0 / 3}});
  Matrix w = Matrix::Zero(3, 3);
  w(0, 0) = 1.0;
  w(1, 1) = std::polar(1.0, 2 * kPi / 3);
  w(2, 2) = std::polar(1.0, -2 * kPi / 3);
  AlgebraElement u = a.from_blocks({w});
  AlgebraElement v = a.identity();
  InnerSpectrumProbe probe = counterexample_probe({u, v});
  CHECK(probe.element_sum_spectrum_points <= 4);
  CHECK(probe.consistent);
}
