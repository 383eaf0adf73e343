#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "opalg/wedderburn.hpp"

using namespace opalg;

namespace {

/// Block algebra with multiplicities embedded concretely in M_d and
/// conjugated by a fixed unitary.
std::vector<Matrix> conjugated_block_generators(const std::vector<int>& sizes,
                                                const std::vector<int>& mults,
                                                const Matrix& u) {
  int d = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) d += sizes[k] * mults[k];
  std::vector<Matrix> gens;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    int n = sizes[k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Matrix g = Matrix::Zero(d, d);
        int off = 0;
        for (std::size_t kk = 0; kk < sizes.size(); ++kk)
          for (int mu = 0; mu < mults[kk]; ++mu) {
            if (kk == k) g(off + i, off + j) = 1.0;
            off += sizes[kk];
          }
        gens.push_back(u * g * u.adjoint());
      }
  }
  return gens;
}

std::vector<int> recovered_sizes(const WedderburnDecomposition& dec) {
  std::vector<int> out;
  for (int k = 0; k < dec.algebra.block_count(); ++k)
    out.push_back(dec.algebra.block_size(k));
  return out;
}

}  // namespace

TEST_CASE("scalars decompose as one block with full multiplicity") {
  std::vector<Matrix> gens{Matrix::Identity(4, 4)};
  WedderburnDecomposition dec = wedderburn_decompose(gens);
  CHECK(recovered_sizes(dec) == std::vector<int>{1});
  CHECK(dec.multiplicities == std::vector<int>{4});
}

TEST_CASE("the full matrix algebra is a single block") {
  std::vector<Matrix> gens;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Matrix g = Matrix::Zero(3, 3);
      g(i, j) = 1.0;
      gens.push_back(g);
    }
  WedderburnDecomposition dec = wedderburn_decompose(gens);
  CHECK(recovered_sizes(dec) == std::vector<int>{3});
  CHECK(dec.multiplicities == std::vector<int>{1});
}

TEST_CASE("regular representation of S3") {
  FiniteGroup s3 = symmetric_group_3();
  std::vector<Matrix> gens;
  for (int g = 0; g < 6; ++g) gens.push_back(s3.left_regular_matrix(g));
  WedderburnDecomposition dec = wedderburn_decompose(gens);
  CHECK(recovered_sizes(dec) == std::vector<int>{1, 1, 2});
  CHECK(dec.multiplicities == std::vector<int>{1, 1, 2});
}

TEST_CASE("conjugated block algebras round-trip exactly") {
  struct Case {
    std::vector<int> sizes, mults;
  };
  const Case cases[] = {{{2}, {1}},      {{1, 2}, {1, 1}}, {{2, 2}, {1, 1}},
                        {{1, 1}, {2, 1}}, {{3}, {2}},       {{1, 2, 3}, {1, 1, 1}}};
  Rng rng(20250803);
  for (const Case& c : cases) {
    int d = 0;
    for (std::size_t k = 0; k < c.sizes.size(); ++k) d += c.sizes[k] * c.mults[k];
    Matrix u = rng.random_unitary(d);
    std::vector<Matrix> gens = conjugated_block_generators(c.sizes, c.mults, u);
    WedderburnDecomposition dec = wedderburn_decompose(gens);

    std::vector<int> expected = c.sizes;
    std::vector<int> got = recovered_sizes(dec);
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);

    double worst = 0.0;
    for (const Matrix& g : gens) {
      Matrix rt = dec.to_concrete(dec.to_abstract(g));
      worst = std::max(worst, (rt - g).norm());
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("structure maps are multiplicative") {
  Rng rng(9);
  Matrix u = rng.random_unitary(5);
  std::vector<Matrix> gens = conjugated_block_generators({1, 2}, {1, 2}, u);
  WedderburnDecomposition dec = wedderburn_decompose(gens);

  Rng elems(10);
  AlgebraElement x = dec.algebra.random_element(elems);
  AlgebraElement y = dec.algebra.random_element(elems);
  Matrix cx = dec.to_concrete(x);
  Matrix cy = dec.to_concrete(y);
  CHECK((dec.to_concrete(x * y) - cx * cy).norm() < 1e-9);
  CHECK((dec.to_concrete(x.adjoint()) - cx.adjoint()).norm() < 1e-9);
  CHECK(norm2(dec.to_abstract(cx) - x) < 1e-9);
  // The abstract trace is the normalized concrete trace.
  CHECK(std::abs(trace(x) - cx.trace() / 5.0) < 1e-10);
}

TEST_CASE("assume_closed rejects spans that are not *-algebras") {
  Matrix e12 = Matrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  WedderburnOptions opt;
  opt.assume_closed = true;
  CHECK_THROWS_AS(wedderburn_decompose({e12}, opt), NotStarClosed);
}

TEST_CASE("banded rank decisions") {
  Eigen::VectorXd clean(3);
  clean << 1.0, 0.5, 1e-13;
  CHECK(linalg::banded_rank(clean, 1e-11, 1e-7) == 2);

  Eigen::VectorXd straddling(3);
  straddling << 1.0, 0.5, 1e-9;
  CHECK_THROWS_AS(linalg::banded_rank(straddling, 1e-11, 1e-7),
                  RankDeficiencyUndetermined);
}

TEST_CASE("eigenvalue gaps inside the band are refused") {
  Eigen::VectorXd clean(4);
  clean << 0.0, 0.0, 1.0, 1.0 + 1e-13;
  auto clusters = linalg::banded_clusters(clean, 1e-11, 1e-7);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].size() == 2);
  CHECK(clusters[1].size() == 2);

  Eigen::VectorXd straddling(3);
  straddling << 0.0, 1.0, 1.0 + 1e-9;
  CHECK_THROWS_AS(linalg::banded_clusters(straddling, 1e-11, 1e-7),
                  RankDeficiencyUndetermined);
}
