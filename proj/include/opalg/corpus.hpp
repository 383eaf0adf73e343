#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opalg/config.hpp"
#include "opalg/rng.hpp"

namespace opalg {

/// Random multi-matrix algebra: up to max_blocks blocks with sizes drawn
/// from {1..max_size} and mildly skewed normalized weights.
MultiMatrixAlgebra random_algebra(Rng& rng, int max_blocks = 3, int max_size = 3);

/// As random_algebra but with at least one block of size >= 2, so inner
/// automorphisms can act nontrivially.
MultiMatrixAlgebra random_nonabelian_algebra(Rng& rng, int max_blocks = 3,
                                             int max_size = 3);

/// Generators of a random unital *-subalgebra: a block-diagonal model
/// (one partition per block, with equal-size slots optionally tied across
/// the algebra) conjugated by a random unitary.
std::vector<AlgebraElement> random_subalgebra_generators(
    Rng& rng, const MultiMatrixAlgebra& m);

struct SubgroupPair {
  std::string group_name;
  FiniteGroup group;
  std::vector<int> first;
  std::vector<int> second;
};

/// A built-in group (Z2..Z6, S3, D4) with two random cyclic subgroups.
SubgroupPair random_subgroup_pair(Rng& rng);

/// Deterministic scenario corpus: for index i the kind cycles through
/// bound_check, expectation, index, angles (subgroup pair), pp_basis,
/// direct_sum_model, decompose, counterexample.  Every scenario is
/// self-contained (explicit matrices and tables) so reports are
/// byte-identical across runs for a fixed seed.
std::vector<Scenario> corpus_scenarios(std::uint64_t seed, int count);

}  // namespace opalg
