#include "opalg/corpus.hpp"

#include <numeric>

namespace opalg {

namespace {

/// Random partition of n, uniform over a small hand-listed family.
std::vector<int> random_partition(Rng& rng, int n) {
  switch (n) {
    case 1:
      return {1};
    case 2:
      return rng.uniform() < 0.5 ? std::vector<int>{2} : std::vector<int>{1, 1};
    default: {
      int pick = rng.uniform_int(0, 2);
      if (pick == 0) return {3};
      if (pick == 1) return {1, 2};
      return {1, 1, 1};
    }
  }
}

struct Slot {
  int block;
  int offset;
  int size;
  int component;
};

}  // namespace

MultiMatrixAlgebra random_algebra(Rng& rng, int max_blocks, int max_size) {
  int nblocks = rng.uniform_int(1, max_blocks);
  std::vector<int> sizes;
  std::vector<double> raw;
  for (int k = 0; k < nblocks; ++k) {
    sizes.push_back(rng.uniform_int(1, max_size));
    raw.push_back(0.5 + rng.uniform());
  }
  double denom = 0.0;
  for (int k = 0; k < nblocks; ++k) denom += raw[k] * sizes[k];
  std::vector<double> weights;
  for (int k = 0; k < nblocks; ++k) weights.push_back(raw[k] / denom);
  return MultiMatrixAlgebra(BlockSpec{sizes}, TraceWeights{weights});
}

MultiMatrixAlgebra random_nonabelian_algebra(Rng& rng, int max_blocks,
                                             int max_size) {
  for (;;) {
    MultiMatrixAlgebra m = random_algebra(rng, max_blocks, max_size);
    for (int k = 0; k < m.block_count(); ++k)
      if (m.block_size(k) >= 2) return m;
  }
}

std::vector<AlgebraElement> random_subalgebra_generators(
    Rng& rng, const MultiMatrixAlgebra& m) {
  // Block-diagonal model: partition each block into slots.
  std::vector<Slot> slots;
  for (int k = 0; k < m.block_count(); ++k) {
    int off = 0;
    for (int s : random_partition(rng, m.block_size(k))) {
      slots.push_back({k, off, s, static_cast<int>(slots.size())});
      off += s;
    }
  }
  // Tie equal-size slots together with probability 1/3 per candidate pair.
  // Pairs are visited in index order, so a slot's component always points
  // at a component head by the time later pairs read it.
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = i + 1; j < slots.size(); ++j) {
      if (slots[i].size != slots[j].size) continue;
      if (slots[j].component != static_cast<int>(j)) continue;  // already tied
      if (rng.uniform() < 1.0 / 3.0) slots[j].component = slots[i].component;
    }

  AlgebraElement u = m.random_unitary(rng);
  AlgebraElement ustar = u.adjoint();

  std::vector<AlgebraElement> gens;
  for (std::size_t head = 0; head < slots.size(); ++head) {
    if (slots[head].component != static_cast<int>(head)) continue;
    int s = slots[head].size;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        AlgebraElement g = m.zero();
        for (const Slot& sl : slots) {
          if (sl.component != static_cast<int>(head)) continue;
          Matrix blk = Matrix::Zero(m.block_size(sl.block), m.block_size(sl.block));
          blk(sl.offset + i, sl.offset + j) = 1.0;
          g += m.embed(sl.block, blk);
        }
        gens.push_back(u * g * ustar);
      }
  }
  return gens;
}

SubgroupPair random_subgroup_pair(Rng& rng) {
  static const char* names[] = {"Z2", "Z3", "Z4", "Z5", "Z6", "S3", "D4"};
  std::string name = names[rng.uniform_int(0, 6)];
  FiniteGroup group = builtin_group(name);
  int g1 = rng.uniform_int(0, group.order() - 1);
  int g2 = rng.uniform_int(0, group.order() - 1);
  std::vector<int> first = group.subgroup_closure({g1});
  std::vector<int> second = group.subgroup_closure({g2});
  return SubgroupPair{std::move(name), std::move(group), std::move(first),
                      std::move(second)};
}

std::vector<Scenario> corpus_scenarios(std::uint64_t seed, int count) {
  static const char* kinds[] = {"bound_check", "expectation",      "index",
                                "angles",      "pp_basis",         "direct_sum_model",
                                "decompose",   "counterexample"};
  Rng root(seed);
  std::vector<Scenario> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng = root.child(static_cast<std::uint64_t>(i) * 7919 + 13);
    Scenario s;
    s.kind = kinds[i % 8];
    s.seed = root.derive(static_cast<std::uint64_t>(i) + 101);
    s.id = "c" + std::to_string(i) + "_" + s.kind;
    json p;
    p["kind"] = s.kind;
    p["id"] = s.id;
    p["seed"] = s.seed;

    if (s.kind == "bound_check") {
      MultiMatrixAlgebra m = random_algebra(rng);
      p["algebra"] = algebra_to_json(m);
      int members = 2 + (rng.uniform() < 0.4 ? 1 : 0);
      json subs = json::array();
      for (int f = 0; f < members; ++f) {
        json gens = json::array();
        for (const AlgebraElement& g : random_subalgebra_generators(rng, m))
          gens.push_back(element_to_json(g));
        subs.push_back(json{{"generators", gens}});
      }
      p["subalgebras"] = subs;
    } else if (s.kind == "expectation" || s.kind == "index" ||
               s.kind == "pp_basis") {
      // Half of the index scenarios come from subgroup inclusions.
      if (s.kind == "index" && rng.uniform() < 0.5) {
        SubgroupPair pair = random_subgroup_pair(rng);
        p["group"] = group_to_json(pair.group);
        p["group_name"] = pair.group_name;
        p["subalgebra"] = json{{"subgroup", pair.first}};
      } else {
        MultiMatrixAlgebra m = random_algebra(rng);
        p["algebra"] = algebra_to_json(m);
        json gens = json::array();
        for (const AlgebraElement& g : random_subalgebra_generators(rng, m))
          gens.push_back(element_to_json(g));
        p["subalgebra"] = json{{"generators", gens}};
      }
    } else if (s.kind == "angles") {
      SubgroupPair pair = random_subgroup_pair(rng);
      p["group"] = group_to_json(pair.group);
      p["group_name"] = pair.group_name;
      p["subalgebras"] =
          json::array({json{{"subgroup", pair.first}}, json{{"subgroup", pair.second}}});
    } else if (s.kind == "direct_sum_model") {
      MultiMatrixAlgebra base = random_nonabelian_algebra(rng, 2, 3);
      p["algebra"] = algebra_to_json(base);
      int members = rng.uniform_int(2, 3);
      json us = json::array();
      us.push_back(element_to_json(base.identity()));
      for (int f = 1; f < members; ++f)
        us.push_back(element_to_json(base.random_unitary(rng)));
      p["unitaries"] = us;
    } else if (s.kind == "decompose") {
      // A known block structure conjugated by a random unitary.
      MultiMatrixAlgebra m = random_algebra(rng, 2, 3);
      int d = 0;
      for (int k = 0; k < m.block_count(); ++k) d += m.block_size(k);
      Rng urng = rng.child(5);
      Matrix u = urng.random_unitary(d);
      json gens = json::array();
      for (int i = 0; i < m.total_dim(); ++i) {
        AlgebraElement b = m.basis_element(i);
        Matrix concrete = Matrix::Zero(d, d);
        int off = 0;
        for (int k = 0; k < m.block_count(); ++k) {
          concrete.block(off, off, m.block_size(k), m.block_size(k)) = b.block(k);
          off += m.block_size(k);
        }
        gens.push_back(matrix_to_json(u * concrete * u.adjoint()));
      }
      p["generators"] = gens;
      json expected = json::array();
      for (int k = 0; k < m.block_count(); ++k) expected.push_back(m.block_size(k));
      p["expected_blocks"] = expected;
    } else {  // counterexample
      MultiMatrixAlgebra m = random_algebra(rng, 2, 3);
      p["algebra"] = algebra_to_json(m);
      json us = json::array();
      int members = rng.uniform_int(2, 3);
      for (int f = 0; f < members; ++f)
        us.push_back(element_to_json(m.random_unitary(rng)));
      p["unitaries"] = us;
    }

    s.payload = std::move(p);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace opalg
