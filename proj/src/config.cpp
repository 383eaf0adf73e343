#include "opalg/config.hpp"

#include <cstdio>
#include <fstream>

#include "opalg/corpus.hpp"

namespace opalg {

namespace {

std::string describe(const json& j, const char* what) {
  return std::string("config: expected ") + what + ", got " + j.dump().substr(0, 80);
}

double parse_decimal(const json& j, const char* what) {
  if (j.is_string()) {
    try {
      std::size_t pos = 0;
      double v = std::stod(j.get<std::string>(), &pos);
      if (pos != j.get<std::string>().size()) throw std::invalid_argument("trail");
      return v;
    } catch (const std::exception&) {
      throw ConfigParse(describe(j, what));
    }
  }
  if (j.is_number()) return j.get<double>();
  throw ConfigParse(describe(j, what));
}

std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

cxd parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigParse(describe(j, "a [re, im] pair"));
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

MultiMatrixAlgebra parse_algebra(const json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j.contains("weights"))
    throw ConfigParse(describe(j, "{blocks, weights}"));
  std::vector<int> sizes;
  for (const json& b : j.at("blocks")) {
    if (!b.is_number_integer()) throw ConfigParse(describe(b, "an integer block size"));
    sizes.push_back(b.get<int>());
  }
  std::vector<double> weights;
  for (const json& w : j.at("weights"))
    weights.push_back(parse_decimal(w, "a decimal trace weight"));
  try {
    return MultiMatrixAlgebra(BlockSpec{sizes}, TraceWeights{weights});
  } catch (const Error& e) {
    throw ConfigParse(std::string("config: invalid algebra: ") + e.what());
  }
}

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigParse(describe(j, "a matrix"));
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ConfigParse(describe(j, "a matrix with nonempty rows"));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ConfigParse(describe(j, "a rectangular matrix"));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = parse_complex(j[i][c]);
  }
  return m;
}

AlgebraElement parse_element(const json& j, const MultiMatrixAlgebra& m) {
  if (!j.is_array() || static_cast<int>(j.size()) != m.block_count())
    throw ConfigParse(describe(j, "one matrix per block"));
  std::vector<Matrix> blocks;
  for (int k = 0; k < m.block_count(); ++k) {
    Matrix b = parse_matrix(j[k]);
    if (b.rows() != m.block_size(k) || b.cols() != m.block_size(k))
      throw ConfigParse(describe(j[k], "a matrix matching the block size"));
    blocks.push_back(std::move(b));
  }
  return m.from_blocks(std::move(blocks));
}

FiniteGroup parse_group(const json& j) {
  try {
    if (j.is_object() && j.contains("name"))
      return builtin_group(j.at("name").get<std::string>());
    if (j.is_object() && j.contains("table")) {
      std::vector<std::vector<int>> table;
      for (const json& row : j.at("table")) {
        std::vector<int> r;
        for (const json& v : row) r.push_back(v.get<int>());
        table.push_back(std::move(r));
      }
      return FiniteGroup(std::move(table));
    }
  } catch (const Error& e) {
    throw ConfigParse(std::string("config: invalid group: ") + e.what());
  } catch (const json::exception& e) {
    throw ConfigParse(std::string("config: invalid group: ") + e.what());
  }
  throw ConfigParse(describe(j, "{name} or {table}"));
}

json algebra_to_json(const MultiMatrixAlgebra& m) {
  json blocks = json::array();
  json weights = json::array();
  for (int k = 0; k < m.block_count(); ++k) {
    blocks.push_back(m.block_size(k));
    weights.push_back(format_decimal(m.weight(k)));
  }
  return json{{"blocks", blocks}, {"weights", weights}};
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(i, c).real(), m(i, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

json element_to_json(const AlgebraElement& x) {
  json blocks = json::array();
  for (int k = 0; k < x.owner().block_count(); ++k)
    blocks.push_back(matrix_to_json(x.block(k)));
  return blocks;
}

json group_to_json(const FiniteGroup& g) {
  json table = json::array();
  for (int a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    table.push_back(std::move(row));
  }
  return json{{"order", g.order()}, {"table", table}};
}

std::vector<Scenario> parse_config(const json& j) {
  if (!j.is_object() || !j.contains("scenarios") || !j.at("scenarios").is_array())
    throw ConfigParse("config: expected {\"scenarios\": [...]}");
  std::vector<Scenario> out;
  int idx = 0;
  for (const json& sj : j.at("scenarios")) {
    if (!sj.is_object() || !sj.contains("kind"))
      throw ConfigParse("config: scenario needs a \"kind\"");
    Scenario s;
    s.kind = sj.at("kind").get<std::string>();
    s.seed = sj.value("seed", 0ULL);
    s.tolerance_scale = sj.value("tolerance_scale", 1.0);
    s.id = sj.value("id", std::string("s") + std::to_string(idx));
    s.payload = sj;

    if (s.kind == "corpus") {
      int count = sj.value("count", 0);
      if (count < 1) throw ConfigParse("config: corpus scenario needs count >= 1");
      for (Scenario& nested : corpus_scenarios(s.seed, count)) {
        nested.id = s.id + "." + nested.id;
        out.push_back(std::move(nested));
      }
    } else {
      out.push_back(std::move(s));
    }
    ++idx;
  }
  return out;
}

std::vector<Scenario> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParse("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigParse(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

AmbientContext parse_ambient(const json& payload, std::uint64_t seed) {
  if (payload.contains("group")) {
    FiniteGroup g = parse_group(payload.at("group"));
    auto ga = std::make_shared<GroupAlgebra>(group_algebra(g, seed));
    return AmbientContext{ga->algebra, ga};
  }
  if (payload.contains("algebra"))
    return AmbientContext{parse_algebra(payload.at("algebra")), nullptr};
  throw ConfigParse("config: scenario needs \"algebra\" or \"group\"");
}

Subalgebra parse_subalgebra(const json& j, const AmbientContext& ctx,
                            const Tolerances& tol) {
  if (j.is_object() && j.contains("subgroup")) {
    if (!ctx.group)
      throw ConfigParse("config: \"subgroup\" needs a group-algebra ambient");
    std::vector<int> elems;
    for (const json& v : j.at("subgroup")) elems.push_back(v.get<int>());
    std::vector<int> closed = ctx.group->group.subgroup_closure(elems);
    if (closed.size() != elems.size())
      throw ConfigParse("config: \"subgroup\" list is not closed");
    return subgroup_algebra(*ctx.group, closed, tol);
  }
  if (j.is_object() && j.contains("generators")) {
    std::vector<AlgebraElement> gens;
    for (const json& gj : j.at("generators"))
      gens.push_back(parse_element(gj, ctx.algebra));
    return close_under_algebra(ctx.algebra, gens, tol);
  }
  if (j.is_string() && j.get<std::string>() == "full")
    return full_subalgebra(ctx.algebra);
  if (j.is_string() && j.get<std::string>() == "trivial")
    return trivial_subalgebra(ctx.algebra);
  throw ConfigParse(describe(j, "{generators}, {subgroup}, \"full\" or \"trivial\""));
}

}  // namespace opalg
