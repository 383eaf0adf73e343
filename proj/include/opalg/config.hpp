#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "opalg/algebra.hpp"
#include "opalg/group.hpp"
#include "opalg/subalgebra.hpp"
#include "opalg/wedderburn.hpp"

namespace opalg {

using json = nlohmann::ordered_json;

/// One batch-runner work item.  The payload holds the kind-specific
/// fields; algebra/group/matrix conventions are shared with the rest of
/// the configuration format.
struct Scenario {
  std::string id;
  std::string kind;
  std::uint64_t seed = 0;
  double tolerance_scale = 1.0;
  json payload;
};

/// Parses {"blocks": [ints], "weights": [decimal strings]} (numbers are
/// accepted for the weights as well).  Throws ConfigParse.
MultiMatrixAlgebra parse_algebra(const json& j);

/// Parses an element: one [[re,im] ...] matrix per block.
AlgebraElement parse_element(const json& j, const MultiMatrixAlgebra& m);

/// Parses a plain complex matrix as nested [re, im] pairs.
Matrix parse_matrix(const json& j);

/// Parses {"order": n, "table": [[...]]} or {"name": "S3"}.
FiniteGroup parse_group(const json& j);

json algebra_to_json(const MultiMatrixAlgebra& m);
json element_to_json(const AlgebraElement& x);
json matrix_to_json(const Matrix& m);
json group_to_json(const FiniteGroup& g);

/// Scenario list from a config document {"scenarios": [...]}; "corpus"
/// entries are expanded inline deterministically from their seed/count.
std::vector<Scenario> parse_config(const json& j);
std::vector<Scenario> load_config_file(const std::string& path);

/// The subalgebra described inside a scenario: either explicit
/// {"generators": [element...]} closed under the algebra operations, or
/// {"subgroup": [indices]} against a group-algebra ambient.
struct AmbientContext {
  MultiMatrixAlgebra algebra;
  /// Present when the ambient came from a group table.
  std::shared_ptr<GroupAlgebra> group;
};

/// Resolves the scenario's ambient algebra: {"algebra": {...}} or
/// {"group": {...}} (whose group algebra becomes the ambient).
AmbientContext parse_ambient(const json& payload, std::uint64_t seed);

Subalgebra parse_subalgebra(const json& j, const AmbientContext& ctx,
                            const Tolerances& tol = default_tolerances());

}  // namespace opalg
