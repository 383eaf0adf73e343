#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "opalg/cli.hpp"
#include "opalg/corpus.hpp"
#include "opalg/runner.hpp"

using namespace opalg;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("cli_") + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("empty scenario list exits cleanly with an empty report") {
  std::string cfg = temp_path("empty.json");
  std::string out = temp_path("empty_report.json");
  write_file(cfg, R"({"scenarios": []})");
  int code = cli_main({"--config", cfg, "--out", out});
  CHECK(code == 0);
  json report = json::parse(read_file(out));
  CHECK(report.at("scenario_count").get<int>() == 0);
  CHECK(report.at("reports").empty());
}

TEST_CASE("index scenario for scalars in M3 reports the value three") {
  std::string cfg = temp_path("index.json");
  std::string out = temp_path("index_report.json");
  write_file(cfg, R"({"scenarios": [{
    "kind": "index",
    "id": "scalars-in-m3",
    "algebra": {"blocks": [3], "weights": ["0.33333333333333331"]},
    "subalgebra": "trivial"
  }]})");
  int code = cli_main({"--config", cfg, "--out", out});
  CHECK(code == 0);
  json report = json::parse(read_file(out));
  const json& r = report.at("reports")[0];
  CHECK(r.at("status") == "ok");
  CHECK(r.at("anchor") == "pimsner_popa_index");
  double value = r.at("outputs").at("index").at("value").get<double>();
  CHECK(std::abs(value - 3.0) < 1e-6);
}

TEST_CASE("invalid group tables are a configuration error") {
  std::string cfg = temp_path("badgroup.json");
  std::string out = temp_path("badgroup_report.json");
  write_file(cfg, R"({"scenarios": [{
    "kind": "angles",
    "group": {"order": 2, "table": [[0, 1], [1, 1]]},
    "subalgebras": [{"subgroup": [0]}, {"subgroup": [0]}]
  }]})");
  CHECK(cli_main({"--config", cfg, "--out", out}) == 2);
}

TEST_CASE("malformed json is a configuration error") {
  std::string cfg = temp_path("broken.json");
  write_file(cfg, "{not json");
  CHECK(cli_main({"--config", cfg, "--out", temp_path("broken_out.json")}) == 2);
  CHECK(cli_main({"--out", temp_path("noinput.json")}) == 2);
}

TEST_CASE("corpus scenarios are deterministic in the seed") {
  std::vector<Scenario> a = corpus_scenarios(0, 3);
  std::vector<Scenario> b = corpus_scenarios(0, 3);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].payload.dump() == b[i].payload.dump());

  std::vector<Scenario> c = corpus_scenarios(1, 3);
  bool any_differ = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].payload.dump() != c[i].payload.dump()) any_differ = true;
  CHECK(any_differ);
}

TEST_CASE("a sixteen-scenario corpus covers every kind") {
  std::vector<Scenario> scenarios = corpus_scenarios(0, 16);
  std::map<std::string, int> counts;
  for (const Scenario& s : scenarios) counts[s.kind]++;
  for (const char* kind :
       {"bound_check", "expectation", "index", "angles", "pp_basis",
        "direct_sum_model", "decompose", "counterexample"})
    CHECK(counts[kind] == 2);
}

TEST_CASE("corpus runs are byte-identical for a fixed seed") {
  std::string out1 = temp_path("corpus1.json");
  std::string out2 = temp_path("corpus2.json");
  CHECK(cli_main({"--corpus", "8", "--seed", "7", "--out", out1}) == 0);
  CHECK(cli_main({"--corpus", "8", "--seed", "7", "--out", out2, "--jobs", "4"}) == 0);
  std::string r1 = read_file(out1);
  CHECK(!r1.empty());
  CHECK(r1 == read_file(out2));
}

TEST_CASE("spectra dump as csv") {
  std::string cfg = temp_path("spec.json");
  std::string out = temp_path("spec_report.json");
  write_file(cfg, R"({"scenarios": [{
    "kind": "angles",
    "id": "pair",
    "group": {"name": "S3"},
    "subalgebras": [{"subgroup": [0, 1, 2]}, {"subgroup": [0, 3]}]
  }]})");
  CHECK(cli_main({"--config", cfg, "--out", out, "--csv-dir", "cli_csv"}) == 0);
  std::string csv = read_file("cli_csv/pair_spectrum.csv");
  CHECK(!csv.empty());
  // One eigenvalue per line over L^2(C[S3]).
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("nested corpus entries expand inline") {
  std::string cfg = temp_path("nested.json");
  std::string out = temp_path("nested_report.json");
  write_file(cfg, R"({"scenarios": [{"kind": "corpus", "seed": 3, "count": 2}]})");
  CHECK(cli_main({"--config", cfg, "--out", out}) == 0);
  json report = json::parse(read_file(out));
  CHECK(report.at("scenario_count").get<int>() == 2);
}

TEST_CASE("hard invariant failures exit with status one") {
  // A decompose scenario whose declared block sizes are wrong: the
  // recovery runs fine, the expectation check fails.
  std::string cfg = temp_path("wrongblocks.json");
  std::string out = temp_path("wrongblocks_report.json");
  write_file(cfg, R"({"scenarios": [{
    "kind": "decompose",
    "id": "wrong-expectation",
    "generators": [[[[1,0],[0,0]],[[0,0],[0,0]]],
                   [[[0,0],[1,0]],[[0,0],[0,0]]],
                   [[[0,0],[0,0]],[[1,0],[0,0]]],
                   [[[0,0],[0,0]],[[0,0],[1,0]]]],
    "expected_blocks": [1, 1]
  }]})");
  CHECK(cli_main({"--config", cfg, "--out", out}) == 1);
  json report = json::parse(read_file(out));
  CHECK(report.at("summary").at("hard_failures").get<int>() == 1);
  CHECK(report.at("reports")[0].at("status") == "invariant_failure");
  // The recovery itself was right: one 2x2 block.
  CHECK(report.at("reports")[0].at("outputs").at("blocks") == json::array({2}));
}

TEST_CASE("the seed flag overrides scenario seeds on config runs") {
  std::string cfg = temp_path("seeded.json");
  write_file(cfg, R"({"scenarios": [{
    "kind": "index",
    "algebra": {"blocks": [2], "weights": ["0.5"]},
    "subalgebra": "trivial",
    "seed": 123
  }]})");
  std::string out1 = temp_path("seed_a.json");
  std::string out2 = temp_path("seed_b.json");
  CHECK(cli_main({"--config", cfg, "--out", out1, "--seed", "77"}) == 0);
  CHECK(cli_main({"--config", cfg, "--out", out2, "--seed", "77"}) == 0);
  json r1 = json::parse(read_file(out1));
  CHECK(r1.at("reports")[0].at("seed").get<std::uint64_t>() == 77);
  CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("tolerance scaling and config emission round-trip") {
  std::string out = temp_path("scaled_report.json");
  std::string emitted = temp_path("emitted.json");
  CHECK(cli_main({"--corpus", "4", "--seed", "2", "--out", out,
                  "--tolerance-scale", "10", "--emit-config", emitted}) == 0);
  // The emitted config re-runs to the same results (at default scale).
  std::string out2 = temp_path("emitted_report.json");
  CHECK(cli_main({"--config", emitted, "--out", out2}) == 0);
  json r1 = json::parse(read_file(out));
  json r2 = json::parse(read_file(out2));
  CHECK(r1.at("scenario_count") == r2.at("scenario_count"));
  for (int i = 0; i < 4; ++i)
    CHECK(r1.at("reports")[i].at("outputs") == r2.at("reports")[i].at("outputs"));
}
