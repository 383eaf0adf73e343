#include "opalg/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "opalg/corpus.hpp"
#include "opalg/runner.hpp"

namespace opalg {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigParse("cannot open output file " + path);
  out << text;
}

/// One eigenvalue per line, 17 significant digits.
std::string spectrum_csv(const json& values) {
  std::string out;
  char buf[64];
  for (const json& v : values) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v.get<double>());
    out += buf;
  }
  return out;
}

void dump_spectra(const json& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const json& r : report.at("reports")) {
    if (!r.contains("outputs")) continue;
    const json& o = r.at("outputs");
    const std::string id = r.at("id").get<std::string>();
    if (o.contains("raw_eigenvalues"))
      write_text(dir + "/" + id + "_spectrum.csv",
                 spectrum_csv(o.at("raw_eigenvalues")));
    if (o.contains("t_eigenvalues"))
      write_text(dir + "/" + id + "_spectrum.csv",
                 spectrum_csv(o.at("t_eigenvalues")));
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"finite-dimensional operator algebra workbench"};
  app.name("opalg");

  std::string config_path, out_path, csv_dir, emit_config;
  int corpus_count = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double tolerance_scale = 1.0;
  int jobs = 1;

  auto* config_opt = app.add_option("--config", config_path,
                                    "scenario configuration (JSON)");
  app.add_option("--out", out_path, "report output path (JSON)")->required();
  auto* seed_opt =
      app.add_option("--seed", seed, "override every scenario seed");
  app.add_option("--tolerance-scale", tolerance_scale,
                 "multiply all residual thresholds (debugging aid)");
  auto* corpus_opt = app.add_option(
      "--corpus", corpus_count, "generate and run N corpus scenarios");
  app.add_option("--jobs", jobs, "parallel scenario workers");
  app.add_option("--csv-dir", csv_dir, "dump spectra as CSV into this directory");
  app.add_option("--emit-config", emit_config,
                 "also write the effective scenario list as a config file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  seed_given = seed_opt->count() > 0;

  try {
    if ((config_opt->count() > 0) == (corpus_opt->count() > 0)) {
      std::cerr << "exactly one of --config / --corpus is required\n";
      return 2;
    }

    std::vector<Scenario> scenarios;
    if (corpus_opt->count() > 0) {
      if (corpus_count < 1) throw ConfigParse("--corpus needs a positive count");
      scenarios = corpus_scenarios(seed, corpus_count);
    } else {
      scenarios = load_config_file(config_path);
    }

    if (!emit_config.empty()) {
      json doc;
      json list = json::array();
      for (const Scenario& s : scenarios) list.push_back(s.payload);
      doc["scenarios"] = list;
      write_text(emit_config, doc.dump(2) + "\n");
    }

    RunOptions opt;
    opt.tolerance_scale = tolerance_scale;
    opt.jobs = jobs;
    // With --corpus the seed already shaped the scenarios; forcing it onto
    // every scenario as well would make them all identical.
    opt.override_seed = seed_given && corpus_opt->count() == 0;
    opt.seed = seed;

    auto started = std::chrono::steady_clock::now();
    json report = run_all(scenarios, opt);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();

    write_text(out_path, report.dump(2) + "\n");
    if (!csv_dir.empty()) dump_spectra(report, csv_dir);

    // Timing stays on stderr so reports are byte-identical across runs.
    std::cerr << scenarios.size() << " scenarios in " << elapsed << " ms; "
              << report.at("summary").dump() << "\n";
    return report_exit_code(report);
  } catch (const ConfigParse& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace opalg
