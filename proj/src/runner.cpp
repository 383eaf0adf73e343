#include "opalg/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "opalg/angles.hpp"
#include "opalg/direct_sum_model.hpp"
#include "opalg/ppbasis.hpp"
#include "opalg/wedderburn.hpp"

namespace opalg {

namespace {

json vector_to_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json complex_vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(json::array({v(i).real(), v(i).imag()}));
  return out;
}

struct Ledger {
  std::vector<InvariantEntry>& entries;
  void check(const std::string& name, double residual, double tolerance) {
    entries.push_back({name, residual, tolerance, residual <= tolerance});
  }
  void require(const std::string& name, bool ok) {
    entries.push_back({name, ok ? 0.0 : 1.0, 0.5, ok});
  }
};

json index_to_json(const IndexResult& r) {
  json out;
  out["value"] = r.value;
  out["best_constant"] = r.best_constant;
  out["is_finite"] = r.is_finite;
  out["c_lo"] = r.c_lo;
  out["c_hi"] = r.c_hi;
  out["witness_block"] = r.witness_block;
  out["witness_vector"] = complex_vector_to_json(r.witness_vector);
  out["starts_used"] = r.starts_used;
  out["seed"] = r.seed;
  // Only the trace-preserving expectation is computed; other expectations
  // can in principle give different values.
  out["expectation_kind"] = "trace_preserving";
  return out;
}

void run_expectation(const Scenario& s, const Tolerances& tol,
                     const RunOptions& /*opt*/, ScenarioResult& res) {
  AmbientContext ctx = parse_ambient(s.payload, res.seed);
  Subalgebra p = parse_subalgebra(s.payload.at("subalgebra"), ctx, tol);
  ConditionalExpectation e = conditional_expectation(ctx.algebra, p, tol);
  ExpectationLawResiduals laws = check_expectation_laws(e, res.seed, 32);

  Ledger ledger{res.invariants};
  ledger.check("idempotent", laws.idempotent, tol.invariant);
  ledger.check("unital", laws.unital, tol.invariant);
  ledger.check("trace_preserving", laws.trace_preserving, tol.invariant);
  ledger.check("star_preserving", laws.star, tol.invariant);
  ledger.check("bimodule", laws.bimodule, tol.invariant);
  ledger.check("positive", laws.positivity, tol.invariant);
  MultiplicativeDomainReport mdr = multiplicative_domain_check(e, tol.invariant);
  ledger.require("multiplicative_domain_clean", mdr.clean());

  res.outputs["target_dim"] = p.dim();
  res.outputs["ambient_dim"] = ctx.algebra.total_dim();
  res.outputs["laws"] = {
      {"idempotent", laws.idempotent},       {"unital", laws.unital},
      {"trace_preserving", laws.trace_preserving}, {"star", laws.star},
      {"bimodule", laws.bimodule},           {"positivity", laws.positivity}};
}

void run_index(const Scenario& s, const Tolerances& tol, const RunOptions& opt,
               ScenarioResult& res) {
  AmbientContext ctx = parse_ambient(s.payload, res.seed);
  Subalgebra p = parse_subalgebra(s.payload.at("subalgebra"), ctx, tol);
  ConditionalExpectation e = conditional_expectation(ctx.algebra, p, tol);
  IndexOptions io = opt.index;
  io.seed = res.seed;
  IndexResult r = pimsner_popa_index(e, io);

  Ledger ledger{res.invariants};
  ledger.check("bracket_width", r.c_hi - r.c_lo,
               tol.index_bracket_rel * r.c_hi + 1e-12);
  // The witness projection must pin the constant: pushing c past c_hi has
  // to break positivity.
  AlgebraElement gap =
      e.apply(*r.witness) - cxd(r.c_hi + 1e-6, 0.0) * (*r.witness);
  ledger.require("witness_sharpness", min_eigenvalue(gap) < 0.0);

  res.outputs["index"] = index_to_json(r);
  res.outputs["target_dim"] = p.dim();
}

void run_pp_basis(const Scenario& s, const Tolerances& tol,
                  const RunOptions& /*opt*/, ScenarioResult& res) {
  AmbientContext ctx = parse_ambient(s.payload, res.seed);
  Subalgebra p = parse_subalgebra(s.payload.at("subalgebra"), ctx, tol);
  ConditionalExpectation e = conditional_expectation(ctx.algebra, p, tol);
  PPBasis basis = pp_basis(e, std::nullopt, tol);

  Ledger ledger{res.invariants};
  ledger.check("orthogonality", basis.orthogonality_residual(),
               tol.span_residual);
  ledger.check("support_projections", basis.support_projection_residual(),
               tol.span_residual);
  ledger.check("reconstruction", basis.worst_reconstruction_residual(),
               tol.reconstruction);

  res.outputs["size"] = basis.size();
  res.outputs["target_dim"] = p.dim();
  json supports_unit = json::array();
  for (const AlgebraElement& f : basis.supports)
    supports_unit.push_back(norm2(f - ctx.algebra.identity()) <= tol.invariant);
  res.outputs["supports_are_unit"] = supports_unit;
}

void run_angles(const Scenario& s, const Tolerances& tol, const RunOptions& /*opt*/,
                ScenarioResult& res) {
  AmbientContext ctx = parse_ambient(s.payload, res.seed);
  const json& subs = s.payload.at("subalgebras");
  if (!subs.is_array() || subs.size() != 2)
    throw ConfigParse("angles scenario needs exactly two subalgebras");
  Subalgebra p = parse_subalgebra(subs[0], ctx, tol);
  Subalgebra q = parse_subalgebra(subs[1], ctx, tol);

  AngleSpectrum spec = angle_spectrum(p, q, tol);
  AngleSpectrum mirrored = angle_spectrum(q, p, tol);

  Ledger ledger{res.invariants};
  double range_err = 0.0;
  for (double lam : spec.raw_eigenvalues)
    range_err = std::max(range_err, std::max(-lam, lam - 1.0));
  ledger.check("eigenvalues_in_unit_interval", std::max(range_err, 0.0),
               tol.invariant);
  double sym_err = std::abs(static_cast<double>(spec.angles.size()) -
                            static_cast<double>(mirrored.angles.size()));
  for (std::size_t i = 0; i < std::min(spec.angles.size(), mirrored.angles.size()); ++i)
    sym_err = std::max(sym_err, std::abs(spec.angles[i] - mirrored.angles[i]));
  ledger.check("symmetric_in_arguments", sym_err, tol.span_residual);
  int at_one = 0;
  for (double lam : spec.raw_eigenvalues)
    if (lam >= 1.0 - tol.cluster) ++at_one;
  ledger.require("intersection_multiplicity", at_one == spec.intersection_rank);

  ConditionalExpectation e1 = conditional_expectation(ctx.algebra, p, tol);
  ConditionalExpectation e2 = conditional_expectation(ctx.algebra, q, tol);
  double comm = commutator_norm(e1, e2);
  res.outputs["commutator_norm"] = comm;
  if (ctx.group) {
    // Subgroup pairs always commute and show no nontrivial angles.
    ledger.check("subgroup_commutation", comm, tol.invariant);
    ledger.require("subgroup_empty_angles", spec.angles.empty());
  }

  res.outputs["raw_eigenvalues"] = vector_to_json(spec.raw_eigenvalues);
  res.outputs["angles"] = vector_to_json(spec.angles);
  res.outputs["intersection_rank"] = spec.intersection_rank;
}

void run_bound_check(const Scenario& s, const Tolerances& tol,
                     const RunOptions& opt, ScenarioResult& res) {
  AmbientContext ctx = parse_ambient(s.payload, res.seed);
  const json& subs = s.payload.at("subalgebras");
  std::vector<Subalgebra> family;
  for (const json& sj : subs) family.push_back(parse_subalgebra(sj, ctx, tol));
  IndexOptions io = opt.index;
  io.seed = res.seed;
  BoundReport r = bound_check(ctx.algebra, family, io, tol);

  Ledger ledger{res.invariants};
  ledger.check("wedge_equals_intersection_projection",
               r.wedge_vs_intersection_residual, tol.span_residual);
  ledger.check("intersection_projection_in_span", r.e_n_in_span_residual,
               tol.reconstruction);
  ledger.require("dimension_stabilized", r.stabilized);

  res.outputs["member_indices"] = vector_to_json(r.member_indices);
  res.outputs["max_index"] = r.max_index;
  res.outputs["ell"] = r.ell;
  res.outputs["dim_algebra"] = r.dim_algebra;
  res.outputs["ell_no_unit"] = r.ell_no_unit;
  res.outputs["dim_no_unit"] = r.dim_no_unit;
  res.outputs["intersection_index"] = r.intersection_index;
  res.outputs["intersection_dim"] = r.intersection_dim;
  res.outputs["bound"] = r.bound;
  res.outputs["satisfied"] = r.satisfied;
  if (r.has_improved) {
    res.outputs["improved_bound"] = r.improved_bound;
    res.outputs["improved_satisfied"] = r.improved_satisfied;
  }
  // Bound violations are soft: flagged, never failed.
  res.soft_flag = !r.satisfied;
}

void run_direct_sum_model(const Scenario& s, const Tolerances& tol,
                          const RunOptions& opt, ScenarioResult& res) {
  MultiMatrixAlgebra base = parse_algebra(s.payload.at("algebra"));
  std::vector<StarAutomorphism> autos;
  for (const json& uj : s.payload.at("unitaries"))
    autos.push_back(
        automorphism_from_unitary(parse_element(uj, base), tol.unitary));
  DirectSumModel model = build_direct_sum_model(base, autos, tol);
  IndexOptions io = opt.index;
  io.seed = res.seed;
  DirectSumModelReport r = direct_sum_model_spectrum(model, io, tol);

  Ledger ledger{res.invariants};
  ledger.check("sandwich_proportional_to_t", r.proportionality_residual,
               tol.span_residual);
  ledger.check("diagonal_expectation_formula", r.ep_formula_residual,
               tol.span_residual);
  ledger.check("twisted_expectation_formula", r.eq_formula_residual,
               tol.span_residual);

  res.outputs["family_size"] = model.family_size();
  res.outputs["t_eigenvalues"] = vector_to_json(r.t_eigenvalues);
  res.outputs["t_spectrum_points"] = r.t_spectrum_points;
  res.outputs["proportionality_residual"] = r.proportionality_residual;
  res.outputs["fixed_point_index"] = r.fixed_point_index;
  res.outputs["fixed_point_dim"] = r.fixed_point_dim;
}

void run_decompose(const Scenario& s, const Tolerances& tol,
                   const RunOptions& /*opt*/, ScenarioResult& res) {
  std::vector<Matrix> gens;
  for (const json& gj : s.payload.at("generators"))
    gens.push_back(parse_matrix(gj));
  WedderburnOptions wo;
  wo.seed = res.seed;
  wo.tol = tol;
  WedderburnDecomposition dec = wedderburn_decompose(gens, wo);

  double roundtrip = 0.0;
  for (const Matrix& g : gens) {
    Matrix rt = dec.to_concrete(dec.to_abstract(g));
    roundtrip = std::max(roundtrip, (rt - g).norm() / std::max(g.norm(), 1.0));
  }
  double unitary_err =
      (dec.basis_change.adjoint() * dec.basis_change -
       Matrix::Identity(dec.concrete_dim, dec.concrete_dim)).cwiseAbs().maxCoeff();

  Ledger ledger{res.invariants};
  ledger.check("structure_roundtrip", roundtrip, tol.reconstruction);
  ledger.check("basis_change_unitary", unitary_err, tol.invariant);

  json blocks = json::array(), mults = json::array();
  for (int k = 0; k < dec.algebra.block_count(); ++k) {
    blocks.push_back(dec.algebra.block_size(k));
    mults.push_back(dec.multiplicities[k]);
  }
  res.outputs["blocks"] = blocks;
  res.outputs["multiplicities"] = mults;
  if (s.payload.contains("expected_blocks")) {
    std::vector<int> expected, got;
    for (const json& b : s.payload.at("expected_blocks")) expected.push_back(b.get<int>());
    for (int k = 0; k < dec.algebra.block_count(); ++k)
      got.push_back(dec.algebra.block_size(k));
    std::sort(expected.begin(), expected.end());
    Ledger{res.invariants}.require("expected_block_sizes", expected == got);
  }
}

void run_counterexample(const Scenario& s, const Tolerances& tol,
                        const RunOptions& /*opt*/, ScenarioResult& res) {
  AmbientContext ctx = parse_ambient(s.payload, res.seed);
  std::vector<AlgebraElement> us;
  for (const json& uj : s.payload.at("unitaries"))
    us.push_back(parse_element(uj, ctx.algebra));
  InnerSpectrumProbe probe = counterexample_probe(us, tol);

  Ledger{res.invariants}.require("map_spectrum_within_algebra_dim",
                                 probe.consistent);
  res.outputs["map_algebra_dim"] = probe.map_algebra_dim;
  res.outputs["map_sum_spectrum_points"] = probe.map_sum_spectrum_points;
  res.outputs["element_sum_spectrum_points"] = probe.element_sum_spectrum_points;
  res.outputs["map_sum_eigenvalues"] = vector_to_json(probe.map_sum_eigenvalues);
  res.outputs["element_sum_eigenvalues"] =
      vector_to_json(probe.element_sum_eigenvalues);
}

const char* anchor_for(const std::string& kind) {
  if (kind == "expectation") return "conditional_expectation";
  if (kind == "index") return "pimsner_popa_index";
  if (kind == "pp_basis") return "pp_basis";
  if (kind == "angles") return "angle_spectrum";
  if (kind == "bound_check") return "bound_check";
  if (kind == "direct_sum_model") return "direct_sum_model_spectrum";
  if (kind == "decompose") return "wedderburn_decompose";
  if (kind == "counterexample") return "counterexample_probe";
  return "";
}

}  // namespace

ScenarioResult run_scenario(const Scenario& s, const RunOptions& opt) {
  ScenarioResult res;
  res.id = s.id;
  res.kind = s.kind;
  res.anchor = anchor_for(s.kind);
  res.seed = opt.override_seed ? opt.seed : s.seed;
  Tolerances tol = default_tolerances().scaled(s.tolerance_scale * opt.tolerance_scale);
  if (s.payload.contains("tolerances")) {
    const json& tj = s.payload.at("tolerances");
    tol.invariant = tj.value("invariant", tol.invariant);
    tol.span_residual = tj.value("span_residual", tol.span_residual);
    tol.reconstruction = tj.value("reconstruction", tol.reconstruction);
    tol.cluster = tj.value("cluster", tol.cluster);
    tol.index_bracket_rel = tj.value("index_bracket", tol.index_bracket_rel);
  }

  try {
    if (s.kind == "expectation") {
      run_expectation(s, tol, opt, res);
    } else if (s.kind == "index") {
      run_index(s, tol, opt, res);
    } else if (s.kind == "pp_basis") {
      run_pp_basis(s, tol, opt, res);
    } else if (s.kind == "angles") {
      run_angles(s, tol, opt, res);
    } else if (s.kind == "bound_check") {
      run_bound_check(s, tol, opt, res);
    } else if (s.kind == "direct_sum_model") {
      run_direct_sum_model(s, tol, opt, res);
    } else if (s.kind == "decompose") {
      run_decompose(s, tol, opt, res);
    } else if (s.kind == "counterexample") {
      run_counterexample(s, tol, opt, res);
    } else {
      throw ConfigParse("unknown scenario kind: " + s.kind);
    }
  } catch (const ConfigParse&) {
    throw;
  } catch (const RankDeficiencyUndetermined& e) {
    res.numerical_failure = true;
    res.error = e.what();
  } catch (const DegenerateNormalization& e) {
    res.numerical_failure = true;
    res.error = e.what();
  } catch (const OptimizerNonConvergence& e) {
    res.numerical_failure = true;
    res.error = e.what();
  } catch (const CarrierViolation& e) {
    res.numerical_failure = true;
    res.error = e.what();
  } catch (const NumericalFailure& e) {
    res.numerical_failure = true;
    res.error = e.what();
  } catch (const Error& e) {
    // Structural failures on parsed inputs count as config problems.
    throw ConfigParse(std::string("scenario ") + s.id + ": " + e.what());
  }

  for (const InvariantEntry& entry : res.invariants)
    if (!entry.pass) res.hard_failure = true;
  return res;
}

json scenario_result_to_json(const ScenarioResult& r) {
  json out;
  out["id"] = r.id;
  out["kind"] = r.kind;
  out["anchor"] = r.anchor;
  out["seed"] = r.seed;
  if (r.numerical_failure) {
    out["status"] = "numerical_failure";
    out["error"] = r.error;
    return out;
  }
  out["status"] = r.hard_failure ? "invariant_failure" : "ok";
  if (r.soft_flag) out["flagged"] = true;
  out["outputs"] = r.outputs;
  json inv = json::array();
  for (const InvariantEntry& e : r.invariants)
    inv.push_back(json{{"name", e.name},
                       {"residual", e.residual},
                       {"tolerance", e.tolerance},
                       {"pass", e.pass}});
  out["invariants"] = inv;
  return out;
}

json run_all(const std::vector<Scenario>& scenarios, const RunOptions& opt) {
  std::vector<ScenarioResult> results(scenarios.size());
  int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < scenarios.size(); ++i)
      results[i] = run_scenario(scenarios[i], opt);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(scenarios.size());
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&]() {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= scenarios.size()) return;
          try {
            results[i] = run_scenario(scenarios[i], opt);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  json report;
  report["scenario_count"] = scenarios.size();
  int hard = 0, soft = 0, numerical = 0;
  json items = json::array();
  for (const ScenarioResult& r : results) {
    if (r.hard_failure) ++hard;
    if (r.soft_flag) ++soft;
    if (r.numerical_failure) ++numerical;
    items.push_back(scenario_result_to_json(r));
  }
  report["summary"] = json{{"hard_failures", hard},
                           {"soft_flags", soft},
                           {"numerical_failures", numerical}};
  report["reports"] = items;
  return report;
}

int report_exit_code(const json& report) {
  const json& summary = report.at("summary");
  if (summary.at("numerical_failures").get<int>() > 0) return 3;
  if (summary.at("hard_failures").get<int>() > 0) return 1;
  return 0;
}

}  // namespace opalg
