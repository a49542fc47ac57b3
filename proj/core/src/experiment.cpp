#include "torec/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "torec/coeff_io.hpp"
#include "torec/errors.hpp"
#include "torec/phantom.hpp"
#include "torec/rng.hpp"

namespace torec {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

json design_to_jsonv(const DesignSpec& dz) {
  json j{{"scheme", dz.scheme}, {"dim", dz.dim}};
  if (dz.scheme == "lowest-block") {
    j["m"] = dz.m;
  } else if (dz.scheme == "hierarchical") {
    j["n_target"] = dz.n_target;
    j["alpha"] = dz.alpha;
    j["k0"] = dz.k0;
    j["k_cap"] = dz.k_cap;
    j["seed"] = dz.seed;
  } else if (dz.scheme == "uniform") {
    j["n_target"] = dz.n_target;
    j["half_width"] = dz.half_width;
    j["seed"] = dz.seed;
  }
  return j;
}

DesignSpec design_from_jsonv(const json& j) {
  DesignSpec dz;
  dz.scheme = j.at("scheme").get<std::string>();
  dz.dim = j.value("dim", 2);
  if (dz.scheme == "lowest-block") {
    dz.m = j.at("m").get<int>();
  } else if (dz.scheme == "hierarchical") {
    dz.n_target = j.at("n_target").get<std::int64_t>();
    dz.alpha = j.value("alpha", 1.0);
    dz.k0 = j.value("k0", -1);
    dz.k_cap = j.value("k_cap", -1);
    dz.seed = j.value("seed", std::uint64_t{0});
  } else if (dz.scheme == "uniform") {
    dz.n_target = j.at("n_target").get<std::int64_t>();
    dz.half_width = j.at("half_width").get<int>();
    dz.seed = j.value("seed", std::uint64_t{0});
  } else {
    throw ParameterError("design spec: unknown scheme '" + dz.scheme + "'");
  }
  return dz;
}

json spec_to_jsonv(const ExperimentSpec& spec) {
  json j{{"phantom", spec.phantom},
         {"design", design_to_jsonv(spec.design)},
         {"method", spec.method},
         {"m", spec.m},
         {"metric_grid", spec.metric_grid},
         {"out_dir", spec.out_dir}};
  if (spec.method == "bvmin")
    j["solver"] = {{"rho", spec.solver.rho},
                   {"max_iter", spec.solver.max_iter},
                   {"eps_primal", spec.solver.eps_primal},
                   {"eps_dual", spec.solver.eps_dual},
                   {"oversample", spec.solver.oversample},
                   {"check_every", spec.solver.check_every}};
  return j;
}

ExperimentSpec spec_from_jsonv(const json& j) {
  ExperimentSpec spec;
  spec.phantom = j.value("phantom", std::string("paper"));
  spec.design = design_from_jsonv(j.at("design"));
  spec.method = j.at("method").get<std::string>();
  if (spec.method != "partial" && spec.method != "vdp" && spec.method != "bvmin")
    throw ParameterError("experiment spec: unknown method '" + spec.method + "'");
  spec.m = j.at("m").get<int>();
  spec.metric_grid = j.value("metric_grid", 1024);
  spec.out_dir = j.value("out_dir", std::string("."));
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    spec.solver.rho = s.value("rho", spec.solver.rho);
    spec.solver.max_iter = s.value("max_iter", spec.solver.max_iter);
    spec.solver.eps_primal = s.value("eps_primal", spec.solver.eps_primal);
    spec.solver.eps_dual = s.value("eps_dual", spec.solver.eps_dual);
    spec.solver.oversample = s.value("oversample", spec.solver.oversample);
    spec.solver.check_every = s.value("check_every", spec.solver.check_every);
  }
  return spec;
}

json solver_to_jsonv(const ConvergenceReport& r) {
  return json{{"iterations", r.iterations},   {"final_objective", r.final_objective},
              {"primal_res", r.primal_res},   {"dual_res", r.dual_res},
              {"converged", r.converged},     {"wall_time_ms", r.wall_time_ms}};
}

ConvergenceReport solver_from_jsonv(const json& j) {
  ConvergenceReport r;
  r.iterations = j.at("iterations").get<std::int64_t>();
  r.final_objective = j.at("final_objective").get<double>();
  r.primal_res = j.at("primal_res").get<double>();
  r.dual_res = j.at("dual_res").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

json report_to_jsonv(const EdgeReport& rep) {
  json lp = json::object();
  for (const auto& [p, v] : rep.lp_errors) lp[fmt_p(p)] = v;
  json j{{"grid", rep.grid},
         {"phantom", rep.phantom_id},
         {"lp_errors", lp},
         {"edge_discrepancy", rep.discrepancy},
         {"bv_objective", rep.bv_objective}};
  if (rep.feasibility) j["feasibility"] = *rep.feasibility;
  if (rep.edge_sets)
    j["edge_sets"] = {{"T", rep.edge_sets->measure_T},
                      {"P", rep.edge_sets->measure_P},
                      {"N", rep.edge_sets->measure_N},
                      {"union", rep.edge_sets->measure_union}};
  return j;
}

EdgeReport report_from_jsonv(const json& j) {
  EdgeReport rep;
  rep.grid = j.at("grid").get<int>();
  rep.phantom_id = j.at("phantom").get<std::string>();
  for (const auto& [k, v] : j.at("lp_errors").items()) rep.lp_errors[std::stod(k)] = v.get<double>();
  rep.discrepancy = j.at("edge_discrepancy").get<double>();
  rep.bv_objective = j.at("bv_objective").get<double>();
  if (j.contains("feasibility")) rep.feasibility = j.at("feasibility").get<double>();
  if (j.contains("edge_sets")) {
    EdgeSets es;
    es.measure_T = j.at("edge_sets").at("T").get<double>();
    es.measure_P = j.at("edge_sets").at("P").get<double>();
    es.measure_N = j.at("edge_sets").at("N").get<double>();
    es.measure_union = j.at("edge_sets").at("union").get<double>();
    rep.edge_sets = es;
  }
  return rep;
}

json parse_or_throw(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(origin + ": invalid JSON: " + e.what());
  }
}

// Stage harness: timings recorded, failures rethrown with the stage name so a
// caller can tell which artifacts exist.
template <typename F>
void stage(RunManifest& man, const std::string& name, F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  try {
    fn();
  } catch (const ParameterError& e) {
    throw ParameterError("stage " + name + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError("stage " + name + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError("stage " + name + ": " + e.what());
  } catch (const std::exception& e) {
    throw NumericalError("stage " + name + ": " + e.what());
  }
  man.timings_ms[name] = elapsed();
}

std::int64_t design_n(const DesignSpec& dz) {
  if (dz.scheme == "lowest-block") return cube_count(dz.m, dz.dim);
  return dz.n_target;
}

RunManifest run_impl(ExperimentSpec spec, const Phantom& ph) {
  RunManifest man;
  man.tool_version = kToolVersion;
  man.phantom_json = phantom_to_json(ph);

  fs::create_directories(spec.out_dir);
  auto emit = [&](const std::string& name, const std::string& file, const std::string& bytes) {
    write_text_file(spec.out_dir + "/" + file, bytes);
    man.artifacts[name] = file;
    man.hashes[name] = hash_hex(fnv1a64_str(bytes));
  };
  auto track = [&](const std::string& name, const std::string& file) {
    man.artifacts[name] = file;
    man.hashes[name] = hash_hex(fnv1a64_file(spec.out_dir + "/" + file));
  };

  stage(man, "spec", [&] {
    if (spec.m < 0) throw ParameterError("reconstruction degree must be nonnegative");
    if (spec.metric_grid < 2 * spec.m + 1)
      throw ParameterError("metric grid must have at least 2m+1 points per axis");
  });

  SamplingDesign dz;
  stage(man, "design", [&] {
    const auto& d = spec.design;
    if (d.scheme == "lowest-block") {
      dz = lowest_block(d.m, d.dim);
    } else if (d.scheme == "hierarchical") {
      HierarchicalParams hp;
      hp.n_target = d.n_target;
      hp.dim = d.dim;
      hp.alpha = d.alpha;
      hp.k0 = d.k0;
      hp.k_cap = d.k_cap;
      dz = hierarchical(hp, d.seed);
      spec.design.k0 = std::stoi(dz.params.at("k0"));
      spec.design.k_cap = std::stoi(dz.params.at("k_cap"));
    } else if (d.scheme == "uniform") {
      dz = uniform_random(d.n_target, d.half_width, d.dim, d.seed);
    } else {
      throw ParameterError("unknown scheme '" + d.scheme + "'");
    }
    emit("design", "design.txt", design_to_string(dz));

    man.seeds["root"] = std::to_string(spec.design.seed);
    if (dz.scheme == "hierarchical") {
      for (int k = spec.design.k0 + 1; k <= spec.design.k_cap; ++k)
        man.seeds["band:" + std::to_string(k)] =
            std::to_string(stream_seed(spec.design.seed, std::uint64_t(k)));
      man.seeds["trim"] = std::to_string(stream_seed(spec.design.seed, kTagTrim));
      man.seeds["fill"] = std::to_string(stream_seed(spec.design.seed, kTagFill));
    } else if (dz.scheme == "uniform") {
      man.seeds["uniform"] = std::to_string(stream_seed(spec.design.seed, kTagUniform));
    }
  });

  Measurements meas;
  stage(man, "measure", [&] {
    meas = measure(ph, dz);
    emit("measurements", "measurements.csv",
         "# phantom=" + meas.phantom_id() + "\n" + coeffs_to_csv(meas.entries(), meas.dim()));
  });

  TrigPolynomial recon;
  stage(man, "reconstruct", [&] {
    if (spec.method == "partial") {
      recon = partial_sum_recon(meas, spec.m);
    } else if (spec.method == "vdp") {
      recon = vdp_recon(meas, spec.m);
    } else {
      BvMinResult res = bv_min_admm(meas, spec.m, spec.solver);
      recon = std::move(res.recon);
      man.solver_report = res.report;
      emit("solver_report", "solver_report.json", solver_to_jsonv(res.report).dump(2) + "\n");
    }
    emit("recon_coeffs", "recon_coeffs.csv", coeffs_to_csv(poly_entries(recon), recon.dim()));
  });

  stage(man, "render", [&] {
    grid_write_pgm(spec.out_dir + "/truth.pgm", phantom_render(ph, spec.metric_grid));
    grid_write_pgm(spec.out_dir + "/recon.pgm", evaluate_on_grid(recon, spec.metric_grid));
    for (const char* f : {"truth.pgm", "truth.pgm.json", "recon.pgm", "recon.pgm.json"})
      track(f, f);
  });

  stage(man, "metrics", [&] {
    man.metrics = recovery_report(recon, ph, spec.metric_grid, &meas);
    emit("metrics", "metrics.json",
         edge_report_to_string(man.metrics, spec.method == "bvmin" ? &man.solver_report : nullptr));
  });

  man.spec = spec;
  stage(man, "manifest",
        [&] { write_text_file(spec.out_dir + "/manifest.json", manifest_to_string(man)); });
  return man;
}

}  // namespace

ExperimentSpec experiment_spec_from_string(const std::string& json_text) {
  const json j = parse_or_throw(json_text, "experiment spec");
  try {
    return spec_from_jsonv(j);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("experiment spec: ") + e.what());
  }
}

ExperimentSpec experiment_spec_load(const std::string& path) {
  return experiment_spec_from_string(read_text_file(path));
}

std::string experiment_spec_to_string(const ExperimentSpec& spec) {
  return spec_to_jsonv(spec).dump(2) + "\n";
}

std::string manifest_to_string(const RunManifest& man) {
  json j{{"tool_version", man.tool_version},
         {"spec", spec_to_jsonv(man.spec)},
         {"phantom", parse_or_throw(man.phantom_json, "manifest phantom")},
         {"n", design_n(man.spec.design)},
         {"artifacts", man.artifacts},
         {"hashes", man.hashes},
         {"seeds", man.seeds},
         {"timings_ms", man.timings_ms},
         {"metrics", report_to_jsonv(man.metrics)}};
  if (man.spec.method == "bvmin") j["solver"] = solver_to_jsonv(man.solver_report);
  return j.dump(2) + "\n";
}

RunManifest manifest_from_string(const std::string& json_text, const std::string& origin) {
  const json j = parse_or_throw(json_text, origin);
  RunManifest man;
  try {
    man.tool_version = j.at("tool_version").get<std::string>();
    man.spec = spec_from_jsonv(j.at("spec"));
    man.phantom_json = j.at("phantom").dump();
    man.artifacts = j.at("artifacts").get<std::map<std::string, std::string>>();
    man.hashes = j.at("hashes").get<std::map<std::string, std::string>>();
    man.seeds = j.at("seeds").get<std::map<std::string, std::string>>();
    man.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
    if (j.contains("solver")) man.solver_report = solver_from_jsonv(j.at("solver"));
    man.metrics = report_from_jsonv(j.at("metrics"));
  } catch (const json::exception& e) {
    throw IoError(origin + ": malformed manifest: " + e.what());
  }
  return man;
}

RunManifest manifest_load(const std::string& path) {
  return manifest_from_string(read_text_file(path), path);
}

RunManifest run_experiment(const ExperimentSpec& spec) {
  Phantom ph;
  try {
    ph = phantom_load(spec.phantom);
  } catch (const IoError& e) {
    throw IoError(std::string("stage spec: ") + e.what());
  }
  return run_impl(spec, ph);
}

RunManifest rerun_from_manifest(const std::string& manifest_path, const std::string& out_dir) {
  const RunManifest man = manifest_load(manifest_path);
  ExperimentSpec spec = man.spec;
  spec.out_dir = out_dir;
  const Phantom ph = spec.phantom == "paper"
                         ? paper_phantom()
                         : phantom_from_json(man.phantom_json, spec.phantom);
  return run_impl(spec, ph);
}

CompareResult compare_runs(const std::vector<std::string>& manifest_paths) {
  if (manifest_paths.size() < 2) throw ParameterError("compare_runs: need at least two manifests");
  std::vector<RunManifest> mans;
  mans.reserve(manifest_paths.size());
  for (const auto& p : manifest_paths) mans.push_back(manifest_load(p));
  for (std::size_t i = 1; i < mans.size(); ++i) {
    if (parse_or_throw(mans[i].phantom_json, "manifest") !=
        parse_or_throw(mans[0].phantom_json, "manifest"))
      throw ParameterError("compare_runs: manifests describe different phantoms");
    if (mans[i].metrics.grid != mans[0].metrics.grid)
      throw ParameterError("compare_runs: manifests use different metric grids");
  }

  json rows = json::array();
  std::string csv = "run,n,scheme,method,l1_error,l2_error,edge_discrepancy,bv_objective,runtime_ms\n";
  char buf[64];
  for (std::size_t i = 0; i < mans.size(); ++i) {
    const auto& man = mans[i];
    double runtime = 0.0;
    for (const auto& [k, v] : man.timings_ms) runtime += v;
    json row{{"run", manifest_paths[i]},
             {"n", design_n(man.spec.design)},
             {"scheme", man.spec.design.scheme},
             {"method", man.spec.method},
             {"l1_error", man.metrics.lp_errors.at(1.0)},
             {"l2_error", man.metrics.lp_errors.at(2.0)},
             {"edge_discrepancy", man.metrics.discrepancy},
             {"bv_objective", man.metrics.bv_objective},
             {"runtime_ms", runtime}};
    rows.push_back(row);
    csv += manifest_paths[i] + "," + std::to_string(design_n(man.spec.design)) + "," +
           man.spec.design.scheme + "," + man.spec.method;
    for (double v : {man.metrics.lp_errors.at(1.0), man.metrics.lp_errors.at(2.0),
                     man.metrics.discrepancy, man.metrics.bv_objective, runtime}) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      csv += buf;
    }
    csv += "\n";
  }
  return CompareResult{csv, json{{"rows", rows}}.dump(2) + "\n"};
}

std::string edge_report_to_string(const EdgeReport& rep, const ConvergenceReport* solver) {
  json j = report_to_jsonv(rep);
  if (solver) j["solver"] = solver_to_jsonv(*solver);
  return j.dump(2) + "\n";
}

}  // namespace torec
