// Command-line front end: sampling designs, measurements, reconstructions,
// edge metrics, witness certificates, and manifest-driven experiment runs.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "torec/coeff_io.hpp"
#include "torec/edge_metrics.hpp"
#include "torec/errors.hpp"
#include "torec/experiment.hpp"
#include "torec/group_witness.hpp"
#include "torec/phantom.hpp"
#include "torec/reconstruct.hpp"
#include "torec/sampling.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace torec;

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

TrigPolynomial poly_from_entries(const std::vector<std::pair<FrequencyIndex, cplx>>& entries) {
  if (entries.empty()) throw ParameterError("coefficient file has no rows");
  const int d = int(entries.front().first.size());
  int m = 0;
  for (const auto& [xi, v] : entries) m = std::max(m, linf_norm(xi));
  if (std::int64_t(entries.size()) != cube_count(m, d))
    throw ParameterError("coefficient file is not a full block up to its largest frequency");
  TrigPolynomial f(d, m);
  for (const auto& [xi, v] : entries) f.set_coeff(xi, v);
  return f;
}

json greedy_to_json(const GreedyResult& g) {
  json s = json::array();
  for (const auto& v : g.s) s.push_back(v);
  return json{{"s", s},
              {"n", g.s.size()},
              {"h", g.h},
              {"trace", g.trace},
              {"bound_rhs", g.bound_rhs},
              {"bound_satisfied", std::pow(2.0, double(g.s.size())) >= g.bound_rhs}};
}

int cmd_phantom(const std::string& spec, const std::string& out_dir, int render, int degree) {
  const Phantom ph = phantom_load(spec);
  fs::create_directories(out_dir);
  write_text_file(join_path(out_dir, "phantom.json"), phantom_to_json(ph) + "\n");
  if (render > 0) grid_write_pgm(join_path(out_dir, "phantom.pgm"), phantom_render(ph, render));
  if (degree >= 0) {
    std::vector<std::pair<FrequencyIndex, cplx>> entries;
    for_each_in_cube(degree, 2, [&](const FrequencyIndex& xi) {
      entries.emplace_back(xi, phantom_coeff(ph, xi));
    });
    coeffs_write(join_path(out_dir, "phantom_coeffs.csv"), entries, 2);
  }
  return 0;
}

int cmd_design(const std::string& scheme, int m, std::int64_t n, double alpha, int k0, int k_cap,
               int half_width, int dim, std::uint64_t seed, const std::string& out) {
  SamplingDesign dz;
  if (scheme == "lowest-block") {
    dz = lowest_block(m, dim);
  } else if (scheme == "hierarchical") {
    HierarchicalParams hp;
    hp.n_target = n;
    hp.dim = dim;
    hp.alpha = alpha;
    hp.k0 = k0;
    hp.k_cap = k_cap;
    dz = hierarchical(hp, seed);
  } else if (scheme == "uniform") {
    dz = uniform_random(n, half_width, dim, seed);
  } else {
    throw ParameterError("unknown scheme '" + scheme + "'");
  }
  fs::create_directories(fs::path(out).parent_path().empty() ? "." : fs::path(out).parent_path().string());
  design_write(dz, out);
  std::printf("%s: %lld frequencies, max |xi|_inf = %d\n", out.c_str(),
              static_cast<long long>(dz.size()), dz.max_linf());
  return 0;
}

int cmd_measure(const std::string& phantom, const std::string& design, const std::string& out) {
  const Phantom ph = phantom_load(phantom);
  const SamplingDesign dz = design_read(design);
  measurements_write(out, measure(ph, dz));
  return 0;
}

int cmd_reconstruct(const std::string& meas_path, const std::string& method, int m, double rho,
                    std::int64_t max_iter, double eps, int oversample, const std::string& out,
                    const std::string& report_path) {
  const Measurements meas = measurements_read(meas_path);
  TrigPolynomial recon;
  bool converged = true;
  if (method == "partial") {
    recon = partial_sum_recon(meas, m);
  } else if (method == "vdp") {
    recon = vdp_recon(meas, m);
  } else if (method == "bvmin") {
    AdmmParams params;
    params.rho = rho;
    params.max_iter = max_iter;
    params.eps_primal = eps;
    params.eps_dual = eps;
    params.oversample = oversample;
    BvMinResult res = bv_min_admm(meas, m, params);
    recon = std::move(res.recon);
    converged = res.report.converged;
    if (!report_path.empty()) {
      json j{{"iterations", res.report.iterations},
             {"final_objective", res.report.final_objective},
             {"primal_res", res.report.primal_res},
             {"dual_res", res.report.dual_res},
             {"converged", res.report.converged},
             {"wall_time_ms", res.report.wall_time_ms}};
      write_text_file(report_path, j.dump(2) + "\n");
    }
  } else {
    throw ParameterError("unknown method '" + method + "'");
  }
  coeffs_write(out, poly_entries(recon), recon.dim());
  if (!converged) {
    std::fprintf(stderr, "solver did not converge within the iteration budget\n");
    return 3;
  }
  return 0;
}

int cmd_metrics(const std::string& recon_path, const std::string& phantom, int grid,
                const std::string& meas_path, const std::string& out) {
  const TrigPolynomial recon = poly_from_entries(coeffs_read(recon_path));
  const Phantom ph = phantom_load(phantom);
  EdgeReport rep;
  if (!meas_path.empty()) {
    const Measurements meas = measurements_read(meas_path);
    rep = recovery_report(recon, ph, grid, &meas);
  } else {
    rep = recovery_report(recon, ph, grid, nullptr);
  }
  write_text_file(out, edge_report_to_string(rep, nullptr));
  return 0;
}

std::string sibling_csv(const std::string& json_path) {
  std::string base = json_path;
  const auto dot = base.rfind(".json");
  if (dot != std::string::npos && dot == base.size() - 5) base.resize(dot);
  return base + "_coeffs.csv";
}

int cmd_witness(const std::vector<int>& moduli, double lambda_frac, int band_k, int dim,
                const std::string& design_path, double delta, std::int64_t trials,
                std::uint64_t seed, const std::string& out) {
  json j;
  const std::string csv_path = sibling_csv(out);
  if (band_k > 0) {
    if (design_path.empty())
      throw ParameterError("witness: --band-k needs --design for the sampled frequencies");
    const SamplingDesign dz = design_read(design_path);
    const Theorem2Witness w = theorem2_witness(band_k, dim, dz.freqs, delta, trials, seed);
    j["mode"] = "theorem2";
    j["k"] = band_k;
    j["dim"] = dim;
    j["delta"] = delta;
    j["n"] = w.greedy.s.size();
    j["sampled"] = dz.size();
    j["greedy"] = greedy_to_json(w.greedy);
    j["balance_ok"] = w.balance_ok;
    j["degree"] = w.poly.degree();
    j["coeff_support"] = w.witness.coeffs.size();
    j["phase_search"] = {{"trials", w.phases.trials},
                         {"best_l1", w.phases.best_l1},
                         {"mean_l1", w.phases.mean_l1},
                         {"met_target", w.phases.met_target}};
    j["l1"] = w.ell1;
    j["l2_sq_coeff"] = w.ell2_sq;
    for (const auto& [p, r] : w.ratios) j["ratio"][std::to_string(p)] = r;
    write_text_file(csv_path, coeffs_to_csv(poly_entries(w.poly), dim));
    j["coeff_csv"] = csv_path;
  } else {
    if (moduli.empty()) throw ParameterError("witness: --group is required without --band-k");
    GroupSpec G{moduli};
    const std::int64_t order = G.order();
    if (!(lambda_frac > 0.0 && lambda_frac <= 1.0))
      throw ParameterError("witness: --lambda-frac must lie in (0,1]");
    const auto size = std::int64_t(std::ceil(lambda_frac * double(order)));
    std::vector<std::vector<int>> lambda;
    lambda.reserve(std::size_t(size));
    for (std::int64_t i = 0; i < size; ++i) lambda.push_back(G.unflatten(i));
    const GreedyResult g = greedy_select(G, lambda, delta);
    const PhaseSearchResult ps = phase_search(G, g.s, trials, seed);
    const WitnessFunction w = riesz_product(G, g.s, g.h, ps.best_phases);
    j["mode"] = "group";
    j["group"] = moduli;
    j["delta"] = delta;
    j["n"] = g.s.size();
    j["lambda_size"] = size;
    j["greedy"] = greedy_to_json(g);
    j["phase_search"] = {{"trials", ps.trials},
                         {"best_l1", ps.best_l1},
                         {"mean_l1", ps.mean_l1},
                         {"met_target", ps.met_target}};
    j["l1"] = group_lp_norm(w.values, 1.0);
    double l2sq = 0.0;
    for (const auto& [xi, c] : w.coeffs) l2sq += std::norm(c);
    j["l2_sq_coeff"] = l2sq;
    for (double p : {1.5, 2.0}) j["ratio"][std::to_string(p)] = witness_ratio(w.values, p);
    write_text_file(csv_path, coeffs_to_csv(w.coeffs, int(moduli.size())));
    j["coeff_csv"] = csv_path;
  }
  write_text_file(out, j.dump(2) + "\n");
  return 0;
}

int cmd_experiment(const std::string& spec_path, const std::string& manifest_path,
                   const std::string& out_dir_override, std::uint64_t seed, bool seed_given) {
  RunManifest man;
  if (!manifest_path.empty()) {
    std::string out = out_dir_override;
    if (out.empty()) throw ParameterError("experiment: --from-manifest needs --out-dir");
    man = rerun_from_manifest(manifest_path, out);
  } else {
    if (spec_path.empty()) throw ParameterError("experiment: need --spec or --from-manifest");
    ExperimentSpec spec = experiment_spec_load(spec_path);
    if (!out_dir_override.empty()) spec.out_dir = out_dir_override;
    if (seed_given) spec.design.seed = seed;
    man = run_experiment(spec);
  }
  std::printf("experiment complete: %s\n", join_path(man.spec.out_dir, "manifest.json").c_str());
  if (man.spec.method == "bvmin" && !man.solver_report.converged) {
    std::fprintf(stderr, "solver did not converge within the iteration budget\n");
    return 3;
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& manifests, const std::string& out_csv,
                const std::string& out_json) {
  const CompareResult cr = compare_runs(manifests);
  write_text_file(out_csv, cr.csv);
  write_text_file(out_json, cr.json_text);
  std::fputs(cr.csv.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier sampling and bounded-variation reconstruction toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int threads = 1;
  app.add_option("--seed", seed, "root seed for seeded subcommands");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--threads", threads,
                 "reserved for interface stability; transforms run single-threaded");

  // phantom
  auto* ph_cmd = app.add_subcommand("phantom", "emit phantom JSON, raster, coefficients");
  ph_cmd->fallthrough();
  std::string ph_spec = "paper";
  int ph_render = 0, ph_degree = -1;
  ph_cmd->add_option("--spec", ph_spec, "'paper' or a phantom JSON path");
  ph_cmd->add_option("--render", ph_render, "raster grid points per axis (0 = skip)");
  ph_cmd->add_option("--degree", ph_degree, "dump the coefficient block |xi|_inf <= degree");

  // design
  auto* dz_cmd = app.add_subcommand("design", "generate a sampling design file");
  dz_cmd->fallthrough();
  std::string dz_scheme = "lowest-block", dz_out;
  int dz_m = 8, dz_k0 = -1, dz_kcap = -1, dz_hw = 0, dz_dim = 2;
  std::int64_t dz_n = 0;
  double dz_alpha = 1.0;
  dz_cmd->add_option("--scheme", dz_scheme, "lowest-block | hierarchical | uniform");
  dz_cmd->add_option("--m", dz_m, "lowest-block half width");
  dz_cmd->add_option("--n", dz_n, "target frequency count");
  dz_cmd->add_option("--alpha", dz_alpha, "hierarchical thinning exponent");
  dz_cmd->add_option("--k0", dz_k0, "hierarchical dense level (negative = auto)");
  dz_cmd->add_option("--k-cap", dz_kcap, "hierarchical top band (negative = auto)");
  dz_cmd->add_option("--half-width", dz_hw, "uniform cube half width");
  dz_cmd->add_option("--dim", dz_dim, "dimension");
  dz_cmd->add_option("--out", dz_out, "output design file");

  // measure
  auto* ms_cmd = app.add_subcommand("measure", "evaluate phantom coefficients on a design");
  ms_cmd->fallthrough();
  std::string ms_phantom = "paper", ms_design, ms_out;
  ms_cmd->add_option("--phantom", ms_phantom, "'paper' or a phantom JSON path");
  ms_cmd->add_option("--design", ms_design, "design file")->required();
  ms_cmd->add_option("--out", ms_out, "output measurement CSV");

  // reconstruct
  auto* rc_cmd = app.add_subcommand("reconstruct", "recover a trig polynomial from measurements");
  rc_cmd->fallthrough();
  std::string rc_meas, rc_method = "bvmin", rc_out, rc_report;
  int rc_m = 0, rc_oversample = 4;
  double rc_rho = 1.0, rc_eps = 1e-7;
  std::int64_t rc_iter = 5000;
  rc_cmd->add_option("--measurements", rc_meas, "measurement CSV")->required();
  rc_cmd->add_option("--method", rc_method, "partial | vdp | bvmin");
  rc_cmd->add_option("--m", rc_m, "reconstruction degree")->required();
  rc_cmd->add_option("--rho", rc_rho, "ADMM penalty");
  rc_cmd->add_option("--max-iter", rc_iter, "ADMM iteration budget");
  rc_cmd->add_option("--eps", rc_eps, "relative convergence tolerance");
  rc_cmd->add_option("--oversample", rc_oversample, "gradient grid factor (G = factor*m + 1)");
  rc_cmd->add_option("--out", rc_out, "output coefficient CSV");
  rc_cmd->add_option("--report", rc_report, "solver report JSON path");

  // metrics
  auto* mt_cmd = app.add_subcommand("metrics", "edge and Lp recovery metrics");
  mt_cmd->fallthrough();
  std::string mt_recon, mt_phantom = "paper", mt_meas, mt_out;
  int mt_grid = 1024;
  mt_cmd->add_option("--recon", mt_recon, "reconstruction coefficient CSV")->required();
  mt_cmd->add_option("--phantom", mt_phantom, "'paper' or a phantom JSON path");
  mt_cmd->add_option("--grid", mt_grid, "metric grid points per axis");
  mt_cmd->add_option("--measurements", mt_meas, "measurement CSV for the feasibility check");
  mt_cmd->add_option("--out", mt_out, "metrics JSON path");

  // witness
  auto* wt_cmd = app.add_subcommand("witness", "greedy shift certificate and Riesz witness");
  wt_cmd->fallthrough();
  std::vector<int> wt_group;
  double wt_frac = 0.5, wt_delta = 0.5;
  int wt_k = 0, wt_dim = 1;
  std::string wt_design, wt_out;
  std::int64_t wt_trials = 1000;
  wt_cmd->add_option("--group", wt_group, "cyclic moduli, e.g. --group 1024 or --group 16 16");
  wt_cmd->add_option("--lambda-frac", wt_frac, "canonical prefix fraction used as Lambda");
  wt_cmd->add_option("--band-k", wt_k, "band level for the sampling-bound witness");
  wt_cmd->add_option("--dim", wt_dim, "dimension for the sampling-bound witness");
  wt_cmd->add_option("--design", wt_design, "design file with sampled frequencies");
  wt_cmd->add_option("--delta", wt_delta, "density exponent in (0,1)");
  wt_cmd->add_option("--trials", wt_trials, "random phase draws");
  wt_cmd->add_option("--out", wt_out, "witness report JSON path");

  // experiment
  auto* ex_cmd = app.add_subcommand("experiment", "run a full pipeline from a spec or manifest");
  ex_cmd->fallthrough();
  std::string ex_spec, ex_manifest;
  ex_cmd->add_option("--spec", ex_spec, "experiment spec JSON");
  ex_cmd->add_option("--from-manifest", ex_manifest, "rerun the resolved spec in a manifest");

  // compare
  auto* cp_cmd = app.add_subcommand("compare", "tabulate runs from their manifests");
  cp_cmd->fallthrough();
  std::vector<std::string> cp_manifests;
  std::string cp_csv, cp_json;
  cp_cmd->add_option("manifests", cp_manifests, "manifest JSON paths")->expected(-1);
  cp_cmd->add_option("--out-csv", cp_csv, "comparison CSV path");
  cp_cmd->add_option("--out-json", cp_json, "comparison JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  try {
    fs::create_directories(out_dir);
    if (*ph_cmd) return cmd_phantom(ph_spec, out_dir, ph_render, ph_degree);
    if (*dz_cmd) {
      if (dz_out.empty()) dz_out = join_path(out_dir, "design.txt");
      return cmd_design(dz_scheme, dz_m, dz_n, dz_alpha, dz_k0, dz_kcap, dz_hw, dz_dim, seed,
                        dz_out);
    }
    if (*ms_cmd) {
      if (ms_out.empty()) ms_out = join_path(out_dir, "measurements.csv");
      return cmd_measure(ms_phantom, ms_design, ms_out);
    }
    if (*rc_cmd) {
      if (rc_out.empty()) rc_out = join_path(out_dir, "recon_coeffs.csv");
      return cmd_reconstruct(rc_meas, rc_method, rc_m, rc_rho, rc_iter, rc_eps, rc_oversample,
                             rc_out, rc_report);
    }
    if (*mt_cmd) {
      if (mt_out.empty()) mt_out = join_path(out_dir, "metrics.json");
      return cmd_metrics(mt_recon, mt_phantom, mt_grid, mt_meas, mt_out);
    }
    if (*wt_cmd) {
      if (wt_out.empty()) wt_out = join_path(out_dir, "witness.json");
      return cmd_witness(wt_group, wt_frac, wt_k, wt_dim, wt_design, wt_delta, wt_trials, seed,
                         wt_out);
    }
    if (*ex_cmd)
      return cmd_experiment(ex_spec, ex_manifest, app.count("--out-dir") ? out_dir : "", seed,
                            app.count("--seed") > 0);
    if (*cp_cmd) {
      if (cp_csv.empty()) cp_csv = join_path(out_dir, "compare.csv");
      if (cp_json.empty()) cp_json = join_path(out_dir, "compare.json");
      return cmd_compare(cp_manifests, cp_csv, cp_json);
    }
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 4;
  }
  return 0;
}
