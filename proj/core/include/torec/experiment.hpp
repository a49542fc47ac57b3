#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "torec/edge_metrics.hpp"
#include "torec/reconstruct.hpp"
#include "torec/sampling.hpp"

namespace torec {

inline constexpr const char* kToolVersion = "torec 0.1.0";

struct DesignSpec {
  std::string scheme;  // lowest-block | hierarchical | uniform
  int dim = 2;
  std::uint64_t seed = 0;
  int m = 0;                  // lowest-block
  std::int64_t n_target = 0;  // hierarchical, uniform
  double alpha = 1.0;         // hierarchical
  int k0 = -1;                // hierarchical, < 0 auto
  int k_cap = -1;             // hierarchical, < 0 auto
  int half_width = 0;         // uniform
};

struct ExperimentSpec {
  std::string phantom = "paper";  // builtin name or a phantom JSON path
  DesignSpec design;
  std::string method = "bvmin";  // partial | vdp | bvmin
  int m = 0;                     // reconstruction degree
  AdmmParams solver;             // bvmin only
  int metric_grid = 1024;
  std::string out_dir = ".";
};

ExperimentSpec experiment_spec_from_string(const std::string& json_text);
ExperimentSpec experiment_spec_load(const std::string& path);
std::string experiment_spec_to_string(const ExperimentSpec& spec);

struct RunManifest {
  std::string tool_version;
  ExperimentSpec spec;                            // fully resolved
  std::string phantom_json;                       // resolved phantom, canonical form
  std::map<std::string, std::string> artifacts;   // name -> path relative to out_dir
  std::map<std::string, std::string> hashes;      // name -> fnv1a64 hex of file content
  std::map<std::string, std::string> seeds;       // stream name -> derived seed
  std::map<std::string, double> timings_ms;       // stage -> wall time
  ConvergenceReport solver_report;                // bvmin only; zeros otherwise
  EdgeReport metrics;
};

std::string manifest_to_string(const RunManifest& man);
RunManifest manifest_from_string(const std::string& json_text, const std::string& origin);
RunManifest manifest_load(const std::string& path);

// Runs design -> measure -> reconstruct -> render -> metrics, leaving every
// artifact plus manifest.json under spec.out_dir. Stage failures rethrow with
// the stage name prefixed; artifacts written before the failure stay on disk.
// Solver non-convergence is not an error here; it is recorded in the manifest
// for the caller to act on.
RunManifest run_experiment(const ExperimentSpec& spec);

// Replays the resolved spec stored in a manifest into a fresh out_dir.
RunManifest rerun_from_manifest(const std::string& manifest_path, const std::string& out_dir);

struct CompareResult {
  std::string csv;
  std::string json_text;
};

// Tabulates n / scheme / method / errors / discrepancy / objective / runtime
// across runs of the same phantom and metric grid.
CompareResult compare_runs(const std::vector<std::string>& manifest_paths);

std::string edge_report_to_string(const EdgeReport& rep, const ConvergenceReport* solver);

}  // namespace torec
