#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace stokesrec {

// Configuration of one run; shared by the CLI subcommands and the pipeline.
struct RunConfig {
  std::string scenario_path;
  std::string out_dir = "out";
  int m = 13;
  int n_prony = 5;
  int grid_res = 256;        // balayage grid; --grid overrides both
  int theta_grid_res = 512;  // level-set grid
  double noise = 0.0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::vector<double> lambda_levels{0.2, 0.4, 0.6, 0.8, 1.0};
  bool emit_theta_grid = false;

  // m >= 3 and n_prony <= (m-1)/2.
  void validate() const;
};

struct StageResult {
  std::string stage;
  std::vector<std::string> outputs;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> warnings;
  double seconds = 0;
};

// Each stage reads its input artifact from disk and writes its outputs into
// out_dir; reconstruction stages see only the serialized files.
StageResult stage_forward(const RunConfig& cfg);
StageResult stage_moments(const std::string& measurements_path, const std::string& out_dir);
StageResult stage_bergman(const std::string& moments_csv, const RunConfig& cfg);
StageResult stage_prony(const std::string& moments_csv, int n_prony, const std::string& out_dir);
StageResult stage_balayage(const std::string& prony_path, const RunConfig& cfg);

// forward -> moments -> {bergman, prony -> balayage}; writes all artifacts
// and a manifest with the per-stage diagnostics. Returns the stage results.
std::vector<StageResult> run_pipeline(const RunConfig& cfg);

}  // namespace stokesrec
