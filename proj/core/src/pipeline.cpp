#include "stokesrec/pipeline.hpp"

#include <chrono>
#include <filesystem>

#include "json.hpp"
#include "stokesrec/errors.hpp"
#include "stokesrec/io.hpp"

namespace stokesrec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Timer {
public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw invalid_input_error("cannot create output directory '" + dir + "'");
}

double omega_radius_of(const MomentTable& table) {
  const auto it = table.diagnostics.find("omega_radius");
  return it != table.diagnostics.end() && it->second > 0 ? it->second : 1.0;
}

}  // namespace

void RunConfig::validate() const {
  if (m < 3) throw validation_error("m must be >= 3");
  if (n_prony < 1) throw validation_error("n_prony must be >= 1");
  if (2 * n_prony > m - 1)
    throw validation_error("n_prony must satisfy n <= (m-1)/2, got n=" +
                           std::to_string(n_prony) + ", m=" + std::to_string(m));
  if (grid_res < 16 || theta_grid_res < 16)
    throw validation_error("grid resolution must be >= 16");
  if (noise < 0) throw validation_error("noise level must be >= 0");
  if (!(tol > 0)) throw validation_error("tolerance must be positive");
  for (double l : lambda_levels)
    if (!(l > 0)) throw validation_error("lambda levels must be positive");
}

StageResult stage_forward(const RunConfig& cfg) {
  Timer timer;
  ensure_dir(cfg.out_dir);
  const Scenario scenario = parse_scenario(cfg.scenario_path);
  MeasurementSet ms = forward_measurements(scenario, cfg.m);
  if (cfg.noise > 0) ms = apply_noise(ms, cfg.noise, cfg.seed);
  const std::string path = join(cfg.out_dir, "measurements.json");
  save_measurements(ms, path);

  StageResult r;
  r.stage = "forward";
  r.outputs = {path};
  r.diagnostics["m"] = ms.m;
  r.diagnostics["fields"] = ms.count();
  r.diagnostics["kappa0"] = ms.kc.kappa0;
  r.diagnostics["kappa1"] = ms.kc.kappa1;
  r.diagnostics["noise"] = ms.noise_level;
  r.seconds = timer.seconds();
  return r;
}

StageResult stage_moments(const std::string& measurements_path, const std::string& out_dir) {
  Timer timer;
  ensure_dir(out_dir);
  const MeasurementSet ms = load_measurements(measurements_path);
  const MomentTable table = moment_matrix(ms);
  const std::string csv = join(out_dir, "moments.csv");
  save_moments(table, csv);

  StageResult r;
  r.stage = "moments";
  r.outputs = {csv, moments_header_path(csv)};
  r.diagnostics = table.diagnostics;
  r.diagnostics["tau0"] = table.total_area();
  r.seconds = timer.seconds();
  return r;
}

StageResult stage_bergman(const std::string& moments_csv, const RunConfig& cfg) {
  Timer timer;
  ensure_dir(cfg.out_dir);
  const MomentTable table = load_moments(moments_csv);
  const std::string path = join(cfg.out_dir, "theta_contours.csv");

  StageResult r;
  r.stage = "bergman";
  r.outputs = {path};

  if (!(table.vals.norm() > 0)) {
    // no obstacle signal: nothing to contour
    save_contours({}, path);
    r.warnings.push_back("zero moment matrix; no level sets emitted");
    r.diagnostics["contours"] = 0;
    r.seconds = timer.seconds();
    return r;
  }

  const BergmanBasis basis = bergman_coeffs(table);
  const double R = omega_radius_of(table);
  const GridSpec grid = GridSpec::square(-R, R, cfg.theta_grid_res);
  const auto contours = theta_contours(basis, grid, cfg.lambda_levels);
  save_contours(contours, path);

  if (cfg.emit_theta_grid) {
    GridField field;
    field.spec = grid;
    field.values = theta_grid(basis, grid);
    const std::string gpath = join(cfg.out_dir, "theta_grid.csv");
    save_grid_csv(field, gpath);
    r.outputs.push_back(gpath);
  }
  r.diagnostics["degree"] = basis.degree;
  r.diagnostics["clamp_magnitude"] = basis.clamp_magnitude;
  r.diagnostics["contours"] = static_cast<double>(contours.size());
  r.warnings = basis.warnings;
  r.seconds = timer.seconds();
  return r;
}

StageResult stage_prony(const std::string& moments_csv, int n_prony, const std::string& out_dir) {
  Timer timer;
  ensure_dir(out_dir);
  const MomentTable table = load_moments(moments_csv);
  if (2 * n_prony > table.cols())
    throw validation_error("not enough harmonic moments for n = " + std::to_string(n_prony));
  PronySolution sol = prony_solve(table.harmonic(2 * n_prony), n_prony);
  const std::string path = join(out_dir, "prony.json");
  save_prony(sol, path);

  StageResult r;
  r.stage = "prony";
  r.outputs = {path};
  r.diagnostics["requested_order"] = sol.requested_order;
  r.diagnostics["effective_order"] = sol.effective_order;
  r.diagnostics["pencil_cond"] = sol.pencil_cond;
  r.diagnostics["vandermonde_residual"] = sol.vandermonde_residual;
  r.diagnostics["max_imag_weight"] = sol.max_imag_weight;
  r.warnings = sol.warnings;
  r.seconds = timer.seconds();
  return r;
}

StageResult stage_balayage(const std::string& prony_path, const RunConfig& cfg) {
  Timer timer;
  ensure_dir(cfg.out_dir);
  const PronySolution sol = load_prony(prony_path);

  StageResult r;
  r.stage = "balayage";
  const GridSpec grid = GridSpec::square(-1.0, 1.0, cfg.grid_res);

  std::vector<std::string> warnings;
  const GridField U = potential_U(sol, grid, 1.0, &warnings);
  SorParams params;
  params.tol = cfg.tol;
  const ObstacleSolution obstacle = solve_obstacle_problem(U, params);

  std::vector<cplx> nodes(sol.nodes.data(), sol.nodes.data() + sol.nodes.size());
  const IndicatorResult ind = indicator(obstacle.V, U, nodes);
  if (ind.touches_gamma0)
    warnings.push_back("indicator reaches within 2 cells of the outer boundary");

  const std::string pgm = join(cfg.out_dir, "indicator.pgm");
  const std::string csv = join(cfg.out_dir, "indicator_boundary.csv");
  save_pgm(ind.indicator, pgm);
  save_contours(ind.boundary, csv);

  r.outputs = {pgm, csv};
  r.diagnostics["sweeps"] = obstacle.sweeps;
  r.diagnostics["residual"] = obstacle.residual;
  r.diagnostics["area"] = ind.area;
  r.diagnostics["centroid_x"] = ind.centroid.real();
  r.diagnostics["centroid_y"] = ind.centroid.imag();
  r.warnings = std::move(warnings);
  r.seconds = timer.seconds();
  return r;
}

std::vector<StageResult> run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  ensure_dir(cfg.out_dir);

  // On failure the stage name is surfaced and artifacts written so far stay.
  auto guarded = [](const char* stage, auto&& fn) {
    try {
      return fn();
    } catch (const error& e) {
      throw error(e.code(), std::string(stage) + ": " + e.what());
    }
  };

  std::vector<StageResult> results;
  results.push_back(guarded("forward", [&] { return stage_forward(cfg); }));
  results.push_back(guarded("moments", [&] {
    return stage_moments(join(cfg.out_dir, "measurements.json"), cfg.out_dir);
  }));
  const std::string moments_csv = join(cfg.out_dir, "moments.csv");
  results.push_back(guarded("bergman", [&] { return stage_bergman(moments_csv, cfg); }));
  results.push_back(
      guarded("prony", [&] { return stage_prony(moments_csv, cfg.n_prony, cfg.out_dir); }));
  results.push_back(
      guarded("balayage", [&] { return stage_balayage(join(cfg.out_dir, "prony.json"), cfg); }));

  json manifest;
  manifest["config"] = {{"scenario", cfg.scenario_path},
                        {"out", cfg.out_dir},
                        {"m", cfg.m},
                        {"n_prony", cfg.n_prony},
                        {"grid", cfg.grid_res},
                        {"theta_grid", cfg.theta_grid_res},
                        {"noise", cfg.noise},
                        {"seed", cfg.seed},
                        {"tol", cfg.tol},
                        {"lambda_levels", cfg.lambda_levels}};
  json stages = json::object();
  for (const auto& r : results) {
    json s;
    s["outputs"] = r.outputs;
    s["diagnostics"] = r.diagnostics;
    s["warnings"] = r.warnings;
    s["seconds"] = r.seconds;
    stages[r.stage] = s;
  }
  manifest["stages"] = stages;
  write_text_file(join(cfg.out_dir, "manifest.json"), manifest.dump(2) + "\n");
  return results;
}

}  // namespace stokesrec
