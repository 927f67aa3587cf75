// Command-line driver: forward simulation, moment extraction and the two
// reconstruction backends, each runnable on its own from serialized artifacts.
//
// Exit codes: 0 success, 2 validation/input, 3 solver, 4 convergence.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stokesrec/errors.hpp"
#include "stokesrec/pipeline.hpp"

namespace {

void print_result(const stokesrec::StageResult& r) {
  std::printf("[%s] done in %.3f s\n", r.stage.c_str(), r.seconds);
  for (const auto& o : r.outputs) std::printf("  wrote %s\n", o.c_str());
  for (const auto& [key, value] : r.diagnostics) std::printf("  %s = %.6g\n", key.c_str(), value);
  for (const auto& w : r.warnings) std::printf("  warning: %s\n", w.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stokes obstacle reconstruction via boundary measurements and moments"};
  app.require_subcommand(1);

  stokesrec::RunConfig cfg;
  std::string measurements_path, moments_csv, prony_path;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  };

  CLI::App* forward = app.add_subcommand("forward", "simulate boundary measurements");
  forward->add_option("--scenario", cfg.scenario_path, "scenario file")->required();
  forward->add_option("--m", cfg.m, "measurement order (2m-1 fields)")->capture_default_str();
  forward->add_option("--noise", cfg.noise, "relative measurement noise")->capture_default_str();
  forward->add_option("--seed", cfg.seed, "noise seed")->capture_default_str();
  add_out(forward);

  CLI::App* moments = app.add_subcommand("moments", "extract the complex moment matrix");
  moments->add_option("--measurements", measurements_path, "measurements.json")->required();
  add_out(moments);

  CLI::App* bergman = app.add_subcommand("bergman", "Bergman-polynomial level-set contours");
  bergman->add_option("--moments", moments_csv, "moments.csv")->required();
  bergman->add_option("--grid", cfg.theta_grid_res, "level-set grid resolution")
      ->capture_default_str();
  bergman->add_option("--lambda-levels", cfg.lambda_levels, "contour levels lambda (Theta = lambda/n)")
      ->delimiter(',');
  bergman->add_flag("--emit-theta-grid", cfg.emit_theta_grid, "also write theta_grid.csv");
  add_out(bergman);

  CLI::App* prony = app.add_subcommand("prony", "Prony nodes/weights from harmonic moments");
  prony->add_option("--moments", moments_csv, "moments.csv")->required();
  prony->add_option("--n-prony", cfg.n_prony, "number of point masses")->capture_default_str();
  add_out(prony);

  CLI::App* balayage = app.add_subcommand("balayage", "partial balayage of the Prony masses");
  balayage->add_option("--prony", prony_path, "prony.json")->required();
  balayage->add_option("--grid", cfg.grid_res, "grid resolution")->capture_default_str();
  balayage->add_option("--tol", cfg.tol, "SOR tolerance")->capture_default_str();
  add_out(balayage);

  CLI::App* pipeline = app.add_subcommand("pipeline", "forward + moments + both reconstructions");
  pipeline->add_option("--scenario", cfg.scenario_path, "scenario file")->required();
  pipeline->add_option("--m", cfg.m, "measurement order")->capture_default_str();
  pipeline->add_option("--n-prony", cfg.n_prony, "number of point masses")->capture_default_str();
  pipeline
      ->add_option_function<int>(
          "--grid", [&cfg](int g) { cfg.grid_res = cfg.theta_grid_res = g; },
          "grid resolution for both the level-set and balayage grids")
      ->check(CLI::PositiveNumber);
  pipeline->add_option("--noise", cfg.noise, "relative measurement noise")->capture_default_str();
  pipeline->add_option("--seed", cfg.seed, "noise seed")->capture_default_str();
  pipeline->add_option("--tol", cfg.tol, "SOR tolerance")->capture_default_str();
  pipeline->add_option("--lambda-levels", cfg.lambda_levels, "contour levels")->delimiter(',');
  pipeline->add_flag("--emit-theta-grid", cfg.emit_theta_grid, "also write theta_grid.csv");
  add_out(pipeline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (forward->parsed()) {
      print_result(stokesrec::stage_forward(cfg));
    } else if (moments->parsed()) {
      print_result(stokesrec::stage_moments(measurements_path, cfg.out_dir));
    } else if (bergman->parsed()) {
      print_result(stokesrec::stage_bergman(moments_csv, cfg));
    } else if (prony->parsed()) {
      print_result(stokesrec::stage_prony(moments_csv, cfg.n_prony, cfg.out_dir));
    } else if (balayage->parsed()) {
      print_result(stokesrec::stage_balayage(prony_path, cfg));
    } else if (pipeline->parsed()) {
      for (const auto& r : stokesrec::run_pipeline(cfg)) print_result(r);
    }
  } catch (const stokesrec::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
