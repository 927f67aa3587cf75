#include <benchmark/benchmark.h>

#include "stokesrec/bergman.hpp"

using namespace stokesrec;

static void BM_theta_grid(benchmark::State& state) {
  const int res = static_cast<int>(state.range(0));
  const auto table = oracle_moments({ParamCurve::circle({0.2, 0.2}, 0.3)}, 11, 11, 512);
  const auto basis = bergman_coeffs(table);
  const GridSpec grid = GridSpec::square(-1.0, 1.0, res);
  for (auto _ : state) {
    auto vals = theta_grid(basis, grid);
    benchmark::DoNotOptimize(vals.data());
  }
}
BENCHMARK(BM_theta_grid)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_marching_squares(benchmark::State& state) {
  const auto table = oracle_moments({ParamCurve::circle({0.2, 0.2}, 0.3)}, 11, 11, 512);
  const auto basis = bergman_coeffs(table);
  const GridSpec grid = GridSpec::square(-1.0, 1.0, 256);
  const auto vals = theta_grid(basis, grid);
  for (auto _ : state) {
    auto cs = marching_squares(grid, vals, 0.2 / 11);
    benchmark::DoNotOptimize(cs.data());
  }
}
BENCHMARK(BM_marching_squares)->Unit(benchmark::kMillisecond);
