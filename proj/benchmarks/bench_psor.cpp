#include <benchmark/benchmark.h>

#include "stokesrec/balayage.hpp"

using namespace stokesrec;

static void BM_projected_sor(benchmark::State& state) {
  const int res = static_cast<int>(state.range(0));
  const double pi = 3.14159265358979323846;
  const GridSpec grid = GridSpec::square(-1.0, 1.0, res);
  const GridField U = potential_U({{0.3, 0.0}}, {pi * 0.09}, grid, 1.0);
  for (auto _ : state) {
    auto sol = solve_obstacle_problem(U);
    benchmark::DoNotOptimize(sol.sweeps);
  }
}
BENCHMARK(BM_projected_sor)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
