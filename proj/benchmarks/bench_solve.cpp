#include <benchmark/benchmark.h>

#include "stokesrec/bem.hpp"

using namespace stokesrec;

static void BM_forward_measurements(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Scenario s;
  s.outer = {ParamCurve::circle({0, 0}, 1.0), n};
  s.obstacles.push_back({ParamCurve::radial_cosine({0.2, 0.2}, 0.25, 0.4, 4), n});
  for (auto _ : state) {
    auto ms = forward_measurements(s, 8);
    benchmark::DoNotOptimize(ms.q0.front().normal_part.data());
  }
}
BENCHMARK(BM_forward_measurements)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_block_factorization(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelConstants kc{3.0, 2.0};
  std::vector<MeshPtr> meshes{
      std::make_shared<BoundaryMesh>(discretize(ParamCurve::circle({0, 0}, 1.0), n)),
      std::make_shared<BoundaryMesh>(discretize(ParamCurve::circle({0.2, 0.2}, 0.3), n))};
  for (auto _ : state) {
    BlockSystem system(meshes, kc);
    benchmark::DoNotOptimize(system.rcond());
  }
}
BENCHMARK(BM_block_factorization)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
