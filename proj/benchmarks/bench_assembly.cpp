#include <benchmark/benchmark.h>

#include "stokesrec/bem.hpp"

using namespace stokesrec;

namespace {
const KernelConstants kc{3.0, 2.0};

MeshPtr circle(double r, int n, cplx c = {0, 0}) {
  return std::make_shared<BoundaryMesh>(discretize(ParamCurve::circle(c, r), n));
}
}  // namespace

static void BM_self_trace_assembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mesh = circle(1.0, n);
  for (auto _ : state) {
    auto op = assemble_trace(mesh, mesh, kc);
    benchmark::DoNotOptimize(op.mat.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_self_trace_assembly)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Complexity();

static void BM_cross_trace_assembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto src = circle(0.3, n, {0.2, 0.2});
  const auto tgt = circle(1.0, n);
  for (auto _ : state) {
    auto op = assemble_trace(src, tgt, kc);
    benchmark::DoNotOptimize(op.mat.data());
  }
}
BENCHMARK(BM_cross_trace_assembly)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
