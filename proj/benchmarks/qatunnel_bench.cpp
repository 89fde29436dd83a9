#include <benchmark/benchmark.h>

#include "qatunnel/problem.hpp"
#include "qatunnel/qmc.hpp"
#include "qatunnel/spectral.hpp"

using namespace qatunnel;

static void BM_MetropolisSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemInstance inst(n, 0.5, 3.0);
  const auto params = QmcParams::for_size(n);
  const SliceModel model(inst, params, 0.4);
  Rng rng = make_rng(1);
  auto lattice = Lattice::random(n, params.trotter_slices, rng);
  for (auto _ : state) benchmark::DoNotOptimize(metropolis_sweep(lattice, model, rng));
  state.SetItemsProcessed(state.iterations() * n * params.trotter_slices);
}
BENCHMARK(BM_MetropolisSweep)->Arg(16)->Arg(116)->Arg(216);

static void BM_GapAt(benchmark::State& state) {
  const ProblemInstance inst(static_cast<int>(state.range(0)), 0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(gap_at(inst, 0.37));
}
BENCHMARK(BM_GapAt)->Arg(100)->Arg(1000)->Arg(5000);

static void BM_MinimizeGap(benchmark::State& state) {
  const ProblemInstance inst(static_cast<int>(state.range(0)), 0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_gap(inst).g_min);
}
BENCHMARK(BM_MinimizeGap)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_GapTable(benchmark::State& state) {
  const ProblemInstance inst(116, 0.5, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(GapTable(inst, 0.01).steps());
}
BENCHMARK(BM_GapTable)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
