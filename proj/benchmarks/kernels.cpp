#include <benchmark/benchmark.h>

#include "ninls/counting.hpp"
#include "ninls/probes.hpp"
#include "ninls/propagator.hpp"
#include "ninls/solver.hpp"

using namespace ninls;

static void BM_TransformRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = FourierGrid::make(DomainSpec::torus(n, n));
  const Field f = random_band_limited(g, {3.0, 3.0}, 7).to_physical();
  for (auto _ : state) {
    Field c = f.to_spectral().to_physical();
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_TransformRoundTrip)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

static void BM_SolverStep(benchmark::State& state) {
  const auto g = FourierGrid::make(DomainSpec::torus(64, 64));
  const Field phi = random_band_limited(g, {4.0, 4.0}, 3);
  SolverConfig cfg;
  cfg.scheme = state.range(0) ? Scheme::picard : Scheme::split_step;
  cfg.dt = 1e-3;
  cfg.t_final = 1e-2;
  cfg.save_every = 10;
  const ModelParams params{1, -0.1, Nonlinearity::defocusing};
  for (auto _ : state) {
    auto tr = solve(phi, params, cfg);
    benchmark::DoNotOptimize(tr);
  }
  state.SetItemsProcessed(state.iterations() * cfg.steps());
}
BENCHMARK(BM_SolverStep)->Arg(0)->Arg(1)->ArgNames({"picard"});

static void BM_LevelSetMeasure(benchmark::State& state) {
  LevelSetQuery q;
  q.alpha = -1.0;
  q.C = 1e4;
  q.K = static_cast<double>(state.range(0));
  q.n0 = 5;
  for (auto _ : state) benchmark::DoNotOptimize(levelset_measure(q));
}
BENCHMARK(BM_LevelSetMeasure)->Arg(1)->Arg(100)->Arg(10000);

static void BM_ShellMeasureA(benchmark::State& state) {
  ShellQuery q;
  q.alpha = -1.0;
  q.tau = -20.0;
  q.xi = 1.0;
  q.n = 2;
  q.K1 = static_cast<double>(state.range(0));
  q.K2 = 2.0 * q.K1;
  for (auto _ : state) benchmark::DoNotOptimize(shell_measure_A(q));
}
BENCHMARK(BM_ShellMeasureA)->Arg(1)->Arg(8)->Arg(64);

static void BM_StrichartzRatio(benchmark::State& state) {
  const auto g = FourierGrid::make(DomainSpec::cylinder_txr(16, 256, 16.0 * kPi));
  const Field phi = random_band_limited(g, {3.0, 2.0}, 5);
  const ModelParams params{1, -1.0, Nonlinearity::focusing};
  TimeQuadrature quad;
  quad.samples_per_unit = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(strichartz_ratio(phi, params, 1.0, quad));
}
BENCHMARK(BM_StrichartzRatio)->Arg(16)->Arg(64);
BENCHMARK_MAIN();
