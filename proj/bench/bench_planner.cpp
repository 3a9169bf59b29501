// Copyright The ponplan Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference versus OpenMP kernels. On a single core the two should
// run at the same speed; the gap opens with more threads.

#include <benchmark/benchmark.h>

#include "ponplan/planner.hpp"
#include "ponplan/simulator.hpp"
#include "ponplan/sweep.hpp"

namespace {

using namespace ponplan;

// Args: N, W.
void BM_InnerSerial(benchmark::State& state) {
  const auto p = default_params();
  const int n = static_cast<int>(state.range(0));
  const int w = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(inner_feasible_serial(n, w, p));
}

void BM_InnerParallel(benchmark::State& state) {
  const auto p = default_params();
  const int n = static_cast<int>(state.range(0));
  const int w = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(inner_feasible(n, w, p));
}

void BM_SolveSerial(benchmark::State& state) {
  const auto p = default_params();
  SearchOptions o;
  o.parallel = false;
  for (auto _ : state) benchmark::DoNotOptimize(solve(static_cast<int>(state.range(0)), p, o));
}

void BM_SolveParallel(benchmark::State& state) {
  const auto p = default_params();
  for (auto _ : state) benchmark::DoNotOptimize(solve(static_cast<int>(state.range(0)), p));
}

void BM_SweepPanelA(benchmark::State& state) {
  SweepSpec spec = panel_spec("a");
  spec.verify = VerifyMode::kOff;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}

void BM_Simulate(benchmark::State& state) {
  const auto p = default_params();
  const auto plan = *solve(static_cast<int>(state.range(0)), p).plan;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(plan, p, 3));
}

} // namespace

BENCHMARK(BM_InnerSerial)->Args({14, 3})->Args({13, 8})->Args({10, 2})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_InnerParallel)->Args({14, 3})->Args({13, 8})->Args({10, 2})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolveSerial)->DenseRange(2, 8, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveParallel)->DenseRange(2, 8, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepPanelA)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Simulate)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
