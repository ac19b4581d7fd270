#include <benchmark/benchmark.h>

#include "invscheme/backlund.hpp"
#include "invscheme/schemes.hpp"
#include "invscheme/symmetry.hpp"

using namespace invscheme;

namespace {
const Ode2ExactParams kCanon{1, 2, 2, 0.01, 1};

void BM_Ode2Step(benchmark::State& state) {
  const auto p = make_params(2, 0.01);
  const Node a = ode2_exact_node(kCanon, 2), b = ode2_exact_node(kCanon, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ode2_step(a, b, p, {}));
}
BENCHMARK(BM_Ode2Step);

void BM_Ode2Solve(benchmark::State& state) {
  const Ode2ExactParams ep{1, 2, 2, 0.01, 12};
  const auto p = make_params(2, 0.01);
  const auto seed = ode2_exact_trajectory(ep, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ode2_solve(seed, state.range(0), p, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ode2Solve)->Arg(10)->Arg(50)->Arg(200);

void BM_WinternitzStep(benchmark::State& state) {
  double a = 1, b = 0.5, c = 1.0 / 3;
  for (auto _ : state) benchmark::DoNotOptimize(winternitz_step(a, b, c, 4.0));
}
BENCHMARK(BM_WinternitzStep);

void BM_SchemeResidual(benchmark::State& state) {
  const auto tr = ode2_exact_trajectory(kCanon, 1, 4);
  const auto s = stencil3_at(tr, 1);
  const auto p = make_params(2, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(ode2_scheme_residual(s, p));
}
BENCHMARK(BM_SchemeResidual);

void BM_DerivedResidual(benchmark::State& state) {
  const auto tr = ode2_exact_trajectory(kCanon, 1, 4);
  const auto s = stencil_at(tr, 1);
  for (auto _ : state) benchmark::DoNotOptimize(derived_scheme_residuals(s));
}
BENCHMARK(BM_DerivedResidual);

void BM_ExactTrajectory(benchmark::State& state) {
  const Ode2ExactParams ep{1, 2, 2, 0.01, 12};
  for (auto _ : state) benchmark::DoNotOptimize(ode2_exact_trajectory(ep, 0, state.range(0) - 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactTrajectory)->Arg(64)->Arg(1024);

void BM_InvarianceTable(benchmark::State& state) {
  const auto xu = ode2_exact_trajectory({1, 2, 2, 0.01, 16}, 0, 9);
  const auto ty = winternitz_exact_trajectory({1, 0, 0, 2, 1, 0.5}, 1, 10);
  const auto p = make_params(2, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(invariance_table(xu, p, ty, 0.3));
}
BENCHMARK(BM_InvarianceTable);
}  // namespace

BENCHMARK_MAIN();
