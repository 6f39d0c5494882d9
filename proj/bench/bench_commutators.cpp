// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference vs OpenMP kernels. Arg 0 selects Execution::Serial, 1 Parallel.

#include "km2d/harmonics.hpp"
#include "km2d/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace km2d;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_CommutatorOnWindow(benchmark::State& state) {
  const LieAlgebraRep rep = build_so_adjoint(3);
  FockSpace space(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, HalfInt::from_twice(9),
                                      HalfInt::from_twice(9)));
  const auto basis = window_states(space, Window::parse("2,3/2,3"));
  const Operator x = build_current(space, rep, CurrentSpec::torus_L(2, 1));
  const Operator y = build_current(space, rep, CurrentSpec::torus_T(0, -2, 0));
  for (auto _ : state) benchmark::DoNotOptimize(commutator_on_window(x, y, basis, exec_of(state)));
  state.counters["states"] = double(basis.size());
}
BENCHMARK(BM_CommutatorOnWindow)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_StructureTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(StructureTable::build(12, exec_of(state)));
}
BENCHMARK(BM_StructureTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TorusCheck(benchmark::State& state) {
  const LieAlgebraRep rep = build_so_adjoint(3);
  FockSpace space(SectorConfig::torus(Boundary::NS, Boundary::NS, 3, HalfInt::from_twice(7),
                                      HalfInt::from_twice(7)));
  VerifyOptions opt;
  opt.window = Window::parse("1,1,2");
  opt.max_mode = 1;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(check_torus_algebra(space, rep, opt));
}
BENCHMARK(BM_TorusCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
