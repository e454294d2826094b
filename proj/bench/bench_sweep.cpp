#include <benchmark/benchmark.h>

#include "transpec/roots.hpp"
#include "transpec/spectrum_numeric.hpp"

using namespace transpec;

namespace {

const StokesWave& wave() {
  static const StokesWave w = make_wave(make_model("rmkp", 1, 1), 2.0, 0.01);
  return w;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto rho = roots::lin_space(1.3, 1.6, 4);
  const auto xi = roots::lin_space(0.3, 0.5, 4);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(wave(), rho, xi, N));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto rho = roots::lin_space(1.3, 1.6, 4);
  const auto xi = roots::lin_space(0.3, 0.5, 4);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(wave(), rho, xi, N));
  state.counters["threads"] = resolve_threads(0);
}

void BM_Dense(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const OperatorMatrix A = assemble_operator(wave(), 1.5, 0.5, N);
  for (auto _ : state) benchmark::DoNotOptimize(eig_dense(A));
}

void BM_ShiftInvert(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(shift_invert_eigs(wave(), 1.5, 0.5, N, cplx(0.0, 0.001), 4));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Dense)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShiftInvert)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
