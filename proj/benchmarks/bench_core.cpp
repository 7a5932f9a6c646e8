#include <benchmark/benchmark.h>

#include "mch/besov.hpp"
#include "mch/diagnostics.hpp"
#include "mch/initial_data.hpp"

namespace {

mch::Field test_field(int n) {
  auto grid = mch::Grid::make(20.0 * M_PI, n);
  return mch::gaussian(grid, 0.5, 1.0, 0.0);
}

void BM_helmholtz_inv(benchmark::State& state) {
  const mch::Field f = test_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mch::helmholtz_inv(f));
}
BENCHMARK(BM_helmholtz_inv)->Arg(1024)->Arg(4096);

void BM_rhs_nonlocal(benchmark::State& state) {
  const mch::Field f = test_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mch::rhs_nonlocal(f, 0.0));
}
BENCHMARK(BM_rhs_nonlocal)->Arg(1024)->Arg(4096);

void BM_step_rk4(benchmark::State& state) {
  const mch::SolverState s = mch::make_state(test_field(static_cast<int>(state.range(0))), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(mch::step_rk4(s, 1e-3));
}
BENCHMARK(BM_step_rk4)->Arg(1024)->Arg(4096);

void BM_besov_norm(benchmark::State& state) {
  const mch::Field f = test_field(static_cast<int>(state.range(0)));
  const mch::DyadicSpec spec = mch::build_cutoffs(f.grid);
  for (auto _ : state)
    benchmark::DoNotOptimize(mch::besov_norm(f, 1.5, 2.0, 1.0, spec));
}
BENCHMARK(BM_besov_norm)->Arg(1024)->Arg(4096);

void BM_green_convolve(benchmark::State& state) {
  const mch::Field f = test_field(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(mch::green_convolve_quadrature(f, 0));
}
BENCHMARK(BM_green_convolve)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
