// Parallel kernels against their serial twins, plus the FFT s_min path
// against the dense SVD oracle it replaces.

#include <benchmark/benchmark.h>

#include "rootsim/circulant.hpp"
#include "rootsim/lcd.hpp"
#include "rootsim/montecarlo.hpp"
#include "rootsim/polynomial.hpp"

using namespace rootsim;

namespace {

ExperimentConfig tail_config(int threads) {
  ExperimentConfig c;
  c.experiment = Experiment::SnTailEps;
  c.n_list = {256};
  c.param_grid = {0.1, 0.2, 0.4, 0.8};
  c.trials = 2000;
  c.threads = threads;
  return c;
}

void BM_ExperimentSerial(benchmark::State& state) {
  const auto cfg = tail_config(1);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(cfg));
}
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);

void BM_ExperimentParallel(benchmark::State& state) {
  const auto cfg = tail_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
}
BENCHMARK(BM_ExperimentParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

std::vector<cplx> row(std::size_t n) {
  std::vector<cplx> r(n);
  draw_coeffs(CoeffDistribution::rademacher(), WeightFn::constant(), 7, r);
  return r;
}

void BM_SminFft(benchmark::State& state) {
  const Circulant c(row(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(extreme_singular_values(c).s_min);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SminFft)->RangeMultiplier(2)->Range(8, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_SminDense(benchmark::State& state) {
  const auto m = densify(Circulant(row(static_cast<std::size_t>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(dense_svd_oracle(m).back());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SminDense)->RangeMultiplier(2)->Range(8, 64)->Complexity(benchmark::oNCubed);

void BM_LcdSerial(benchmark::State& state) {
  const VkMatrix v(61, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lcd_search_serial(v, 2.0, 0.5, 6.1, 256, 256));
}
BENCHMARK(BM_LcdSerial)->Unit(benchmark::kMillisecond);

void BM_LcdParallel(benchmark::State& state) {
  const VkMatrix v(61, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lcd_search(v, 2.0, 0.5, 6.1, 256, 256));
}
BENCHMARK(BM_LcdParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
