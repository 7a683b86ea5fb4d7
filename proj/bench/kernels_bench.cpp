// Serial reference vs OpenMP for the heavy quadrature kernels.

#include <benchmark/benchmark.h>

#include "harmonics/family.hpp"
#include "harmonics/kernels.hpp"
#include "harmonics/slc.hpp"

using namespace harmonics;

namespace {

Backend backend_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Backend::Serial : Backend::OpenMP;
}

const GaussianWigner& test_member() {
  static const GaussianWigner f = make_gaussian_wigner_family(11, 1, 1.0, 1.0, 2).front();
  return f;
}

void BM_SampleGroupFunction(benchmark::State& state) {
  const GroupGrid grid = make_group_grid(LineGrid(6.0, 16), LineGrid(6.0, 16), 2);
  const GroupFn f = test_member().as_function();
  for (auto _ : state) benchmark::DoNotOptimize(sample_group_function(grid, f, {}, backend_of(state)));
  state.SetItemsProcessed(state.iterations() * grid.size());
}

void BM_Sl2cFourier(benchmark::State& state) {
  const GroupGrid grid = make_group_grid(LineGrid(6.0, 16), LineGrid(6.0, 16), 2);
  const FrequencyGrid freq = make_frequency_grid(LineGrid(4.0, 12), LineGrid(4.0, 12));
  const SampledGroupFunction s = sample_group_function(grid, test_member().as_function());
  for (auto _ : state) benchmark::DoNotOptimize(sl2c_fourier(s, freq, 2, backend_of(state)));
  state.SetItemsProcessed(state.iterations() * freq.size());
}

void BM_LiftedConvolution(benchmark::State& state) {
  const GroupGrid inner = make_group_grid(LineGrid(3.0, 8), LineGrid(3.0, 8), 1);
  const GroupGrid outer = make_group_grid(LineGrid(3.0, 8), LineGrid(3.0, 8), 0);
  const GroupFn f = test_member().as_function();
  const SampledGroupFunction psi = sample_group_function(inner, f);
  for (auto _ : state)
    benchmark::DoNotOptimize(lifted_convolution(Reading::Product, f, psi, outer, backend_of(state)));
  state.SetItemsProcessed(state.iterations() * outer.size());
}

}  // namespace

BENCHMARK(BM_SampleGroupFunction)->ArgName("openmp")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sl2cFourier)->ArgName("openmp")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LiftedConvolution)->ArgName("openmp")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
