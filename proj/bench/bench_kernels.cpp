// Serial reference path vs OpenMP path for the hot kernels. Thread count
// follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include "carpetdim/dim_formulas.hpp"
#include "carpetdim/kernels.hpp"
#include "carpetdim/simulator.hpp"

using namespace carpetdim;

namespace {

const DigitPattern kL(2, {{0, 0}, {1, 0}, {0, 1}});

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_ContentSeriesBuild(benchmark::State& state) {
  EstimatorOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) {
    ContentSeries series(kL, {0.8, 1.6}, SampleSource::iid(7), 1 << 18, opts);
    benchmark::DoNotOptimize(series);
  }
  label(state);
}

void BM_BlockSlope(benchmark::State& state) {
  EstimatorOptions opts;
  opts.exec = exec_of(state);
  const ContentSeries series(kL, {0.8, 1.6}, SampleSource::iid(7), 1 << 20, opts);
  for (auto _ : state) benchmark::DoNotOptimize(series.at(0.99).slope);
  label(state);
}

void BM_BlockSums(benchmark::State& state) {
  std::vector<double> values(1 << 22, 0.5);
  std::vector<std::size_t> offsets;
  for (std::size_t k = 0; k <= 22; ++k) offsets.push_back(k == 0 ? 0 : std::size_t{1} << (k - 1));
  offsets.back() = values.size();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::block_sums(values, offsets, exec_of(state)));
  label(state);
}

void BM_SupOracle(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_cover_dimension_sup(kL, {1.0, 2.5}, 65537, exec_of(state)));
  }
  label(state);
}

}  // namespace

BENCHMARK(BM_ContentSeriesBuild)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockSlope)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockSums)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SupOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
