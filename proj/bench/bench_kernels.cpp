// Serial reference vs OpenMP kernels. Thread count comes from OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "ccto/colorcoding.hpp"
#include "ccto/instances.hpp"

using namespace ccto;

namespace {

Instance sample(std::size_t n, TimeStep horizon) {
  RandomSpec spec;
  spec.seed = 17;
  spec.n = n;
  spec.horizon = horizon;
  spec.density = 0.05;
  spec.max_cost = 5;
  spec.shape = Shape::general;
  return random_instance(spec);
}

void BM_MinWalkSerial(benchmark::State& state) {
  auto inst = sample(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_min_walk_serial(inst.graph));
}

void BM_MinWalkParallel(benchmark::State& state) {
  auto inst = sample(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_min_walk(inst.graph));
}

void colour_coding(benchmark::State& state, bool parallel) {
  auto inst = sample(state.range(0), 12);
  inst.query.k = 6;
  inst.query.budget = Cost(1);  // forces every trial to run
  ColorCodingOptions opt;
  opt.mode = ColourMode::randomized;
  opt.trials = 64;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(solve_color_coding(inst, opt));
}

void BM_ColorCodingSerial(benchmark::State& state) { colour_coding(state, false); }
void BM_ColorCodingParallel(benchmark::State& state) { colour_coding(state, true); }

}  // namespace

BENCHMARK(BM_MinWalkSerial)->Args({12, 16})->Args({24, 24})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinWalkParallel)->Args({12, 16})->Args({24, 24})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ColorCodingSerial)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ColorCodingParallel)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
