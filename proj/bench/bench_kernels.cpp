#include <benchmark/benchmark.h>

#include "wl/core.hpp"
#include "wl/graphs.hpp"
#include "wl/refine.hpp"

namespace {

std::vector<wl::Color> input(int side) { return wl::to_digraph(wl::graphs::rook(side)).colors(); }

void BM_PairRoundSerial(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  auto c = input(side);
  for (auto _ : state) benchmark::DoNotOptimize(wl::kernels::pair_round_serial(side * side, c));
  state.SetComplexityN(side * side);
}

void BM_PairRoundParallel(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  auto c = input(side);
  for (auto _ : state) benchmark::DoNotOptimize(wl::kernels::pair_round_parallel(side * side, c));
  state.SetComplexityN(side * side);
}

}  // namespace

BENCHMARK(BM_PairRoundSerial)->DenseRange(4, 10, 2)->Complexity();
BENCHMARK(BM_PairRoundParallel)->DenseRange(4, 10, 2)->Complexity();

BENCHMARK_MAIN();
