#include <benchmark/benchmark.h>

#include "nwkmst/generators.hpp"
#include "nwkmst/moat.hpp"

using namespace nwkmst;

static void BM_MoatGrid(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  Instance grid = gen_planar_grid(side, side, CostDist::uniform, 0.1, 2.0,
                                  side * side / 2, 7);
  Weight lambda = 0.3 * grid.max_node_cost();
  for (auto _ : state) {
    auto run = run_pcst(grid, {}, lambda);
    benchmark::DoNotOptimize(run->tree.cost);
  }
}
BENCHMARK(BM_MoatGrid)->Arg(5)->Arg(10)->Arg(20);

static void BM_MoatHandicap(benchmark::State& state) {
  Instance h = handicap_instance({4, 3.0}, {8, 1e-6});
  for (auto _ : state) {
    auto run = run_pcst(h, {}, 0.01);
    benchmark::DoNotOptimize(run->tree.cost);
  }
}
BENCHMARK(BM_MoatHandicap);
