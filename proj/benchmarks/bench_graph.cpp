#include <benchmark/benchmark.h>

#include "nwkmst/generators.hpp"
#include "nwkmst/instance.hpp"

using namespace nwkmst;

static void BM_ShortestPath(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  Instance grid = gen_planar_grid(side, side, CostDist::uniform, 0.1, 2.0,
                                  side * side / 2, 1);
  NodeId far = grid.n - 1;
  for (auto _ : state) {
    auto pr = node_weighted_shortest_path(grid, far, {grid.root});
    benchmark::DoNotOptimize(pr.cost);
  }
}
BENCHMARK(BM_ShortestPath)->Arg(5)->Arg(10)->Arg(20);

static void BM_Neighborhood(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  Instance grid = gen_planar_grid(side, side, CostDist::uniform, 0.1, 2.0,
                                  side * side / 2, 1);
  std::vector<NodeId> half;
  for (NodeId v = 0; v < grid.n / 2; ++v) half.push_back(v);
  for (auto _ : state) {
    auto nb = neighborhood(grid, half);
    benchmark::DoNotOptimize(nb.size());
  }
}
BENCHMARK(BM_Neighborhood)->Arg(10)->Arg(30);
