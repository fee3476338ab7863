#include <benchmark/benchmark.h>

#include "nwkmst/generators.hpp"
#include "nwkmst/oracle.hpp"
#include "nwkmst/solver.hpp"

using namespace nwkmst;

static void BM_SolveHeuristic(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  Instance grid = gen_planar_grid(side, side, CostDist::uniform, 0.1, 2.0,
                                  side * side / 2, 3);
  SolveConfig cfg;
  for (auto _ : state) {
    SolveReport rep = solve(grid, cfg);
    benchmark::DoNotOptimize(rep.best.cost);
  }
}
BENCHMARK(BM_SolveHeuristic)->Arg(4)->Arg(6);

static void BM_SolveExhaustive3x3(benchmark::State& state) {
  Instance grid = gen_planar_grid(3, 3, CostDist::uniform, 0.1, 2.0, 5, 3);
  SolveConfig cfg;
  cfg.skeleton_mode = SkeletonMode::exhaustive;
  for (auto _ : state) {
    SolveReport rep = solve(grid, cfg);
    benchmark::DoNotOptimize(rep.best.cost);
  }
}
BENCHMARK(BM_SolveExhaustive3x3);

static void BM_Oracle(benchmark::State& state) {
  int cols = static_cast<int>(state.range(0));
  Instance grid = gen_planar_grid(3, cols, CostDist::uniform, 0.1, 2.0,
                                  3 * cols / 2, 3);
  for (auto _ : state) {
    OracleResult res = brute_force_quota_tree(grid);
    benchmark::DoNotOptimize(res.opt_cost);
  }
}
BENCHMARK(BM_Oracle)->Arg(3)->Arg(4);
