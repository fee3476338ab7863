#include <doctest.h>

#include <cmath>

#include "nwkmst/generators.hpp"
#include "nwkmst/lagrangian.hpp"
#include "nwkmst/oracle.hpp"
#include "nwkmst/skeleton.hpp"
#include "test_helpers.hpp"

using namespace nwkmst;
using testutil::make_instance;

TEST_CASE("binary search shortcuts at lambda 0 when the root suffices") {
  Instance g = make_instance(3, 0, 1, {0, 1, 2}, {1, 1, 1}, {{0, 1}, {1, 2}});
  SearchResult sr = binary_search_lambda(g, {}, 1, 0.5, 1.0);
  REQUIRE(sr.kind == SearchResult::Kind::exact);
  CHECK(sr.exact->tree.vertices == std::vector<NodeId>{0});
  CHECK(sr.exact->lambda == doctest::Approx(0.0));
}

TEST_CASE("unit path with full quota resolves exactly or brackets") {
  Instance path5 = make_instance(5, 0, 5, {0, 1, 1, 1, 1}, {1, 1, 1, 1, 1},
                                 {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  SearchResult sr = binary_search_lambda(path5, {}, 5, 0.5, 4.0);
  // the top-lambda probe spans the whole path, hitting the quota exactly
  REQUIRE(sr.kind == SearchResult::Kind::exact);
  CHECK(sr.exact->tree.profit == 5);
}

TEST_CASE("bracketing pair satisfies its invariants") {
  testutil::Splitmix rng(808);
  int pairs_seen = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Instance grid = gen_planar_grid(3, 3, CostDist::uniform, 0.2, 2.0,
                                    4 + static_cast<Profit>(rng.next() % 4),
                                    rng.next());
    double eps = 0.5;
    Weight opt_guess = 0.5 * grid.total_cost();
    SearchResult sr = binary_search_lambda(grid, {}, grid.quota, eps, opt_guess);
    if (sr.kind != SearchResult::Kind::pair) continue;
    ++pairs_seen;
    const LagrangePair& p = *sr.pair;
    CHECK(p.t1.tree.profit < grid.quota);
    CHECK(p.t2.tree.profit > grid.quota);
    CHECK(p.alpha1 + p.alpha2 == doctest::Approx(1.0));
    Weight weighted = p.alpha1 * static_cast<Weight>(p.t1.tree.profit) +
                      p.alpha2 * static_cast<Weight>(p.t2.tree.profit);
    CHECK(weighted == doctest::Approx(static_cast<Weight>(grid.quota)));
    CHECK(p.alpha2 ==
          doctest::Approx(static_cast<Weight>(grid.quota - p.t1.tree.profit) /
                          static_cast<Weight>(p.t2.tree.profit - p.t1.tree.profit)));
    CHECK(p.t2.lambda - p.t1.lambda <=
          eps * opt_guess / (3.0 * grid.n) + kTau);
    // probe-count bound
    Weight lambda_hi = grid.n * grid.max_node_cost();
    int bound = static_cast<int>(std::ceil(
                    std::log2(lambda_hi * 3.0 * grid.n / (eps * opt_guess)))) +
                1;
    CHECK(sr.probes <= bound);
  }
  CHECK(pairs_seen > 0);  // the corpus must exercise the pair path
}

TEST_CASE("infeasible when the quota is unreachable in the pruned graph") {
  // two-component graph: the far side carries the profit but is disconnected
  Instance split = make_instance(4, 0, 3, {0, 1, 1, 1}, {1, 1, 1, 1},
                                 {{0, 1}, {2, 3}});
  SearchResult sr = binary_search_lambda(split, {}, 3, 0.5, 1.0);
  CHECK(sr.kind == SearchResult::Kind::infeasible);
}

TEST_CASE("interval-width stopping rule") {
  // n=10, eps=0.1, opt=30 -> final width <= 0.1
  Instance grid = gen_planar_grid(2, 5, CostDist::uniform, 0.5, 2.0, 7, 4);
  SearchResult sr = binary_search_lambda(grid, {}, 7, 0.1, 30.0);
  if (sr.kind == SearchResult::Kind::pair)
    CHECK(sr.pair->t2.lambda - sr.pair->t1.lambda <= 0.1 + kTau);
}

TEST_CASE("convex combination bound with the correct guess on oracle instances") {
  testutil::Splitmix rng(2718);
  int pairs_seen = 0;
  for (int trial = 0; trial < 6; ++trial) {
    Instance grid = gen_planar_grid(3, 4, CostDist::uniform, 0.2, 1.8,
                                    5 + static_cast<Profit>(rng.next() % 5),
                                    rng.next());
    OracleResult oracle = brute_force_quota_tree(grid);
    REQUIRE(oracle.feasible);
    for (double eps : {0.25, 0.5, 1.0}) {
      std::vector<NodeId> w =
          decompose_skeleton(grid, oracle.opt_solution, eps, oracle.opt_cost);
      SkeletonGuess guess{w, oracle.opt_cost, eps};
      auto pruned = prune_instance(grid, guess);
      REQUIRE(pruned.has_value());
      SearchResult sr = binary_search_lambda(pruned->inst, pruned->skeleton,
                                             grid.quota, eps, oracle.opt_cost);
      REQUIRE(sr.kind != SearchResult::Kind::infeasible);
      if (sr.kind != SearchResult::Kind::pair) continue;
      ++pairs_seen;
      ConvexReport rep = convex_bound_check(pruned->inst, *sr.pair, oracle.opt_cost);
      CHECK(rep.holds);
      CHECK(rep.intermediate_holds);
      // weak duality against the true optimum
      CHECK(sr.best_dual_bound <= oracle.opt_cost + 1e-6);
    }
  }
  CHECK(pairs_seen > 0);
}

TEST_CASE("balance_bound formula") {
  CHECK(balance_bound(1.0 - 1e-12, 0.0, 3.0, 0.0) == doctest::Approx(3.0));
  CHECK(balance_bound(0.5, 3.0, 3.0, 0.0) == doctest::Approx(3.0));
  CHECK(balance_bound(0.5, 2.0, 3.0, 0.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(balance_bound(0.0, 1.0, 3.0, 0.0), ValidationError);
}

TEST_CASE("balance_bound grid sweep peaks at 4/3 r") {
  for (double delta : {0.0, 0.01}) {
    Weight best = 0;
    for (double alpha = 0.001; alpha < 1.0; alpha += 0.001) {
      for (double beta = 0.0; beta <= 3.0 + 1e-12; beta += 0.01) {
        best = std::max(best, balance_bound(alpha, beta, 3.0, delta));
      }
    }
    CHECK(best >= 4.0 - 1e-3);
    CHECK(best <= 4.0 + 3.0 * std::sqrt(delta) + 1e-3);
  }
}
