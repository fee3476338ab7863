// Randomized cross-validation of the whole pipeline against the exact
// oracle: random connected graphs with general profits (the quota case),
// zero-cost vertices, and partial-cover reductions. The approximation factor
// is only guaranteed on planar unit-profit inputs, so these checks assert
// feasibility, weak duality and internal invariants rather than a ratio.

#include <doctest.h>

#include "nwkmst/generators.hpp"
#include "nwkmst/oracle.hpp"
#include "nwkmst/solver.hpp"
#include "test_helpers.hpp"

using namespace nwkmst;
using testutil::Splitmix;

namespace {

Instance random_connected(Splitmix& rng, int n, bool unit_profits,
                          bool allow_zero_cost) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v < n; ++v) {
    NodeId p = static_cast<NodeId>(rng.next() % v);  // spanning tree
    edges.emplace_back(p, v);
  }
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.next() % 5 == 0 &&
          std::find(edges.begin(), edges.end(), std::make_pair(u, v)) ==
              edges.end())
        edges.emplace_back(u, v);
  std::vector<Weight> cost(n);
  std::vector<Profit> profit(n);
  Profit total = 0;
  for (NodeId v = 0; v < n; ++v) {
    cost[v] = allow_zero_cost && rng.next() % 4 == 0
                  ? 0.0
                  : static_cast<double>(rng.next() % 200) / 100.0 + 0.01;
    profit[v] = unit_profits ? 1 : static_cast<Profit>(rng.next() % 4);
    total += profit[v];
  }
  Profit quota = total > 0 ? 1 + static_cast<Profit>(rng.next() %
                                                     static_cast<std::uint64_t>(total))
                           : 0;
  return testutil::make_instance(n, 0, quota, cost, profit, edges);
}

void cross_validate(const Instance& inst) {
  SolveConfig cfg;
  cfg.epsilon = 0.5;
  cfg.skeleton_mode = SkeletonMode::exhaustive;
  cfg.max_skeleton = 1;
  SolveReport rep = solve(inst, cfg);
  OracleResult oracle = brute_force_quota_tree(inst);
  REQUIRE(rep.feasible == oracle.feasible);
  if (!rep.feasible) return;

  // the output is a real feasible solution
  Solution again = make_solution(inst, rep.best.vertices);
  CHECK(again.profit >= inst.quota);
  CHECK(again.cost == doctest::Approx(rep.best.cost));
  // it cannot beat the optimum, and the dual bound cannot exceed it
  CHECK(rep.best.cost >= oracle.opt_cost - 1e-9);
  CHECK(rep.dual_lower_bound <= oracle.opt_cost + 1e-6);
  // dual feasibility is graph-independent
  CHECK(rep.checks.max_load_violation <= 1e-9);
  CHECK(rep.checks.min_potential >= -1e-9);
  CHECK(rep.checks.merge_bounds_ok);
  CHECK(rep.checks.exact_chain_ok);
}

}  // namespace

TEST_CASE("pipeline vs oracle on random unit-profit graphs") {
  Splitmix rng(70707);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 5 + static_cast<int>(rng.next() % 7);
    cross_validate(random_connected(rng, n, true, false));
  }
}

TEST_CASE("pipeline vs oracle with general profits and zero costs") {
  Splitmix rng(90901);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 5 + static_cast<int>(rng.next() % 7);
    cross_validate(random_connected(rng, n, false, true));
  }
}

TEST_CASE("pipeline vs oracle on partial-cover reductions") {
  Splitmix rng(30303);
  for (int trial = 0; trial < 8; ++trial) {
    int n_elements = 3 + static_cast<int>(rng.next() % 4);
    int n_sets = 2 + static_cast<int>(rng.next() % 3);
    std::vector<CoverSet> sets(n_sets);
    std::vector<char> covered(n_elements, 0);
    for (auto& s : sets) {
      s.cost = static_cast<double>(rng.next() % 300) / 100.0 + 0.1;
      for (int e = 0; e < n_elements; ++e)
        if (rng.next() % 2) {
          s.elements.push_back(e);
          covered[e] = 1;
        }
    }
    Profit coverable = 0;
    for (char c : covered) coverable += c;
    if (coverable == 0) continue;
    Profit target = 1 + static_cast<Profit>(rng.next() %
                                            static_cast<std::uint64_t>(coverable));
    Instance inst = reduce_partial_cover(sets, n_elements, target);
    if (inst.n > 14) continue;
    cross_validate(inst);
  }
}

TEST_CASE("moat invariants with general profits") {
  Splitmix rng(445566);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 6 + static_cast<int>(rng.next() % 5);
    Instance g = random_connected(rng, n, false, true);
    Weight top = g.n * g.max_node_cost() + 1.0;
    for (Weight frac : {0.01, 0.1, 0.4, 1.0}) {
      Weight lambda = frac * top;
      auto run = run_pcst(g, {}, lambda);
      REQUIRE(run.has_value());
      CHECK(run->grow.max_load_violation <= 1e-9);
      CHECK(run->grow.min_potential >= -1e-9);
      // the tree is feasible for the relaxation it came from
      OracleResult opt = brute_force_pcst(g, {}, lambda);
      Weight tree_obj =
          run->tree.cost +
          lambda * static_cast<Weight>(g.total_profit() - run->tree.profit);
      CHECK(tree_obj >= opt.opt_cost - 1e-9);
      CHECK(run->dual_value <= opt.opt_cost + 1e-6);
    }
  }
}
