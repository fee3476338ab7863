#include <doctest.h>

#include <cmath>

#include "nwkmst/generators.hpp"
#include "nwkmst/oracle.hpp"
#include "nwkmst/skeleton.hpp"
#include "test_helpers.hpp"

using namespace nwkmst;
using testutil::make_instance;
using testutil::path3;

TEST_CASE("is_eps_distant") {
  Instance path = path3(0, 5, 1);
  CHECK(is_eps_distant(path, 0, {0, 2}, 0.0));       // membership is free
  CHECK_FALSE(is_eps_distant(path, 2, {0}, 5.0));    // cost 6 > 5
  CHECK(is_eps_distant(path, 2, {0}, 6.0));
  Instance split = make_instance(3, 0, 1, {0, 1, 1}, {1, 1, 1}, {{0, 1}});
  CHECK_FALSE(is_eps_distant(split, 2, {0}, 100.0));  // unreachable
}

TEST_CASE("prune_instance keeps the budgeted ball") {
  SUBCASE("W = V prunes nothing") {
    Instance path = path3(0, 1, 2);
    SkeletonGuess guess{{0, 1, 2}, 1.0, 1.0};
    auto pruned = prune_instance(path, guess);
    REQUIRE(pruned.has_value());
    CHECK(pruned->inst.n == 3);
    CHECK(pruned->to_original == std::vector<NodeId>{0, 1, 2});
  }
  SUBCASE("expensive star leaf is dropped") {
    Instance star = make_instance(3, 0, 1, {0, 1, 100}, {1, 1, 1},
                                  {{0, 1}, {0, 2}});
    SkeletonGuess guess{{}, 10.0, 0.5};  // budget 5
    auto pruned = prune_instance(star, guess);
    REQUIRE(pruned.has_value());
    CHECK(pruned->inst.n == 2);
    CHECK(pruned->to_original == std::vector<NodeId>{0, 1});
  }
  SUBCASE("a skeleton separated from the root rejects the guess") {
    // r -(expensive bridge)- w: pruning removes the bridge, stranding w
    Instance bridge = make_instance(3, 0, 1, {0, 50, 1}, {1, 1, 1},
                                    {{0, 1}, {1, 2}});
    SkeletonGuess guess{{2}, 10.0, 0.5};  // budget 5 < bridge cost
    CHECK_FALSE(prune_instance(bridge, guess).has_value());
  }
  SUBCASE("Mestre instance with one O-node anchor retains everything") {
    Instance mes = mestre_instance({2, 3.0});
    MestreLayout lay = mestre_layout({2, 3.0}, false, 0);
    SkeletonGuess guess{{lay.o_sets[0]}, 2.0, 1.0};  // budget 2 >= all distances
    auto pruned = prune_instance(mes, guess);
    REQUIRE(pruned.has_value());
    CHECK(pruned->inst.n == mes.n);
  }
  SUBCASE("pruning is idempotent") {
    Instance grid = gen_planar_grid(3, 3, CostDist::uniform, 0.2, 2.0, 5, 17);
    SkeletonGuess guess{{4}, 3.0, 0.5};
    auto once = prune_instance(grid, guess);
    REQUIRE(once.has_value());
    SkeletonGuess again{once->skeleton, 3.0, 0.5};
    auto twice = prune_instance(once->inst, again);
    REQUIRE(twice.has_value());
    CHECK(twice->inst.n == once->inst.n);
    CHECK(testutil::save_instance_edges_equal(once->inst, twice->inst));
  }
}

TEST_CASE("opt ladder covers the cost range") {
  Instance grid = gen_planar_grid(3, 3, CostDist::uniform, 0.3, 1.5, 5, 3);
  auto ladder = opt_guess_ladder(grid, 0.5);
  REQUIRE_FALSE(ladder.empty());
  CHECK(ladder.back() >= grid.total_cost() - kTau);
  for (std::size_t i = 1; i + 1 < ladder.size(); ++i)
    CHECK(ladder[i] == doctest::Approx(ladder[i - 1] * 1.5));
  // the last rung is clamped to the total, never beyond one factor of it
  CHECK(ladder.back() <= std::max(grid.total_cost(), ladder.front()) + kTau);
}

TEST_CASE("enumerate_guesses") {
  Instance path4 = make_instance(4, 0, 2, {0, 1, 1, 1}, {1, 1, 1, 1},
                                 {{0, 1}, {1, 2}, {2, 3}});
  auto ladder = opt_guess_ladder(path4, 0.5);

  SUBCASE("max_skeleton 0 yields only the empty skeleton") {
    auto gs = enumerate_guesses(path4, 0.5, 0);
    CHECK(gs.size() == ladder.size());
    for (const auto& g : gs) CHECK(g.skeleton.empty());
  }
  SUBCASE("n=4 with cap 1 gives 5 skeleton sets times the ladder") {
    auto gs = enumerate_guesses(path4, 0.5, 1);
    CHECK(gs.size() == 5 * ladder.size());
  }
  SUBCASE("epsilon = 1 caps the skeleton size at 1") {
    auto gs = enumerate_guesses(path4, 1.0, 5);
    for (const auto& g : gs) CHECK(g.skeleton.size() <= 1);
  }
}

TEST_CASE("decompose_skeleton") {
  SUBCASE("root alone needs no skeleton") {
    Instance path = path3(0, 1, 2);
    Solution tree = make_solution(path, {0});
    CHECK(decompose_skeleton(path, tree, 0.5, 1.0).empty());
  }
  SUBCASE("ten-node unit path with eps=0.3, opt=10") {
    // bottom-up cuts at the two subtree heads where the running weight
    // passes 3; hand simulation gives W = {v2, v6} and both checks pass
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId v = 0; v + 1 < 10; ++v) edges.emplace_back(v, v + 1);
    Instance path10 = make_instance(10, 0, 10, std::vector<Weight>(10, 1.0),
                                    std::vector<Profit>(10, 1), edges);
    Solution tree = make_solution(path10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto w = decompose_skeleton(path10, tree, 0.3, 10.0);
    CHECK(w.size() <= 4);  // ceil(1/0.3)
    CHECK(w == std::vector<NodeId>{2, 6});
    CHECK(tree_eps_distance_ok(path10, tree, w, 3.0));
  }
  SUBCASE("eps = 1 with opt = tree cost never needs more than one pick") {
    Instance grid = gen_planar_grid(3, 3, CostDist::uniform, 0.2, 2.0, 5, 5);
    OracleResult res = brute_force_quota_tree(grid);
    auto w = decompose_skeleton(grid, res.opt_solution, 1.0, res.opt_solution.cost);
    CHECK(w.size() <= 1);
    CHECK(tree_eps_distance_ok(grid, res.opt_solution, w, res.opt_solution.cost));
  }
}

TEST_CASE("some guess brackets OPT and its skeleton survives pruning") {
  testutil::Splitmix rng(606);
  for (int trial = 0; trial < 5; ++trial) {
    Instance grid = gen_planar_grid(3, 3, CostDist::uniform, 0.2, 2.0,
                                    4 + static_cast<Profit>(rng.next() % 4),
                                    rng.next());
    OracleResult oracle = brute_force_quota_tree(grid);
    REQUIRE(oracle.feasible);
    if (oracle.opt_cost <= kTau) continue;
    double eps = 0.5;
    auto ladder = opt_guess_ladder(grid, eps);
    auto rung = std::find_if(ladder.begin(), ladder.end(), [&](Weight g) {
      return g >= oracle.opt_cost - kTau &&
             g <= (1.0 + eps) * oracle.opt_cost + kTau;
    });
    REQUIRE(rung != ladder.end());
    std::vector<NodeId> w =
        decompose_skeleton(grid, oracle.opt_solution, eps, oracle.opt_cost);
    auto pruned = prune_instance(grid, SkeletonGuess{w, *rung, eps});
    REQUIRE(pruned.has_value());
    // the optimal tree must survive that pruning untouched
    std::vector<char> kept(grid.n, 0);
    for (NodeId v : pruned->to_original) kept[v] = 1;
    for (NodeId v : oracle.opt_solution.vertices) CHECK(kept[v]);
  }
}

TEST_CASE("decompose_skeleton bound and distance on random trees") {
  testutil::Splitmix rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 5 + static_cast<int>(rng.next() % 60);
    Instance tree_inst = random_tree_instance(n, rng.next(), 0.05, 2.0);
    std::vector<NodeId> all(n);
    for (NodeId v = 0; v < n; ++v) all[v] = v;
    Solution tree = make_solution(tree_inst, all);
    for (double eps : {0.1, 0.3, 1.0}) {
      Weight opt = tree.cost;
      auto w = decompose_skeleton(tree_inst, tree, eps, opt);
      CHECK(w.size() <= static_cast<std::size_t>(std::ceil(1.0 / eps)));
      CHECK(tree_eps_distance_ok(tree_inst, tree, w, eps * opt));
    }
  }
}
