#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "nwkmst/generators.hpp"
#include "nwkmst/moat.hpp"
#include "nwkmst/oracle.hpp"
#include "test_helpers.hpp"

using namespace nwkmst;
using testutil::make_instance;

TEST_CASE("reduce_penalties applies the min rule") {
  Instance g = make_instance(4, 0, 2, {0, 2, 7, 3}, {1, 1, 1, 1},
                             {{0, 1}, {1, 2}, {2, 3}});
  SUBCASE("lambda 0 gives no terminals outside the forced set") {
    PenaltyReduction red = reduce_penalties(g, {}, 0.0);
    for (NodeId v = 1; v < g.n; ++v) {
      CHECK(red.p[v] == doctest::Approx(0.0));
      CHECK_FALSE(red.is_terminal[v]);
    }
  }
  SUBCASE("penalty above cost makes a terminal") {
    PenaltyReduction red = reduce_penalties(g, {}, 5.0);
    CHECK(red.p[1] == doctest::Approx(2.0));
    CHECK(red.is_terminal[1]);
    CHECK(red.reduced_penalty[1] == doctest::Approx(3.0));
    CHECK(red.reduced_cost[1] == doctest::Approx(0.0));
  }
  SUBCASE("penalty below cost makes a Steiner vertex") {
    PenaltyReduction red = reduce_penalties(g, {}, 5.0);
    CHECK(red.p[2] == doctest::Approx(5.0));
    CHECK_FALSE(red.is_terminal[2]);
    CHECK(red.reduced_cost[2] == doctest::Approx(2.0));
    CHECK(red.reduced_penalty[2] == doctest::Approx(0.0));
  }
  SUBCASE("forced vertices become infinite terminals paying their cost") {
    PenaltyReduction red = reduce_penalties(g, {3}, 5.0);
    CHECK(red.is_terminal[3]);
    CHECK(red.reduced_penalty[3] == kInfWeight);
    CHECK(red.reduced_cost[3] == doctest::Approx(0.0));
    CHECK(red.p[3] == doctest::Approx(3.0));
  }
}

TEST_CASE("grow_phase events") {
  SUBCASE("single root: no growth at all") {
    Instance one = make_instance(1, 0, 0, {0}, {1}, {});
    PenaltyReduction red = reduce_penalties(one, {}, 3.0);
    GrowResult gr = grow_phase(one, red);
    CHECK(gr.bought.empty());
    CHECK(gr.y_total == doctest::Approx(0.0));
  }
  SUBCASE("lonely moat dies without buying: hand-crafted reduction") {
    // terminal a with reduced cost 4 and reduced penalty 2; the root has no
    // dual constraint, so nothing ever goes tight and the moat starves
    Instance g = make_instance(2, 0, 1, {0, 4}, {1, 1}, {{0, 1}});
    PenaltyReduction red;
    red.lambda = 6.0;
    red.p = {0, 2};
    red.reduced_cost = {0, 4};
    red.reduced_penalty = {0, 2};
    red.is_terminal = {0, 1};
    GrowResult gr = grow_phase(g, red);
    CHECK(gr.bought.empty());
    CHECK(gr.mark_time[1] == doctest::Approx(2.0));
    CHECK(gr.y_total == doctest::Approx(2.0));
    Solution tree = prune_phase(g, gr.bought, gr.buy_time, gr.mark_time,
                                red.is_terminal);
    CHECK(tree.vertices == std::vector<NodeId>{0});
  }
  SUBCASE("forced vertex pulls the path to the root") {
    Instance g = make_instance(3, 0, 2, {0, 1, 2}, {1, 1, 1}, {{0, 1}, {1, 2}});
    PenaltyReduction red = reduce_penalties(g, {2}, 0.0);
    GrowResult gr = grow_phase(g, red);
    REQUIRE(gr.bought.size() == 2);  // b free at t=0, then a at t=1
    CHECK(gr.bought[0] == 2);
    CHECK(gr.bought[1] == 1);
    CHECK(gr.buy_time[1] == doctest::Approx(1.0));
    CHECK(gr.y_total == doctest::Approx(1.0));
    Solution tree = prune_phase(g, gr.bought, gr.buy_time, gr.mark_time,
                                red.is_terminal);
    CHECK(tree.vertices == std::vector<NodeId>{0, 1, 2});
  }
}

TEST_CASE("prune_phase") {
  SUBCASE("nothing bought leaves the root") {
    Instance g = make_instance(2, 0, 1, {0, 4}, {1, 1}, {{0, 1}});
    Solution tree = prune_phase(g, {}, std::vector<Weight>(2, 0),
                                std::vector<Weight>(2, 0), {0, 0});
    CHECK(tree.vertices == std::vector<NodeId>{0});
  }
  SUBCASE("dead-end branch serving an earlier-marked terminal is deleted") {
    constexpr Weight nan = std::numeric_limits<Weight>::quiet_NaN();
    Instance g = make_instance(3, 0, 1, {0, 3, 0}, {1, 1, 1}, {{0, 1}, {1, 2}});
    std::vector<NodeId> bought{2, 1};
    std::vector<Weight> buy_time{0, 1.0, 0.0};
    std::vector<Weight> mark_time{nan, nan, 0.5};  // t marked before x bought
    Solution tree = prune_phase(g, bought, buy_time, mark_time, {0, 0, 1});
    CHECK(tree.vertices == std::vector<NodeId>{0});
  }
  SUBCASE("the unique path to a forced vertex survives") {
    Instance g = make_instance(3, 0, 2, {0, 3, 1}, {1, 1, 1}, {{0, 1}, {1, 2}});
    auto run = run_pcst(g, {2}, 0.0);
    REQUIRE(run.has_value());
    CHECK(run->tree.vertices == std::vector<NodeId>{0, 1, 2});
  }
  SUBCASE("re-pruning the pruned tree is a fixed point") {
    Instance grid = gen_planar_grid(3, 4, CostDist::uniform, 0.1, 1.5, 8, 77);
    auto run = run_pcst(grid, {}, 0.8);
    REQUIRE(run.has_value());
    std::vector<NodeId> again;
    for (NodeId v : run->grow.bought)
      if (run->tree.contains(v)) again.push_back(v);
    Solution re = prune_phase(grid, again, run->grow.buy_time,
                              run->grow.mark_time,
                              reduce_penalties(grid, {}, 0.8).is_terminal);
    CHECK(re.vertices == run->tree.vertices);
  }
}

TEST_CASE("run_pcst endpoints") {
  SUBCASE("lambda 0 without forced vertices returns the bare root") {
    Instance g = make_instance(3, 0, 2, {0, 1, 2}, {1, 1, 1}, {{0, 1}, {1, 2}});
    auto run = run_pcst(g, {}, 0.0);
    REQUIRE(run.has_value());
    CHECK(run->tree.vertices == std::vector<NodeId>{0});
    CHECK(run->dual_value == doctest::Approx(0.0));
    CHECK(run->lmp_lhs(g) <= run->lmp_rhs() + kTau);
  }
  SUBCASE("huge lambda spans the whole path") {
    Instance path5 = make_instance(5, 0, 5, {0, 1, 1, 1, 1}, {1, 1, 1, 1, 1},
                                   {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    Weight big = 5.0 * path5.max_node_cost();
    auto run = run_pcst(path5, {}, big);
    REQUIRE(run.has_value());
    CHECK(run->tree.vertices.size() == 5);
  }
  SUBCASE("unreachable forced vertex is an infeasible guess") {
    Instance split = make_instance(3, 0, 1, {0, 1, 1}, {1, 1, 1}, {{0, 1}});
    CHECK_FALSE(run_pcst(split, {2}, 1.0).has_value());
  }
}

TEST_CASE("moat invariants on a seeded planar corpus") {
  testutil::Splitmix rng(555);
  for (int trial = 0; trial < 12; ++trial) {
    int rows = 2 + static_cast<int>(rng.next() % 3);
    int cols = 2 + static_cast<int>(rng.next() % 3);
    Instance grid = gen_planar_grid(rows, cols, CostDist::uniform, 0.1, 2.0,
                                    rows * cols / 2, rng.next());
    Weight top = grid.n * grid.max_node_cost();
    for (Weight frac : {0.0, 0.05, 0.2, 0.5, 1.0}) {
      Weight lambda = frac * top;
      auto run = run_pcst(grid, {}, lambda);
      REQUIRE(run.has_value());
      // LMP inequality (planar input)
      CHECK(run->lmp_lhs(grid) <= run->lmp_rhs() + 1e-6 * grid.n);
      // dual feasibility; bought vertices are tight at their buy moment
      CHECK(run->grow.max_load_violation <= 1e-9);
      CHECK(run->grow.min_potential >= -1e-9);
      CHECK(run->grow.max_buy_slack <= 1e-6);
      // the tree is feasible for the relaxation, so it cannot beat its optimum
      if (grid.n <= 12) {
        OracleResult opt = brute_force_pcst(grid, {}, lambda);
        Weight tree_obj =
            run->tree.cost +
            lambda * static_cast<Weight>(grid.total_profit() - run->tree.profit);
        CHECK(tree_obj >= opt.opt_cost - 1e-9);
        // weak duality: the dual value never beats the relaxation optimum
        CHECK(run->dual_value <= opt.opt_cost + 1e-6);
      }
    }
  }
}

TEST_CASE("LMP inequality also holds with forced skeletons and profits") {
  testutil::Splitmix rng(777);
  for (int trial = 0; trial < 25; ++trial) {
    int rows = 2 + static_cast<int>(rng.next() % 3);
    int cols = 2 + static_cast<int>(rng.next() % 3);
    Instance g = gen_planar_grid(rows, cols, CostDist::uniform, 0.02, 2.0,
                                 rows * cols / 2, rng.next());
    if (trial % 2) {
      for (NodeId v = 0; v < g.n; ++v)
        g.profit[v] = static_cast<Profit>(rng.next() % 4);
      g.quota = 1;
    }
    std::vector<NodeId> w;
    for (std::uint64_t i = 0; i < rng.next() % 4; ++i)
      w.push_back(static_cast<NodeId>(rng.next() % g.n));
    Weight top = g.n * g.max_node_cost();
    for (int j = 0; j < 6; ++j) {
      Weight lambda = top / std::pow(2.0, j);
      auto run = run_pcst(g, w, lambda);
      REQUIRE(run.has_value());
      CHECK(run->lmp_lhs(g) <= run->lmp_rhs() + 1e-6 * g.n);
      CHECK(run->grow.max_load_violation <= 1e-9);
      if (g.n <= 12) {
        OracleResult opt = brute_force_pcst(g, w, lambda);
        CHECK(run->dual_value <= opt.opt_cost + 1e-6);
      }
    }
  }
}

TEST_CASE("forced vertices survive across lambdas and stay connected") {
  Instance grid = gen_planar_grid(3, 3, CostDist::uniform, 0.2, 1.5, 5, 9);
  for (Weight lambda : {0.0, 0.3, 1.0, 4.0}) {
    auto run = run_pcst(grid, {4, 8}, lambda);
    REQUIRE(run.has_value());
    CHECK(run->tree.contains(4));
    CHECK(run->tree.contains(8));
    CHECK(is_connected(grid, run->tree.vertices));
  }
}

TEST_CASE("handicap trace replay: O tightens first at small q") {
  // at q=2 the O vertices carry the highest load rate relative to cost, so
  // they are the first set vertices bought at any workable lambda
  Instance h = handicap_instance({2, 3.0}, {3, 1e-6});
  MestreLayout lay = mestre_layout({2, 3.0}, true, 3);
  std::ostringstream trace;
  auto run = run_pcst(h, {}, 0.5, &trace);
  REQUIRE(run.has_value());
  std::istringstream in(trace.str());
  std::string line;
  NodeId first_set_buy = -1;
  while (std::getline(in, line) && first_set_buy == -1) {
    auto j = nlohmann::json::parse(line);
    if (j["kind"] != "buy" || j["t"].get<Weight>() <= 0) continue;
    for (NodeId v : j["nodes"].get<std::vector<NodeId>>())
      if (h.profit[v] == 0 && v != h.root) first_set_buy = v;
  }
  REQUIRE(first_set_buy != -1);
  bool is_o = std::find(lay.o_sets.begin(), lay.o_sets.end(), first_set_buy) !=
              lay.o_sets.end();
  CHECK(is_o);
}

TEST_CASE("trace emits parseable event records") {
  Instance grid = gen_planar_grid(2, 3, CostDist::uniform, 0.2, 1.5, 4, 21);
  std::ostringstream trace;
  auto run = run_pcst(grid, {5}, 0.7, &trace);
  REQUIRE(run.has_value());
  std::istringstream in(trace.str());
  std::string line;
  Weight last_t = 0;
  int records = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    std::string kind = j["kind"];
    CHECK((kind == "buy" || kind == "merge" || kind == "deactivate"));
    Weight t = j["t"];
    CHECK(t >= last_t - kTau);
    last_t = std::max(last_t, t);
    CHECK(j["nodes"].is_array());
    ++records;
  }
  CHECK(records > 0);
}
