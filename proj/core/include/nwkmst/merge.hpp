// merge.hpp - cost-effective tree merging.
//
// T2 is contracted over T1 into a super-root, reduced to a star of
// cost-effective leaves, and leaves are picked in decreasing
// super-cardinality order; whenever the next leaf is a contracted super
// vertex that would overshoot, it is expanded and the procedure recurses on
// the remainder, so at most l = max(2, ceil(log2(4/eps2))) picking levels
// (and that many skeleton connections) are ever needed.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nwkmst/instance.hpp"

namespace nwkmst {

/// Working graph for the merging procedure: a tree over super-vertices.
/// Arena ids are stable (originals first, then the super-root, then supers
/// in creation order); edges always descend from original graph edges.
struct MergeForest {
  struct Node {
    Weight cost = 0;
    Profit profit = 0;                      // super-cardinality
    std::vector<NodeId> members;            // original ids; empty for the super-root
    bool is_super_root = false;
    std::vector<int> sub_nodes;             // contraction record (arena ids)
    std::vector<std::pair<int, int>> sub_edges;
    bool is_super() const { return !sub_nodes.empty(); }
  };

  std::vector<Node> arena;
  std::vector<int> nodes;                   // current H
  std::vector<std::pair<int, int>> edges;   // current H (tree)
  int super_root = -1;
  Weight ratio = 0;        // c(T'2) / profit(T'2), the cost-effectiveness threshold
  Weight base_cost = 0;    // c(T'2)
  Profit base_profit = 0;  // profit(T'2), super-root not counted

  Weight h_cost() const;
  Profit h_profit() const;
};

/// Contracts T1 and T2's intersection into a zero-cost super-root over a
/// spanning tree of T2. Returns nullopt when T2 \ T1 is empty (merging is
/// unnecessary).
std::optional<MergeForest> contract(const Instance& inst, const Solution& t1,
                                    const Solution& t2);

struct StarView {
  int center = -1;           // arena id; the single node when H is a singleton
  std::vector<int> leaves;   // arena ids
};

/// Splits H edge by edge: a cost-effective side with profit >= q drops the
/// other side, a smaller one is contracted to a super vertex. Edges are
/// scanned in increasing (min,max) arena-id order, rescanning after every
/// change; when both sides are cost-effective the larger-profit one acts.
/// The fixed point is a star (possibly degenerate).
StarView reduce_to_star(MergeForest& forest, Profit q);

/// How one picking level connects into SOL1.
struct LevelConnect {
  std::vector<NodeId> hub_members;  // bought to join several picked leaves
  std::vector<NodeId> sources;      // candidate endpoints for the skeleton path
  bool attaches_to_t1 = false;      // the star center was the super-root
  bool hub_is_super = false;        // defensive case: contracted hub, expanded
};

struct MergePlan {
  Profit q = 0;
  std::vector<NodeId> picked;  // subset of T2 \ T1, original ids
  Profit picked_profit = 0;
  Weight picked_cost = 0;
  int levels_used = 0;
  std::vector<LevelConnect> levels;
  // filled by assemble_sol1
  std::vector<NodeId> centers;  // one entry per level, -1 = direct T1 attach
  std::vector<std::vector<NodeId>> connection_paths;
  Weight connection_cost = 0;
  Weight total_cost = 0;
  bool center_anomaly = false;
  bool connection_over_budget = false;
};

/// Runs the leveled picking loop starting from the current forest.
/// q <= 0 yields an empty plan.
MergePlan pick_leaves(MergeForest& forest, Profit q, double epsilon2);

int merge_levels_cap(double epsilon2);  // l = max(2, ceil(log2(4/eps2)))

/// SOL1 = T1 + picked + hubs + one skeleton connection per level. Fills the
/// plan's paths and cost fields; node costs are deduplicated (each vertex
/// paid once).
Solution assemble_sol1(const Instance& inst, const Solution& t1, MergePlan& plan,
                       const std::vector<NodeId>& skeleton, Weight eps_budget);

/// The cheaper of the two; ties go to sol1.
const Solution& choose_best(const Solution& sol1, const Solution& sol2);

}  // namespace nwkmst
