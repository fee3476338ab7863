// instance.hpp - node-weighted graph model and basic graph primitives.
//
// An Instance is immutable after construction and safe to share across
// concurrent solver invocations; all mutation lives in per-solve state.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nwkmst {

using NodeId = std::int32_t;
using Weight = double;
using Profit = std::int64_t;

/// Global comparison tolerance for weights.
inline constexpr Weight kTau = 1e-9;
inline constexpr Weight kInfWeight = std::numeric_limits<Weight>::infinity();

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal invariant breaks (a bug, not an input condition).
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// Node-weighted graph with per-node cost and profit, a root and a quota.
///
/// Node ids are dense 0..n-1. The adjacency is symmetric, without
/// self-loops or parallel edges. The root's cost is never counted in any
/// accounting (the objective sums over V \ {r}); the raw value is kept as
/// loaded but node_cost() reports 0 for the root.
struct Instance {
  NodeId n = 0;
  NodeId root = 0;
  Profit quota = 0;
  std::vector<Weight> cost;
  std::vector<Profit> profit;
  std::vector<std::vector<NodeId>> adj;

  Weight node_cost(NodeId v) const { return v == root ? 0.0 : cost[v]; }

  Profit total_profit() const;
  Weight total_cost() const;   // sum of node_cost over all nodes
  Weight max_node_cost() const;
  std::size_t edge_count() const;

  bool has_edge(NodeId u, NodeId v) const;

  /// Builder used by generators and the loader. Adds the undirected edge
  /// once; callers must not add duplicates (validate() rejects them).
  void add_edge(NodeId u, NodeId v);

  /// Sorts neighbor lists; call once after building.
  void finalize();

  /// Throws ValidationError naming the violated invariant.
  void validate() const;
};

/// A connected vertex set containing the root, with cost/profit accounting.
/// Cost excludes the root; profit counts every member including the root.
struct Solution {
  std::vector<NodeId> vertices;  // sorted
  Weight cost = 0;
  Profit profit = 0;

  bool contains(NodeId v) const;
  std::size_t size() const { return vertices.size(); }
};

/// Validates connectivity and membership of the root, computes cost/profit.
/// Throws ValidationError if the set is not a feasible solution shape.
Solution make_solution(const Instance& inst, std::vector<NodeId> vertices);

/// Gamma(S) = { v not in S : exists u in S with (u,v) in E }, sorted.
std::vector<NodeId> neighborhood(const Instance& inst, const std::vector<NodeId>& s);

/// True iff the subgraph induced on s is connected. Empty sets are
/// vacuously connected.
bool is_connected(const Instance& inst, const std::vector<NodeId>& s);

struct PathResult {
  std::vector<NodeId> path;  // source..target inclusive
  Weight cost = kInfWeight;  // node weights of path vertices excluding the target
  bool reachable = false;
};

/// Minimum-cost path from source to any target, where the path cost counts
/// node weights of all path vertices except the reached target (the root's
/// weight counts as 0 throughout). If source is itself a target the result
/// is the trivial path with cost 0. Ties are broken toward the
/// lexicographically smallest node sequence.
PathResult node_weighted_shortest_path(const Instance& inst, NodeId source,
                                       const std::vector<NodeId>& targets);

/// Same cost convention, minimized over all (source, target) pairs.
PathResult node_weighted_shortest_path_multi(const Instance& inst,
                                             const std::vector<NodeId>& sources,
                                             const std::vector<NodeId>& targets);

/// dist[v] = minimum over u in sources of the cost of a path from v to u
/// counting every path vertex except u. Unreachable nodes get +inf.
/// Equals node_weighted_shortest_path(v, sources).cost for every v.
std::vector<Weight> distances_to_set(const Instance& inst,
                                     const std::vector<NodeId>& sources);

}  // namespace nwkmst
