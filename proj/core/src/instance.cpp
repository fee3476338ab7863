#include "nwkmst/instance.hpp"

#include <algorithm>
#include <queue>

namespace nwkmst {

Profit Instance::total_profit() const {
  Profit s = 0;
  for (Profit p : profit) s += p;
  return s;
}

Weight Instance::total_cost() const {
  Weight s = 0;
  for (NodeId v = 0; v < n; ++v) s += node_cost(v);
  return s;
}

Weight Instance::max_node_cost() const {
  Weight m = 0;
  for (NodeId v = 0; v < n; ++v) m = std::max(m, node_cost(v));
  return m;
}

std::size_t Instance::edge_count() const {
  std::size_t d = 0;
  for (const auto& a : adj) d += a.size();
  return d / 2;
}

bool Instance::has_edge(NodeId u, NodeId v) const {
  const auto& a = adj[u];
  return std::binary_search(a.begin(), a.end(), v);
}

void Instance::add_edge(NodeId u, NodeId v) {
  adj[u].push_back(v);
  adj[v].push_back(u);
}

void Instance::finalize() {
  for (auto& a : adj) std::sort(a.begin(), a.end());
}

void Instance::validate() const {
  if (n <= 0) throw ValidationError("instance has no nodes");
  if (root < 0 || root >= n)
    throw ValidationError("root " + std::to_string(root) + " out of range [0," +
                          std::to_string(n) + ")");
  if (static_cast<NodeId>(cost.size()) != n ||
      static_cast<NodeId>(profit.size()) != n ||
      static_cast<NodeId>(adj.size()) != n)
    throw ValidationError("node attribute arrays do not match n");
  for (NodeId v = 0; v < n; ++v) {
    if (cost[v] < 0)
      throw ValidationError("negative cost at node " + std::to_string(v));
    if (profit[v] < 0)
      throw ValidationError("negative profit at node " + std::to_string(v));
  }
  if (quota < 0) throw ValidationError("negative quota");
  if (quota > total_profit())
    throw ValidationError("quota " + std::to_string(quota) +
                          " exceeds total profit " + std::to_string(total_profit()));
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < adj[u].size(); ++i) {
      NodeId v = adj[u][i];
      if (v < 0 || v >= n)
        throw ValidationError("edge endpoint " + std::to_string(v) + " out of range");
      if (v == u)
        throw ValidationError("self-loop at node " + std::to_string(u));
      if (i + 1 < adj[u].size() && adj[u][i + 1] == v)
        throw ValidationError("parallel edge [" + std::to_string(u) + "," +
                              std::to_string(v) + "]");
      if (!has_edge(v, u))
        throw ValidationError("asymmetric adjacency between " + std::to_string(u) +
                              " and " + std::to_string(v));
    }
  }
}

bool Solution::contains(NodeId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

Solution make_solution(const Instance& inst, std::vector<NodeId> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (!std::binary_search(vertices.begin(), vertices.end(), inst.root))
    throw ValidationError("solution does not contain the root");
  if (!is_connected(inst, vertices))
    throw ValidationError("solution is not connected");
  Solution s;
  s.vertices = std::move(vertices);
  for (NodeId v : s.vertices) {
    s.cost += inst.node_cost(v);
    s.profit += inst.profit[v];
  }
  return s;
}

std::vector<NodeId> neighborhood(const Instance& inst, const std::vector<NodeId>& s) {
  std::vector<char> in(inst.n, 0), out(inst.n, 0);
  for (NodeId v : s) in[v] = 1;
  std::vector<NodeId> result;
  for (NodeId v : s) {
    for (NodeId w : inst.adj[v]) {
      if (!in[w] && !out[w]) {
        out[w] = 1;
        result.push_back(w);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

bool is_connected(const Instance& inst, const std::vector<NodeId>& s) {
  if (s.empty()) return true;
  std::vector<char> in(inst.n, 0);
  for (NodeId v : s) in[v] = 1;
  std::vector<NodeId> stack{s.front()};
  std::vector<char> seen(inst.n, 0);
  seen[s.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : inst.adj[v]) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == s.size();
}

namespace {

std::vector<NodeId> walk_parents(const std::vector<NodeId>& parent, NodeId v) {
  std::vector<NodeId> path;
  for (NodeId u = v; u != -1; u = parent[u]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

// Dijkstra over node weights. dist[v] includes the weight of v itself and of
// the seed vertex unless seeded with 0. On ties (within kTau) the parent
// giving the lexicographically smaller source..v sequence wins.
struct NodeDijkstra {
  const Instance& inst;
  std::vector<Weight> dist;
  std::vector<NodeId> parent;

  explicit NodeDijkstra(const Instance& g)
      : inst(g), dist(g.n, kInfWeight), parent(g.n, -1) {}

  void run(const std::vector<std::pair<NodeId, Weight>>& seeds) {
    using Item = std::pair<Weight, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (auto [v, d] : seeds) {
      if (d < dist[v]) {
        dist[v] = d;
        pq.emplace(d, v);
      }
    }
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v] + kTau) continue;  // stale entry
      for (NodeId w : inst.adj[v]) {
        Weight cand = dist[v] + inst.node_cost(w);
        if (cand < dist[w] - kTau) {
          dist[w] = cand;
          parent[w] = v;
          pq.emplace(cand, w);
        } else if (cand <= dist[w] + kTau && parent[w] != v) {
          // tie: keep the lexicographically smaller path for determinism
          std::vector<NodeId> via = walk_parents(parent, v);
          via.push_back(w);
          std::vector<NodeId> cur = walk_parents(parent, w);
          if (via < cur) {
            parent[w] = v;
            if (cand < dist[w]) dist[w] = cand;
            pq.emplace(dist[w], w);
          }
        }
      }
    }
  }
};

}  // namespace

PathResult node_weighted_shortest_path(const Instance& inst, NodeId source,
                                       const std::vector<NodeId>& targets) {
  PathResult res;
  if (targets.empty()) return res;
  std::vector<char> is_target(inst.n, 0);
  for (NodeId t : targets) is_target[t] = 1;
  if (is_target[source]) {
    // degenerate case: a node is 0-distant to any set containing it
    res.path = {source};
    res.cost = 0;
    res.reachable = true;
    return res;
  }
  NodeDijkstra dij(inst);
  dij.run({{source, inst.node_cost(source)}});

  NodeId best = -1;
  Weight best_cost = kInfWeight;
  std::vector<NodeId> best_path;
  for (NodeId t = 0; t < inst.n; ++t) {
    if (!is_target[t] || dij.dist[t] == kInfWeight) continue;
    Weight c = dij.dist[t] - inst.node_cost(t);
    if (c < best_cost - kTau) {
      best = t;
      best_cost = c;
      best_path = walk_parents(dij.parent, t);
    } else if (best != -1 && c <= best_cost + kTau) {
      std::vector<NodeId> p = walk_parents(dij.parent, t);
      if (p < best_path) {
        best = t;
        best_cost = std::min(best_cost, c);
        best_path = std::move(p);
      }
    }
  }
  if (best == -1) return res;
  res.path = std::move(best_path);
  res.cost = best_cost;
  res.reachable = true;
  return res;
}

PathResult node_weighted_shortest_path_multi(const Instance& inst,
                                             const std::vector<NodeId>& sources,
                                             const std::vector<NodeId>& targets) {
  PathResult res;
  if (sources.empty() || targets.empty()) return res;
  std::vector<char> is_target(inst.n, 0);
  for (NodeId t : targets) is_target[t] = 1;
  for (NodeId s : sources)
    if (is_target[s]) {
      res.path = {s};
      res.cost = 0;
      res.reachable = true;
      return res;
    }
  NodeDijkstra dij(inst);
  std::vector<std::pair<NodeId, Weight>> seeds;
  for (NodeId s : sources) seeds.emplace_back(s, inst.node_cost(s));
  dij.run(seeds);

  NodeId best = -1;
  Weight best_cost = kInfWeight;
  std::vector<NodeId> best_path;
  for (NodeId t = 0; t < inst.n; ++t) {
    if (!is_target[t] || dij.dist[t] == kInfWeight) continue;
    Weight c = dij.dist[t] - inst.node_cost(t);
    std::vector<NodeId> p = walk_parents(dij.parent, t);
    if (c < best_cost - kTau || (best != -1 && c <= best_cost + kTau && p < best_path)) {
      best = t;
      best_cost = std::min(best_cost, c);
      best_path = std::move(p);
    }
  }
  if (best == -1) return res;
  res.path = std::move(best_path);
  res.cost = best_cost;
  res.reachable = true;
  return res;
}

std::vector<Weight> distances_to_set(const Instance& inst,
                                     const std::vector<NodeId>& sources) {
  NodeDijkstra dij(inst);
  std::vector<std::pair<NodeId, Weight>> seeds;
  seeds.reserve(sources.size());
  for (NodeId u : sources) seeds.emplace_back(u, 0.0);
  dij.run(seeds);
  return dij.dist;
}

}  // namespace nwkmst
