#include "nwkmst/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace nwkmst {

bool is_eps_distant(const Instance& inst, NodeId v,
                    const std::vector<NodeId>& targets, Weight budget) {
  PathResult p = node_weighted_shortest_path(inst, v, targets);
  return p.reachable && p.cost <= budget + kTau;
}

std::optional<PrunedInstance> prune_instance(const Instance& inst,
                                             const SkeletonGuess& guess) {
  std::vector<NodeId> anchors = guess.skeleton;
  anchors.push_back(inst.root);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  std::vector<Weight> dist = distances_to_set(inst, anchors);
  Weight budget = guess.budget();

  std::vector<NodeId> keep;
  std::vector<NodeId> remap(inst.n, -1);
  for (NodeId v = 0; v < inst.n; ++v) {
    if (v == inst.root || dist[v] <= budget + kTau) {
      remap[v] = static_cast<NodeId>(keep.size());
      keep.push_back(v);
    }
  }

  PrunedInstance out;
  out.inst.n = static_cast<NodeId>(keep.size());
  out.inst.root = remap[inst.root];
  out.inst.quota = inst.quota;
  out.inst.cost.resize(out.inst.n);
  out.inst.profit.resize(out.inst.n);
  out.inst.adj.assign(out.inst.n, {});
  for (NodeId v : keep) {
    out.inst.cost[remap[v]] = inst.cost[v];
    out.inst.profit[remap[v]] = inst.profit[v];
    for (NodeId w : inst.adj[v])
      if (remap[w] != -1 && v < w) out.inst.add_edge(remap[v], remap[w]);
  }
  out.inst.finalize();
  out.to_original = keep;
  for (NodeId w : guess.skeleton) out.skeleton.push_back(remap[w]);
  std::sort(out.skeleton.begin(), out.skeleton.end());

  // a guess whose skeleton got separated from the root is rejected
  if (!out.skeleton.empty()) {
    std::vector<NodeId> need = out.skeleton;
    need.push_back(out.inst.root);
    std::vector<Weight> d = distances_to_set(out.inst, {out.inst.root});
    for (NodeId w : out.skeleton)
      if (d[w] == kInfWeight) return std::nullopt;
  }
  return out;
}

std::vector<Weight> opt_guess_ladder(const Instance& inst, double epsilon) {
  Weight lo = kInfWeight;
  for (NodeId v = 0; v < inst.n; ++v) {
    Weight c = inst.node_cost(v);
    if (c > kTau) lo = std::min(lo, c);
  }
  Weight hi = inst.total_cost();
  if (lo == kInfWeight) lo = kTau;  // all-zero costs
  std::vector<Weight> ladder;
  Weight g = lo;
  while (g < hi) {
    ladder.push_back(g);
    g *= (1.0 + epsilon);
  }
  ladder.push_back(std::max(hi, lo));
  return ladder;
}

std::vector<SkeletonGuess> enumerate_guesses(const Instance& inst, double epsilon,
                                             int max_skeleton) {
  int cap = std::min<int>(static_cast<int>(std::ceil(1.0 / epsilon)), max_skeleton);
  cap = std::max(cap, 0);
  std::vector<Weight> ladder = opt_guess_ladder(inst, epsilon);

  std::vector<std::vector<NodeId>> sets{{}};
  std::vector<NodeId> combo;
  // all subsets of V of size 1..cap, lexicographic
  auto rec = [&](auto&& self, NodeId start) -> void {
    if (static_cast<int>(combo.size()) == cap) return;
    for (NodeId v = start; v < inst.n; ++v) {
      combo.push_back(v);
      sets.push_back(combo);
      self(self, v + 1);
      combo.pop_back();
    }
  };
  if (cap > 0) rec(rec, 0);

  std::vector<SkeletonGuess> out;
  out.reserve(sets.size() * ladder.size());
  for (const auto& w : sets)
    for (Weight g : ladder) out.push_back(SkeletonGuess{w, g, epsilon});
  return out;
}

namespace {

// BFS spanning tree of the induced subgraph, children in ascending id order.
struct SpanningTree {
  std::vector<NodeId> order;  // BFS order from the root
  std::vector<NodeId> parent;
  std::vector<std::vector<NodeId>> children;
};

SpanningTree span_tree(const Instance& inst, const Solution& tree) {
  SpanningTree st;
  st.parent.assign(inst.n, -1);
  st.children.assign(inst.n, {});
  std::vector<char> in(inst.n, 0), seen(inst.n, 0);
  for (NodeId v : tree.vertices) in[v] = 1;
  std::queue<NodeId> q;
  q.push(inst.root);
  seen[inst.root] = 1;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    st.order.push_back(v);
    for (NodeId w : inst.adj[v]) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        st.parent[w] = v;
        st.children[v].push_back(w);
        q.push(w);
      }
    }
  }
  if (st.order.size() != tree.vertices.size())
    throw ValidationError("decompose_skeleton: tree is not connected");
  return st;
}

}  // namespace

std::vector<NodeId> decompose_skeleton(const Instance& inst, const Solution& tree,
                                       double epsilon, Weight opt) {
  SpanningTree st = span_tree(inst, tree);
  Weight budget = epsilon * opt;
  std::vector<NodeId> skeleton;
  // down[u]: heaviest path weight from u into its remaining subtree, u included
  std::vector<Weight> down(inst.n, 0);
  std::vector<char> removed(inst.n, 0);
  for (auto it = st.order.rbegin(); it != st.order.rend(); ++it) {
    NodeId u = *it;
    Weight deepest = 0;
    for (NodeId c : st.children[u])
      if (!removed[c]) deepest = std::max(deepest, down[c]);
    down[u] = inst.node_cost(u) + deepest;
    if (u != inst.root && down[u] > budget + kTau) {
      skeleton.push_back(u);
      removed[u] = 1;  // cuts the whole subtree: descendants fold into down[u] only
    }
  }
  std::sort(skeleton.begin(), skeleton.end());
  return skeleton;
}

bool tree_eps_distance_ok(const Instance& inst, const Solution& tree,
                          const std::vector<NodeId>& skeleton, Weight budget) {
  // multi-source relaxation restricted to tree edges
  std::vector<char> in(inst.n, 0);
  for (NodeId v : tree.vertices) in[v] = 1;
  std::vector<Weight> dist(inst.n, kInfWeight);
  using Item = std::pair<Weight, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto seed = [&](NodeId u) {
    if (dist[u] > 0) {
      dist[u] = 0;
      pq.emplace(0.0, u);
    }
  };
  seed(inst.root);
  for (NodeId w : skeleton) seed(w);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (NodeId w : inst.adj[v]) {
      if (!in[w] || !in[v]) continue;
      Weight cand = d + inst.node_cost(w);
      if (cand < dist[w]) {
        dist[w] = cand;
        pq.emplace(cand, w);
      }
    }
  }
  for (NodeId v : tree.vertices)
    if (dist[v] > budget + kTau) return false;
  return true;
}

}  // namespace nwkmst
