#include "nwkmst/merge.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace nwkmst {

Weight MergeForest::h_cost() const {
  Weight s = 0;
  for (int id : nodes) s += arena[id].cost;
  return s;
}

Profit MergeForest::h_profit() const {
  Profit s = 0;
  for (int id : nodes) s += arena[id].profit;
  return s;
}

std::optional<MergeForest> contract(const Instance& inst, const Solution& t1,
                                    const Solution& t2) {
  // spanning tree of the induced subgraph on t2
  std::vector<char> in2(inst.n, 0);
  for (NodeId v : t2.vertices) in2[v] = 1;
  std::vector<NodeId> parent(inst.n, -1);
  std::vector<char> seen(inst.n, 0);
  std::queue<NodeId> q;
  q.push(inst.root);
  seen[inst.root] = 1;
  std::vector<std::pair<NodeId, NodeId>> tree_edges;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    for (NodeId w : inst.adj[v]) {
      if (in2[w] && !seen[w]) {
        seen[w] = 1;
        tree_edges.emplace_back(v, w);
        q.push(w);
      }
    }
  }

  std::vector<NodeId> others;
  for (NodeId v : t2.vertices)
    if (!t1.contains(v)) others.push_back(v);
  if (others.empty()) return std::nullopt;  // merge unnecessary

  MergeForest f;
  std::vector<int> arena_of(inst.n, -1);
  for (NodeId v : others) {
    MergeForest::Node nd;
    nd.cost = inst.node_cost(v);
    nd.profit = inst.profit[v];
    nd.members = {v};
    arena_of[v] = static_cast<int>(f.arena.size());
    f.arena.push_back(std::move(nd));
    f.base_cost += inst.node_cost(v);
    f.base_profit += inst.profit[v];
  }
  MergeForest::Node root_node;
  root_node.is_super_root = true;
  f.super_root = static_cast<int>(f.arena.size());
  f.arena.push_back(std::move(root_node));

  auto to_arena = [&](NodeId v) {
    return t1.contains(v) ? f.super_root : arena_of[v];
  };

  // contracted multigraph, then a BFS spanning tree from the super-root
  std::vector<std::vector<int>> cadj(f.arena.size());
  for (auto [u, v] : tree_edges) {
    int a = to_arena(u), b = to_arena(v);
    if (a != b) {
      cadj[a].push_back(b);
      cadj[b].push_back(a);
    }
  }
  for (auto& a : cadj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  std::vector<char> cseen(f.arena.size(), 0);
  std::queue<int> cq;
  cq.push(f.super_root);
  cseen[f.super_root] = 1;
  f.nodes.push_back(f.super_root);
  while (!cq.empty()) {
    int a = cq.front();
    cq.pop();
    for (int b : cadj[a])
      if (!cseen[b]) {
        cseen[b] = 1;
        f.nodes.push_back(b);
        f.edges.emplace_back(std::min(a, b), std::max(a, b));
        cq.push(b);
      }
  }
  std::sort(f.nodes.begin(), f.nodes.end());
  f.ratio = f.base_profit > 0 ? f.base_cost / static_cast<Weight>(f.base_profit) : 0.0;
  return f;
}

namespace {

// vertex sets of the two components of H - e
std::pair<std::vector<int>, std::vector<int>> split_at(const MergeForest& f,
                                                       std::size_t edge_idx) {
  auto [a, b] = f.edges[edge_idx];
  (void)b;
  std::vector<int> stack{a};
  std::vector<int> xs;
  std::vector<char> mark(f.arena.size(), 0);
  mark[a] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    xs.push_back(v);
    for (std::size_t i = 0; i < f.edges.size(); ++i) {
      if (i == edge_idx) continue;
      auto [p, q] = f.edges[i];
      int other = -1;
      if (p == v) other = q;
      else if (q == v) other = p;
      if (other != -1 && !mark[other]) {
        mark[other] = 1;
        stack.push_back(other);
      }
    }
  }
  std::vector<int> ys;
  for (int v : f.nodes)
    if (!mark[v]) ys.push_back(v);
  return {xs, ys};
}

Weight set_cost(const MergeForest& f, const std::vector<int>& s) {
  Weight c = 0;
  for (int id : s) c += f.arena[id].cost;
  return c;
}

Profit set_profit(const MergeForest& f, const std::vector<int>& s) {
  Profit p = 0;
  for (int id : s) p += f.arena[id].profit;
  return p;
}

bool cost_effective(const MergeForest& f, Weight c, Profit p) {
  return c <= f.ratio * static_cast<Weight>(p) + kTau * (f.base_cost + 1.0);
}

void remove_side(MergeForest& f, const std::vector<int>& side) {
  std::vector<char> drop(f.arena.size(), 0);
  for (int id : side) drop[id] = 1;
  std::erase_if(f.nodes, [&](int id) { return drop[id]; });
  std::erase_if(f.edges, [&](const std::pair<int, int>& e) {
    return drop[e.first] || drop[e.second];
  });
}

// Contract one side of an edge into a fresh super vertex; the side hangs off
// H by exactly that edge, so the new vertex inherits a single connection.
void contract_side(MergeForest& f, const std::vector<int>& side, int outside_endpoint) {
  MergeForest::Node nd;
  std::vector<char> in_side(f.arena.size(), 0);
  for (int id : side) in_side[id] = 1;
  for (int id : side) {
    nd.cost += f.arena[id].cost;
    nd.profit += f.arena[id].profit;
    nd.members.insert(nd.members.end(), f.arena[id].members.begin(),
                      f.arena[id].members.end());
    nd.sub_nodes.push_back(id);
  }
  for (const auto& e : f.edges)
    if (in_side[e.first] && in_side[e.second]) nd.sub_edges.push_back(e);
  int fresh = static_cast<int>(f.arena.size());
  f.arena.push_back(std::move(nd));
  remove_side(f, side);
  f.nodes.push_back(fresh);
  std::sort(f.nodes.begin(), f.nodes.end());
  f.edges.emplace_back(std::min(fresh, outside_endpoint),
                       std::max(fresh, outside_endpoint));
}

void expand_super(MergeForest& f, int id) {
  const auto sub_nodes = f.arena[id].sub_nodes;
  const auto sub_edges = f.arena[id].sub_edges;
  f.nodes = sub_nodes;
  std::sort(f.nodes.begin(), f.nodes.end());
  f.edges = sub_edges;
}

struct LeafRef {
  int id;
  Profit profit;
};

}  // namespace

StarView reduce_to_star(MergeForest& f, Profit q) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(f.edges.begin(), f.edges.end());
    for (std::size_t i = 0; i < f.edges.size(); ++i) {
      auto [xs, ys] = split_at(f, i);
      Weight cx = set_cost(f, xs), cy = set_cost(f, ys);
      Profit px = set_profit(f, xs), py = set_profit(f, ys);
      bool ce_x = cost_effective(f, cx, px);
      bool ce_y = cost_effective(f, cy, py);
      // averaging over the split of a cost-effective H makes this impossible
      if (!ce_x && !ce_y)
        throw InternalError("no cost-effective side at an edge split");

      // candidate order: larger-profit cost-effective side first
      std::vector<int> order;  // 0 = X, 1 = Y
      if (ce_x && ce_y)
        order = (px >= py) ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
      else if (ce_x)
        order = {0};
      else if (ce_y)
        order = {1};

      for (int pick : order) {
        const auto& side = pick == 0 ? xs : ys;
        const auto& rest = pick == 0 ? ys : xs;
        Profit sp = pick == 0 ? px : py;
        if (sp >= q) {
          remove_side(f, rest);
          changed = true;
          break;
        }
        if (side.size() >= 2) {
          // reattach at the endpoint on the other side of the split edge
          std::vector<char> in_side(f.arena.size(), 0);
          for (int id : side) in_side[id] = 1;
          int outside =
              in_side[f.edges[i].first] ? f.edges[i].second : f.edges[i].first;
          contract_side(f, side, outside);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }

  StarView star;
  if (f.nodes.size() == 1) {
    star.center = f.nodes.front();
    return star;
  }
  if (f.nodes.size() == 2) {
    // leaf/center split is decided by the picking logic
    star.center = f.nodes[0];
    star.leaves = {f.nodes[1]};
    return star;
  }
  std::vector<int> degree(f.arena.size(), 0);
  for (auto [a, b] : f.edges) {
    ++degree[a];
    ++degree[b];
  }
  int center = -1;
  for (int id : f.nodes)
    if (degree[id] == static_cast<int>(f.nodes.size()) - 1) center = id;
  if (center == -1)
    throw InternalError("star reduction did not reach a star");
  star.center = center;
  for (int id : f.nodes)
    if (id != center) star.leaves.push_back(id);
  return star;
}

int merge_levels_cap(double epsilon2) {
  return std::max(2, static_cast<int>(std::ceil(std::log2(4.0 / epsilon2))));
}

namespace {

void take_node(const MergeForest& f, int id, MergePlan& plan) {
  const auto& nd = f.arena[id];
  for (NodeId v : nd.members) plan.picked.push_back(v);
  plan.picked_profit += nd.profit;
  plan.picked_cost += nd.cost;
}

// Hub bookkeeping for a level where >= 2 leaves were picked (or the whole
// star was taken). The center joins them; the super-root means the picks
// already touch T1.
LevelConnect hub_connect(const MergeForest& f, int center, bool center_picked,
                         MergePlan& plan) {
  LevelConnect lc;
  const auto& nd = f.arena[center];
  if (nd.is_super_root) {
    lc.attaches_to_t1 = true;
    return lc;
  }
  lc.hub_members = nd.members;
  lc.sources = nd.members;
  if (nd.is_super()) {
    lc.hub_is_super = true;
    plan.center_anomaly = true;
  }
  (void)center_picked;
  return lc;
}

}  // namespace

MergePlan pick_leaves(MergeForest& f, Profit q, double epsilon2) {
  MergePlan plan;
  plan.q = q;
  if (q <= 0) return plan;
  const int level_cap = merge_levels_cap(epsilon2);
  Profit q_rem = q;

  long structural_guard = 1000000;
  while (true) {
    if (--structural_guard < 0)
      throw InternalError("merge recursion failed to terminate");
    StarView star = reduce_to_star(f, q_rem);

    if (star.leaves.empty()) {
      // single node left
      const auto& nd = f.arena[star.center];
      if (nd.is_super()) {
        expand_super(f, star.center);
        continue;
      }
      take_node(f, star.center, plan);
      plan.levels.push_back(LevelConnect{{}, nd.members, nd.is_super_root, false});
      ++plan.levels_used;
      break;
    }

    if (f.nodes.size() == 2) {
      // degenerate star: pick the cost-effective node as the leaf
      int a = f.nodes[0], b = f.nodes[1];
      bool ce_a = cost_effective(f, f.arena[a].cost, f.arena[a].profit);
      bool ce_b = cost_effective(f, f.arena[b].cost, f.arena[b].profit);
      if (!ce_a && !ce_b)
        throw InternalError("no cost-effective node in a 2-node star");
      int leaf, center;
      if (ce_a != ce_b) {
        leaf = ce_a ? a : b;
      } else {
        leaf = (f.arena[a].profit >= f.arena[b].profit) ? a : b;
      }
      center = (leaf == a) ? b : a;
      star.center = center;
      star.leaves = {leaf};
    }

    // leaves in decreasing super-cardinality order
    std::vector<LeafRef> leaves;
    for (int id : star.leaves) leaves.push_back({id, f.arena[id].profit});
    std::sort(leaves.begin(), leaves.end(), [](const LeafRef& x, const LeafRef& y) {
      if (x.profit != y.profit) return x.profit > y.profit;
      return x.id < y.id;
    });

    Profit prefix = 0;
    int k = -1;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (prefix + leaves[i].profit >= q_rem) {
        k = static_cast<int>(i);
        break;
      }
      prefix += leaves[i].profit;
    }

    // A level that picks exactly one leaf needs no hub: the leaf is
    // internally connected and either hangs off the contracted T1 directly
    // or buys its own skeleton path.
    auto single_leaf_connect = [&](int leaf_id) {
      LevelConnect lc;
      if (f.arena[star.center].is_super_root)
        lc.attaches_to_t1 = true;
      else
        lc.sources = f.arena[leaf_id].members;
      return lc;
    };

    if (k == -1) {
      // all leaves together fall short: take the whole star, center included
      for (const auto& lf : leaves) take_node(f, lf.id, plan);
      take_node(f, star.center, plan);
      plan.levels.push_back(hub_connect(f, star.center, true, plan));
      ++plan.levels_used;
      if (plan.picked_profit < q) throw InternalError("merge picked below quota gap");
      break;
    }

    const LeafRef& next = leaves[k];
    bool final_take = f.arena[next.id].profit <= 1 || !f.arena[next.id].is_super() ||
                      plan.levels_used + 1 >= level_cap;
    if (final_take) {
      for (int i = 0; i <= k; ++i) take_node(f, leaves[i].id, plan);
      plan.levels.push_back(k == 0 ? single_leaf_connect(leaves[0].id)
                                   : hub_connect(f, star.center, false, plan));
      ++plan.levels_used;
      break;
    }

    if (k == 0) {
      // a lone inherited super covers the gap: refine it without burning a level
      expand_super(f, next.id);
      continue;
    }

    // take the first k leaves, recurse into the (k+1)-th
    for (int i = 0; i < k; ++i) take_node(f, leaves[i].id, plan);
    plan.levels.push_back(k == 1 ? single_leaf_connect(leaves[0].id)
                                 : hub_connect(f, star.center, false, plan));
    ++plan.levels_used;
    q_rem -= prefix;
    expand_super(f, next.id);
  }

  std::sort(plan.picked.begin(), plan.picked.end());
  plan.picked.erase(std::unique(plan.picked.begin(), plan.picked.end()),
                    plan.picked.end());
  return plan;
}

Solution assemble_sol1(const Instance& inst, const Solution& t1, MergePlan& plan,
                       const std::vector<NodeId>& skeleton, Weight eps_budget) {
  std::vector<char> in_sol(inst.n, 0);
  std::vector<NodeId> verts;
  auto add = [&](NodeId v) -> Weight {
    if (in_sol[v]) return 0;
    in_sol[v] = 1;
    verts.push_back(v);
    return inst.node_cost(v);
  };
  for (NodeId v : t1.vertices) add(v);
  for (NodeId v : plan.picked) add(v);

  std::vector<NodeId> targets = skeleton;
  targets.push_back(inst.root);

  plan.centers.clear();
  plan.connection_paths.clear();
  plan.connection_cost = 0;
  for (const LevelConnect& lc : plan.levels) {
    for (NodeId v : lc.hub_members) plan.connection_cost += add(v);
    if (lc.attaches_to_t1 || lc.sources.empty()) {
      plan.centers.push_back(-1);
      plan.connection_paths.emplace_back();
      continue;
    }
    PathResult pr = node_weighted_shortest_path_multi(inst, lc.sources, targets);
    if (!pr.reachable)
      throw InternalError("merge connection source unreachable from the skeleton");
    if (pr.cost > eps_budget + 1e-6) plan.connection_over_budget = true;
    plan.centers.push_back(pr.path.front());
    for (NodeId v : pr.path) plan.connection_cost += add(v);
    plan.connection_paths.push_back(std::move(pr.path));
  }

  Solution sol = make_solution(inst, verts);
  plan.total_cost = sol.cost;
  return sol;
}

const Solution& choose_best(const Solution& sol1, const Solution& sol2) {
  return sol2.cost < sol1.cost - kTau ? sol2 : sol1;
}

}  // namespace nwkmst
