#include "nwkmst/moat.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <queue>

#include <json.hpp>

namespace nwkmst {

namespace {
constexpr Weight kNan = std::numeric_limits<Weight>::quiet_NaN();
}

Weight PenaltyReduction::p_sum(const Instance& inst) const {
  Weight s = 0;
  for (NodeId v = 0; v < inst.n; ++v)
    if (v != inst.root) s += p[v];
  return s;
}

PenaltyReduction reduce_penalties(const Instance& inst, const std::vector<NodeId>& w,
                                  Weight lambda) {
  PenaltyReduction red;
  red.lambda = lambda;
  red.p.assign(inst.n, 0);
  red.reduced_cost.assign(inst.n, 0);
  red.reduced_penalty.assign(inst.n, 0);
  red.is_terminal.assign(inst.n, 0);
  std::vector<char> forced(inst.n, 0);
  for (NodeId v : w)
    if (v != inst.root) forced[v] = 1;

  for (NodeId v = 0; v < inst.n; ++v) {
    if (v == inst.root) continue;  // the root has no dual constraint
    Weight c = inst.node_cost(v);
    if (forced[v]) {
      red.p[v] = c;
      red.reduced_cost[v] = 0;
      red.reduced_penalty[v] = kInfWeight;
      red.is_terminal[v] = 1;
      continue;
    }
    Weight penalty = lambda * static_cast<Weight>(inst.profit[v]);
    red.p[v] = std::min(c, penalty);
    red.reduced_cost[v] = c - red.p[v];
    red.reduced_penalty[v] = penalty - red.p[v];
    red.is_terminal[v] = red.reduced_penalty[v] > kTau;
  }
  return red;
}

namespace {

struct MoatSim {
  const Instance& inst;
  const PenaltyReduction& red;
  std::ostream* trace;

  std::vector<int> parent;        // union-find over moat membership
  std::vector<Weight> potential;  // at uf roots
  std::vector<char> is_moat, active, has_root;
  std::vector<std::vector<NodeId>> members;

  std::vector<char> bought;
  std::vector<int> rate;  // number of active moats currently loading v
  GrowResult out;
  Weight now = 0;

  MoatSim(const Instance& g, const PenaltyReduction& r, std::ostream* tr)
      : inst(g), red(r), trace(tr) {
    parent.resize(g.n);
    for (NodeId v = 0; v < g.n; ++v) parent[v] = v;
    potential.assign(g.n, 0);
    is_moat.assign(g.n, 0);
    active.assign(g.n, 0);
    has_root.assign(g.n, 0);
    members.assign(g.n, {});
    bought.assign(g.n, 0);
    rate.assign(g.n, 0);
    out.buy_time.assign(g.n, kNan);
    out.mark_time.assign(g.n, kNan);
    out.load.assign(g.n, 0);
  }

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void emit(const char* kind, const std::vector<NodeId>& nodes, Weight pot) {
    if (!trace) return;
    nlohmann::json j;
    j["t"] = now;
    j["kind"] = kind;
    std::vector<NodeId> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    j["nodes"] = sorted;
    j["potentials"] = {pot == kInfWeight ? -1.0 : pot};
    (*trace) << j.dump() << "\n";
  }

  int merge_roots(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (members[a].size() < members[b].size()) std::swap(a, b);
    parent[b] = a;
    potential[a] += potential[b];  // +inf saturates
    has_root[a] = has_root[a] || has_root[b];
    is_moat[a] = is_moat[a] || is_moat[b];
    active[b] = 0;
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    return a;
  }

  void refresh_active(int m) {
    m = find(m);
    active[m] = is_moat[m] && !has_root[m] && potential[m] > kTau;
  }

  // The t=0 state: every zero-reduced-cost vertex (and the root) counts as
  // bought; moats are the components of the bought subgraph plus singleton
  // moats around unbought terminals.
  void setup() {
    bought[inst.root] = 1;
    out.buy_time[inst.root] = 0;
    for (NodeId v = 0; v < inst.n; ++v) {
      if (v == inst.root) continue;
      if (red.reduced_cost[v] <= kTau) {
        bought[v] = 1;
        out.buy_time[v] = 0;
        out.bought.push_back(v);  // ascending ids
      }
    }
    for (NodeId v = 0; v < inst.n; ++v) {
      if (!bought[v]) continue;
      for (NodeId u : inst.adj[v])
        if (bought[u] && u < v) merge_roots(u, v);
    }
    for (NodeId v = 0; v < inst.n; ++v) {
      if (bought[v] || red.is_terminal[v]) {
        int m = find(v);
        is_moat[m] = 1;
        if (v == inst.root) has_root[m] = 1;
        members[m].push_back(v);
        if (red.is_terminal[v]) potential[m] += red.reduced_penalty[v];
      }
    }
    for (NodeId v = 0; v < inst.n; ++v)
      if (find(v) == v && is_moat[v]) {
        refresh_active(v);
        maybe_die(v);
      }
  }

  void recompute_rates() {
    std::fill(rate.begin(), rate.end(), 0);
    std::vector<int> last(inst.n, -1);
    for (NodeId v = 0; v < inst.n; ++v) {
      if (bought[v]) continue;
      int own = find(v);
      int r = 0;
      for (NodeId u : inst.adj[v]) {
        int m = find(u);
        if (m == own) continue;  // a moat never loads its own members
        if (active[m] && last[m] != v) {
          last[m] = v;
          ++r;
        }
      }
      rate[v] = r;
    }
  }

  int active_count() {
    int c = 0;
    for (NodeId v = 0; v < inst.n; ++v)
      if (find(v) == v && active[v]) ++c;
    return c;
  }

  void buy(NodeId v) {
    bought[v] = 1;
    out.buy_time[v] = now;
    out.bought.push_back(v);
    out.max_buy_slack =
        std::max(out.max_buy_slack, std::abs(out.load[v] - red.reduced_cost[v]));
    int acc = find(v);
    if (!is_moat[acc]) {
      is_moat[acc] = 1;
      members[acc].push_back(v);
    }
    emit("buy", {v}, potential[acc]);
    int parts = 1;
    for (NodeId u : inst.adj[v]) {
      int m = find(u);
      if (!is_moat[m]) continue;
      if (m != find(acc)) {
        acc = merge_roots(acc, m);
        ++parts;
      }
    }
    acc = find(acc);
    refresh_active(acc);
    maybe_die(acc);
    if (parts > 1) emit("merge", members[acc], potential[acc]);
  }

  void die(int m) {
    active[m] = 0;
    for (NodeId u : members[m])
      if (red.is_terminal[u] && std::isnan(out.mark_time[u])) out.mark_time[u] = now;
    emit("deactivate", members[m], std::max(potential[m], 0.0));
  }

  // A moat sitting at zero potential counts as tight even when it got there
  // by construction rather than by depletion.
  void maybe_die(int m) {
    m = find(m);
    if (is_moat[m] && !has_root[m] && !active[m] && potential[m] <= kTau) {
      for (NodeId u : members[m])
        if (red.is_terminal[u] && std::isnan(out.mark_time[u])) {
          die(m);
          return;
        }
    }
  }

  void run() {
    setup();
    const long guard = 10L * inst.n * inst.n + 1000;
    while (true) {
      recompute_rates();
      Weight t_vertex = kInfWeight;
      for (NodeId v = 0; v < inst.n; ++v) {
        if (bought[v] || rate[v] == 0) continue;
        Weight t = now + std::max(0.0, red.reduced_cost[v] - out.load[v]) / rate[v];
        t_vertex = std::min(t_vertex, t);
      }
      Weight t_moat = kInfWeight;
      for (NodeId m = 0; m < inst.n; ++m) {
        if (find(m) != m || !active[m] || potential[m] == kInfWeight) continue;
        t_moat = std::min(t_moat, now + std::max(0.0, potential[m]));
      }
      Weight t_next = std::min(t_vertex, t_moat);
      if (t_next == kInfWeight) {
        out.infeasible = active_count() > 0;
        break;
      }

      Weight dt = t_next - now;
      if (dt > 0) {
        int act = active_count();
        for (NodeId v = 0; v < inst.n; ++v)
          if (!bought[v] && rate[v] > 0) out.load[v] += rate[v] * dt;
        for (NodeId m = 0; m < inst.n; ++m) {
          if (find(m) != m || !active[m] || potential[m] == kInfWeight) continue;
          potential[m] -= dt;
          out.min_potential = std::min(out.min_potential, potential[m]);
        }
        out.y_total += act * dt;
        now = t_next;
      }

      // vertex events before moat events, lowest ids first
      bool progressed = false;
      if (t_vertex <= t_moat + kTau) {
        for (NodeId v = 0; v < inst.n; ++v) {
          if (bought[v] || rate[v] == 0) continue;
          if (red.reduced_cost[v] - out.load[v] <= kTau * rate[v]) {
            buy(v);
            progressed = true;
            ++out.events;
          }
        }
      }
      for (NodeId m = 0; m < inst.n; ++m) {
        if (find(m) != m || !active[m] || potential[m] == kInfWeight) continue;
        if (potential[m] <= kTau) {
          die(m);
          progressed = true;
          ++out.events;
        }
      }
      if (!progressed)
        throw InternalError("moat growth stalled at t=" + std::to_string(now));
      if (out.events > guard)
        throw InternalError("moat growth exceeded the event bound");
      if (active_count() == 0) break;
    }

    for (NodeId v = 0; v < inst.n; ++v) {
      if (v == inst.root) continue;
      out.max_load_violation = std::max(
          out.max_load_violation, out.load[v] + red.p[v] - inst.node_cost(v));
    }
  }
};

}  // namespace

GrowResult grow_phase(const Instance& inst, const PenaltyReduction& red,
                      std::ostream* trace) {
  MoatSim sim(inst, red, trace);
  sim.run();
  return sim.out;
}

Solution prune_phase(const Instance& inst, const std::vector<NodeId>& bought_order,
                     const std::vector<Weight>& buy_time,
                     const std::vector<Weight>& mark_time,
                     const std::vector<char>& is_terminal) {
  std::vector<char> present(inst.n, 0);
  present[inst.root] = 1;
  for (NodeId v : bought_order) present[v] = 1;

  auto reach = [&](NodeId skip) {
    std::vector<char> seen(inst.n, 0);
    std::vector<NodeId> stack{inst.root};
    seen[inst.root] = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : inst.adj[v])
        if (present[w] && w != skip && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    return seen;
  };

  auto protected_wrt = [&](NodeId u, NodeId v) {
    return is_terminal[u] && (std::isnan(mark_time[u]) || mark_time[u] > buy_time[v]);
  };

  std::vector<char> before = reach(-1);
  for (auto it = bought_order.rbegin(); it != bought_order.rend(); ++it) {
    NodeId v = *it;
    int deg = 0;
    for (NodeId w : inst.adj[v])
      if (present[w]) ++deg;
    bool blocked;
    if (deg <= 1) {
      // no path runs through v, only v itself can lose the root
      blocked = before[v] && protected_wrt(v, v);
      if (!blocked) {
        present[v] = 0;
        before[v] = 0;
      }
    } else {
      std::vector<char> after = reach(v);
      blocked = false;
      for (NodeId u = 0; u < inst.n && !blocked; ++u) {
        if (!present[u] || !before[u] || after[u]) continue;
        if (u != v && !protected_wrt(u, v)) continue;
        if (u == v && !protected_wrt(v, v)) continue;
        blocked = true;
      }
      if (!blocked) {
        present[v] = 0;
        before = std::move(after);
      }
    }
  }

  std::vector<char> final_reach = reach(-1);
  std::vector<NodeId> verts;
  for (NodeId v = 0; v < inst.n; ++v)
    if (final_reach[v]) verts.push_back(v);
  return make_solution(inst, verts);
}

Weight MoatRunResult::lmp_lhs(const Instance& inst) const {
  Weight outside = static_cast<Weight>(inst.total_profit() - tree.profit);
  return tree.cost + 3.0 * lambda * outside;
}

std::optional<MoatRunResult> run_pcst(const Instance& inst,
                                      const std::vector<NodeId>& w, Weight lambda,
                                      std::ostream* trace) {
  std::vector<NodeId> forced;
  for (NodeId v : w)
    if (v != inst.root) forced.push_back(v);
  std::sort(forced.begin(), forced.end());
  forced.erase(std::unique(forced.begin(), forced.end()), forced.end());

  if (!forced.empty()) {
    std::vector<Weight> d = distances_to_set(inst, {inst.root});
    for (NodeId v : forced)
      if (d[v] == kInfWeight) return std::nullopt;
  }

  PenaltyReduction red = reduce_penalties(inst, forced, lambda);
  GrowResult grow = grow_phase(inst, red, trace);
  if (grow.infeasible) return std::nullopt;

  MoatRunResult res;
  res.lambda = lambda;
  res.tree = prune_phase(inst, grow.bought, grow.buy_time, grow.mark_time,
                         red.is_terminal);
  res.dual_value = grow.y_total + red.p_sum(inst);
  res.grow = std::move(grow);
  for (NodeId v : forced)
    if (!res.tree.contains(v))
      throw InternalError("forced vertex " + std::to_string(v) +
                          " missing from the pruned tree");
  return res;
}

}  // namespace nwkmst
