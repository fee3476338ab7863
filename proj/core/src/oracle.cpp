#include "nwkmst/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "nwkmst/lagrangian.hpp"

namespace nwkmst {

namespace {

// Rooted connected-set enumeration. Starting from {root}, every call may
// extend by one frontier vertex; once a frontier vertex has been branched
// on it stays excluded for the remaining branches of that call, so each
// connected superset of {root} is produced exactly once.
struct Enumerator {
  const Instance& inst;
  std::vector<char> in_set, excluded, in_frontier;
  std::vector<NodeId> members;
  Weight cur_cost = 0;
  Profit cur_profit = 0;
  std::uint64_t explored = 0;

  // visit(members, cost, profit)
  using Visit = void (*)(void*, const std::vector<NodeId>&, Weight, Profit);
  Visit visit = nullptr;
  void* visit_ctx = nullptr;

  explicit Enumerator(const Instance& g)
      : inst(g), in_set(g.n, 0), excluded(g.n, 0), in_frontier(g.n, 0) {}

  void run() {
    in_set[inst.root] = 1;
    members.push_back(inst.root);
    cur_profit = inst.profit[inst.root];
    std::vector<NodeId> frontier = inst.adj[inst.root];
    std::sort(frontier.begin(), frontier.end());
    for (NodeId v : frontier) in_frontier[v] = 1;
    rec(frontier);
  }

  void rec(const std::vector<NodeId>& frontier) {
    ++explored;
    visit(visit_ctx, members, cur_cost, cur_profit);
    std::vector<NodeId> blocked_here;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      NodeId v = frontier[i];
      // take v
      in_set[v] = 1;
      members.push_back(v);
      cur_cost += inst.node_cost(v);
      cur_profit += inst.profit[v];
      std::vector<NodeId> next;
      next.reserve(frontier.size());
      for (std::size_t k = i + 1; k < frontier.size(); ++k) next.push_back(frontier[k]);
      std::vector<NodeId> fresh;
      for (NodeId w : inst.adj[v]) {
        if (!in_set[w] && !excluded[w] && !in_frontier[w]) {
          in_frontier[w] = 1;
          fresh.push_back(w);
          next.push_back(w);
        }
      }
      rec(next);
      for (NodeId w : fresh) in_frontier[w] = 0;
      in_set[v] = 0;
      members.pop_back();
      cur_cost -= inst.node_cost(v);
      cur_profit -= inst.profit[v];
      // leave v out for the remaining branches of this call
      excluded[v] = 1;
      in_frontier[v] = 0;
      blocked_here.push_back(v);
    }
    for (NodeId v : blocked_here) {
      excluded[v] = 0;
      in_frontier[v] = 1;
    }
  }
};

void check_cap(const Instance& inst, int cap) {
  if (inst.n > cap)
    throw ValidationError("oracle refused: n=" + std::to_string(inst.n) +
                          " exceeds cap " + std::to_string(cap));
}

}  // namespace

OracleResult brute_force_quota_tree(const Instance& inst, int cap) {
  return brute_force_quota_tree_forced(inst, {}, cap);
}

OracleResult brute_force_quota_tree_forced(const Instance& inst,
                                           const std::vector<NodeId>& w, int cap) {
  check_cap(inst, cap);
  struct Ctx {
    const Instance* inst;
    const std::vector<NodeId>* w;
    OracleResult res;
  } ctx{&inst, &w, {}};

  Enumerator en(inst);
  en.visit_ctx = &ctx;
  en.visit = [](void* p, const std::vector<NodeId>& members, Weight cost, Profit profit) {
    auto& c = *static_cast<Ctx*>(p);
    if (profit < c.inst->quota) return;
    for (NodeId v : *c.w)
      if (std::find(members.begin(), members.end(), v) == members.end()) return;
    if (cost < c.res.opt_cost - kTau ||
        (cost <= c.res.opt_cost + kTau && !c.res.feasible)) {
      c.res.opt_cost = cost;
      c.res.opt_solution.vertices = members;
      c.res.feasible = true;
    } else if (c.res.feasible && cost <= c.res.opt_cost + kTau) {
      // deterministic tie-break: smallest sorted vertex set
      std::vector<NodeId> sorted = members;
      std::sort(sorted.begin(), sorted.end());
      std::vector<NodeId> cur = c.res.opt_solution.vertices;
      std::sort(cur.begin(), cur.end());
      if (sorted < cur) {
        c.res.opt_cost = std::min(c.res.opt_cost, cost);
        c.res.opt_solution.vertices = members;
      }
    }
  };
  en.run();
  ctx.res.explored = en.explored;
  if (ctx.res.feasible)
    ctx.res.opt_solution = make_solution(inst, ctx.res.opt_solution.vertices);
  return ctx.res;
}

OracleResult brute_force_pcst(const Instance& inst, const std::vector<NodeId>& w,
                              Weight lambda, int cap) {
  check_cap(inst, cap);
  struct Ctx {
    const Instance* inst;
    const std::vector<NodeId>* w;
    Weight lambda;
    Profit total;
    OracleResult res;
  } ctx{&inst, &w, lambda, inst.total_profit(), {}};

  Enumerator en(inst);
  en.visit_ctx = &ctx;
  en.visit = [](void* p, const std::vector<NodeId>& members, Weight cost, Profit profit) {
    auto& c = *static_cast<Ctx*>(p);
    for (NodeId v : *c.w)
      if (std::find(members.begin(), members.end(), v) == members.end()) return;
    Weight obj = cost + c.lambda * static_cast<Weight>(c.total - profit);
    if (!c.res.feasible || obj < c.res.opt_cost - kTau) {
      c.res.opt_cost = obj;
      c.res.opt_solution.vertices = members;
      c.res.feasible = true;
    }
  };
  en.run();
  ctx.res.explored = en.explored;
  if (ctx.res.feasible)
    ctx.res.opt_solution = make_solution(inst, ctx.res.opt_solution.vertices);
  return ctx.res;
}

RatioReport ratio_report(const Instance& inst, const Solution& algorithm_output,
                         const OracleResult& oracle,
                         std::optional<std::pair<double, double>> alpha_beta) {
  (void)inst;
  RatioReport rep;
  rep.algorithm_cost = algorithm_output.cost;
  rep.opt_cost = oracle.opt_cost;
  if (oracle.opt_cost <= kTau)
    rep.ratio = algorithm_output.cost <= kTau ? 1.0
                                              : std::numeric_limits<double>::infinity();
  else
    rep.ratio = algorithm_output.cost / oracle.opt_cost;
  if (alpha_beta) {
    auto [alpha, beta] = *alpha_beta;
    if (alpha > 0 && alpha < 1)
      rep.balanced_bound = balance_bound(alpha, beta, 3.0, 0.0);
  }
  return rep;
}

}  // namespace nwkmst
