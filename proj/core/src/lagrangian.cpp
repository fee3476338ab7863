#include "nwkmst/lagrangian.hpp"

#include <algorithm>
#include <cmath>

namespace nwkmst {

namespace {

struct ProbeTracker {
  const Instance& inst;
  SearchResult& res;
  Profit quota;
  Weight last_lambda = -1;
  Profit last_profit = -1;

  void note(const MoatRunResult& run) {
    res.max_lmp_violation =
        std::max(res.max_lmp_violation, run.lmp_lhs(inst) - run.lmp_rhs());
    res.max_load_violation =
        std::max(res.max_load_violation, run.grow.max_load_violation);
    res.min_potential = std::min(res.min_potential, run.grow.min_potential);
    Weight constant =
        run.lambda * static_cast<Weight>(inst.total_profit() - quota);
    res.best_dual_bound = std::max(res.best_dual_bound, run.dual_value - constant);
    if (run.lambda > last_lambda && last_profit >= 0 &&
        run.tree.profit < last_profit)
      ++res.monotonicity_violations;
    last_lambda = run.lambda;
    last_profit = run.tree.profit;
  }
};

}  // namespace

SearchResult binary_search_lambda(const Instance& inst, const std::vector<NodeId>& w,
                                  Profit quota, double epsilon, Weight opt_guess,
                                  std::ostream* trace) {
  SearchResult res;
  ProbeTracker track{inst, res, quota};

  auto probe = [&](Weight lambda) -> std::optional<MoatRunResult> {
    auto run = run_pcst(inst, w, lambda, trace);
    if (run) track.note(*run);
    return run;
  };

  auto lo_run = probe(0.0);
  if (!lo_run) return res;  // skeleton unreachable
  if (lo_run->tree.profit >= quota) {
    res.kind = SearchResult::Kind::exact;
    res.exact = std::move(*lo_run);
    return res;
  }

  Weight lambda_hi = static_cast<Weight>(inst.n) * inst.max_node_cost();
  if (lambda_hi <= 0) lambda_hi = 1.0;
  auto hi_run = probe(lambda_hi);
  if (!hi_run || hi_run->tree.profit < quota) return res;  // pruned too much
  if (hi_run->tree.profit == quota) {
    res.kind = SearchResult::Kind::exact;
    res.exact = std::move(*hi_run);
    return res;
  }

  Weight width_target = epsilon * opt_guess / (3.0 * static_cast<Weight>(inst.n));
  Weight lo = 0.0, hi = lambda_hi;
  while (hi - lo > width_target) {
    Weight mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // resolution floor
    auto mid_run = probe(mid);
    ++res.probes;
    if (!mid_run) throw InternalError("probe became infeasible inside the bracket");
    if (mid_run->tree.profit == quota) {
      res.kind = SearchResult::Kind::exact;
      res.exact = std::move(*mid_run);
      return res;
    }
    if (mid_run->tree.profit < quota) {
      lo = mid;
      lo_run = std::move(mid_run);
    } else {
      hi = mid;
      hi_run = std::move(mid_run);
    }
  }

  LagrangePair pair;
  pair.t1 = std::move(*lo_run);
  pair.t2 = std::move(*hi_run);
  pair.opt_guess = opt_guess;
  pair.epsilon = epsilon;
  Weight p1 = static_cast<Weight>(pair.t1.tree.profit);
  Weight p2 = static_cast<Weight>(pair.t2.tree.profit);
  pair.alpha2 = (static_cast<Weight>(quota) - p1) / (p2 - p1);
  pair.alpha1 = 1.0 - pair.alpha2;
  res.kind = SearchResult::Kind::pair;
  res.pair = std::move(pair);
  return res;
}

ConvexReport convex_bound_check(const Instance& inst, const LagrangePair& pair,
                                Weight opt_reference) {
  ConvexReport rep;
  rep.lhs = pair.alpha1 * pair.t1.tree.cost + pair.alpha2 * pair.t2.tree.cost;
  rep.rhs = (3.0 + pair.epsilon) * opt_reference;
  Weight total = static_cast<Weight>(inst.total_profit());
  Weight quota = static_cast<Weight>(inst.quota);
  Weight l1 = pair.t1.lambda, l2 = pair.t2.lambda;
  rep.intermediate = 3.0 * (pair.alpha1 * pair.t1.dual_value +
                            pair.alpha2 * pair.t2.dual_value -
                            l2 * (total - quota) + (l2 - l1) * total);
  rep.holds = rep.lhs <= rep.rhs + 1e-6;
  rep.intermediate_holds = rep.lhs <= rep.intermediate + 1e-6;
  return rep;
}

Weight balance_bound(double alpha, double beta, double r, double delta) {
  if (alpha <= 0) throw ValidationError("balance_bound requires alpha > 0");
  Weight a = (r * (1.0 + delta) - (1.0 - alpha) * beta) / alpha;
  Weight b = r * (1.0 + delta) + alpha * beta;
  return std::min(a, b);
}

}  // namespace nwkmst
