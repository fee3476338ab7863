// lagrangian.hpp - binary search over the penalty parameter and the bounds
// around the resulting tree pair.

#pragma once

#include <optional>
#include <vector>

#include "nwkmst/instance.hpp"
#include "nwkmst/moat.hpp"

namespace nwkmst {

/// Bracketing tree pair: profit(T1) < quota < profit(T2), lambda interval
/// narrow enough that the convex combination argument goes through
/// (lambda2 - lambda1 <= epsilon * opt_guess / (3n)).
struct LagrangePair {
  MoatRunResult t1, t2;
  double alpha1 = 0, alpha2 = 0;  // alpha1+alpha2=1, alpha-weighted profit = quota
  Weight opt_guess = 0;
  double epsilon = 0;
};

struct SearchResult {
  enum class Kind { exact, pair, infeasible };
  Kind kind = Kind::infeasible;
  std::optional<MoatRunResult> exact;  // profit == quota, or the lambda=0 shortcut
  std::optional<LagrangePair> pair;

  int probes = 0;  // bisection probes, excluding the two endpoint probes
  int monotonicity_violations = 0;  // |T^lambda| decreased along increasing lambda

  // per-probe aggregates for the verification harness
  Weight max_lmp_violation = -kInfWeight;  // max of lhs - 3*DS over probes
  Weight max_load_violation = 0;
  Weight min_potential = 0;
  Weight best_dual_bound = -kInfWeight;  // max over probes of DS - lambda*(P-quota)
};

/// Probes lambda=0 first: a tree already meeting the quota is returned as
/// exact (a plain 3-approximation, no merging needed). Otherwise bisects on
/// [0, n*max_cost], keeping profit(T_lo) < quota < profit(T_hi), until a
/// probe hits the quota exactly or the interval is narrower than
/// epsilon*opt_guess/(3n). Infeasible when even the top lambda cannot reach
/// the quota (the guess pruned too much).
SearchResult binary_search_lambda(const Instance& inst, const std::vector<NodeId>& w,
                                  Profit quota, double epsilon, Weight opt_guess,
                                  std::ostream* trace = nullptr);

struct ConvexReport {
  Weight lhs = 0;           // alpha1 c(T1) + alpha2 c(T2)
  Weight rhs = 0;           // (3+epsilon) * opt
  Weight intermediate = 0;  // 3(a1 DS1 + a2 DS2 - l2 (P-quota) + (l2-l1) P)
  bool holds = false;
  bool intermediate_holds = false;
};

/// Checks the convex-combination chain against an OPT reference (oracle
/// value or the guess).
ConvexReport convex_bound_check(const Instance& inst, const LagrangePair& pair,
                                Weight opt_reference);

/// min{ (r(1+delta) - (1-alpha)beta)/alpha, r(1+delta) + alpha*beta }:
/// the per-instance certificate that the cheaper of SOL1/SOL2 meets the
/// balanced bound. Throws on alpha <= 0.
Weight balance_bound(double alpha, double beta, double r, double delta);

}  // namespace nwkmst
