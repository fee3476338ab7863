// oracle.hpp - exact brute-force solvers for small instances.
//
// Enumeration grows connected vertex sets from the root with a canonical
// extension rule so every connected set containing the root is visited
// exactly once. The cap guards runtime only, not correctness.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nwkmst/instance.hpp"

namespace nwkmst {

inline constexpr int kOracleCapDefault = 18;

struct OracleResult {
  Weight opt_cost = kInfWeight;
  Solution opt_solution;
  std::uint64_t explored = 0;  // connected sets visited
  bool feasible = false;
};

/// Minimum-cost connected set containing the root with profit >= quota.
/// Throws ValidationError when n exceeds the cap.
OracleResult brute_force_quota_tree(const Instance& inst, int cap = kOracleCapDefault);

/// Same, with the solution additionally forced to contain every node of w.
OracleResult brute_force_quota_tree_forced(const Instance& inst,
                                           const std::vector<NodeId>& w,
                                           int cap = kOracleCapDefault);

/// Minimizes c(T) + lambda * (profit outside T) over connected T containing
/// the root with T >= W. Ground truth for the prize-collecting relaxation.
OracleResult brute_force_pcst(const Instance& inst, const std::vector<NodeId>& w,
                              Weight lambda, int cap = kOracleCapDefault);

struct RatioReport {
  double ratio = 1.0;            // cost(algorithm) / opt
  Weight algorithm_cost = 0;
  Weight opt_cost = 0;
  double balanced_bound = 0;     // per-instance certificate, 0 when unknown
};

/// Cost ratio of an algorithm output against the oracle optimum, with the
/// per-instance balanced bound for context when the solve produced a
/// bracketing pair (alpha = alpha2, beta = c(T1)/opt).
RatioReport ratio_report(const Instance& inst, const Solution& algorithm_output,
                         const OracleResult& oracle,
                         std::optional<std::pair<double, double>> alpha_beta = {});

}  // namespace nwkmst
