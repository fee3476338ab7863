// moat.hpp - primal-dual moat growing for node-weighted prize-collecting
// Steiner tree with forced terminals.
//
// Penalties are lambda * profit per vertex; forced vertices become terminals
// with infinite reduced penalty, so their moats never die and they end up
// connected to the root. The grow phase simulates simultaneous continuous
// growth of all active moats with a discrete event loop; the prune phase is
// the reverse-order deletion test over bought vertices.

#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <vector>

#include "nwkmst/instance.hpp"

namespace nwkmst {

/// Dual p_v fixed before growth plus the derived reduced costs/penalties.
/// For v outside the forced set, p_v = min(cost_v, lambda * profit_v);
/// vertices whose penalty exceeds their cost become terminals with zero
/// reduced cost, the others Steiner vertices with zero reduced penalty.
/// Forced vertices get p_v = cost_v and infinite reduced penalty.
struct PenaltyReduction {
  Weight lambda = 0;
  std::vector<Weight> p;
  std::vector<Weight> reduced_cost;
  std::vector<Weight> reduced_penalty;  // +inf for forced terminals
  std::vector<char> is_terminal;

  Weight p_sum(const Instance& inst) const;  // sum over V \ {r}
};

PenaltyReduction reduce_penalties(const Instance& inst, const std::vector<NodeId>& w,
                                  Weight lambda);

struct GrowResult {
  std::vector<NodeId> bought;     // buy order, root excluded
  std::vector<Weight> buy_time;   // per node, NaN when unbought
  std::vector<Weight> mark_time;  // per node, NaN when never marked
  std::vector<Weight> load;       // accumulated dual load per vertex
  Weight y_total = 0;             // sum of all y_S
  int events = 0;
  bool infeasible = false;  // active moats remained but nothing can go tight

  // dual-feasibility diagnostics
  Weight max_load_violation = 0;  // max over v of load_v + p_v - cost_v
  Weight max_buy_slack = 0;       // max |load - reduced_cost| at buy moments
  Weight min_potential = 0;       // most negative active potential observed

  bool was_bought(NodeId v) const { return !std::isnan(buy_time[v]); }
  bool was_marked(NodeId v) const { return !std::isnan(mark_time[v]); }
};

/// Event A: a vertex goes tight -> buy it and merge all neighboring moats,
/// the merged potential being the sum of the parts; the moat holding the
/// root is always inactive. Event B: a potential hits zero -> deactivate and
/// mark the previously unmarked terminals inside with the current time.
/// Simultaneous events run vertex-first, then by lowest id.
///
/// When trace is given, one JSON record per event is written:
///   {"t":..,"kind":"buy"|"merge"|"deactivate","nodes":[..],"potentials":[..]}
GrowResult grow_phase(const Instance& inst, const PenaltyReduction& red,
                      std::ostream* trace = nullptr);

/// Reverse-order deletion: a bought vertex is removed unless that would
/// disconnect from the root component some terminal that is unmarked or
/// marked later than the vertex was bought. Returns the root component of
/// what survives.
Solution prune_phase(const Instance& inst, const std::vector<NodeId>& bought_order,
                     const std::vector<Weight>& buy_time,
                     const std::vector<Weight>& mark_time,
                     const std::vector<char>& is_terminal);

struct MoatRunResult {
  Solution tree;         // contains the root and every forced vertex
  Weight dual_value = 0; // DS = sum y_S + sum p_v, Lagrangian constant excluded
  Weight lambda = 0;
  GrowResult grow;

  /// c(T) + 3*lambda*(profit outside T); with unit profits this is
  /// c(T) + 3*lambda*(n - |T|).
  Weight lmp_lhs(const Instance& inst) const;
  Weight lmp_rhs() const { return 3.0 * dual_value; }
};

/// reduce_penalties -> grow_phase -> prune_phase. Returns nullopt when some
/// forced vertex is unreachable from the root (infeasible guess).
std::optional<MoatRunResult> run_pcst(const Instance& inst,
                                      const std::vector<NodeId>& w, Weight lambda,
                                      std::ostream* trace = nullptr);

}  // namespace nwkmst
