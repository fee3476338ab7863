// generators.hpp - test-corpus builders: planar grids, the partial-cover
// reduction, Mestre's lower-bound instance and the handicap-gadget
// construction. All generators are pure functions of their parameters.

#pragma once

#include <cstdint>
#include <vector>

#include "nwkmst/instance.hpp"

namespace nwkmst {

enum class CostDist { unit, uniform };

/// rows x cols grid graph, root at the top-left corner, unit profits.
Instance gen_planar_grid(int rows, int cols, CostDist dist, double lo, double hi,
                         Profit quota, std::uint64_t seed);

struct CoverSet {
  Weight cost = 0;
  std::vector<int> elements;
};

/// Three-layer reduction: per element a zero-cost profit-1 vertex, per set a
/// vertex with the set's cost and zero profit adjacent to its elements, and
/// a root adjacent to every set vertex. Quota = coverage_target.
Instance reduce_partial_cover(const std::vector<CoverSet>& sets, int n_elements,
                              Profit coverage_target);

struct MestreParams {
  int q = 2;       // grid dimension, >= 2
  double r = 3.0;  // factor parameter
};

/// Mestre's partial-cover instance through the reduction: a q x q grid of
/// cells with q elements each; A_i covers column i, B_i covers row i plus
/// two extra elements, O_i covers the i-th element of every cell plus one
/// element shared with B_i. Costs: c(A_i) = (2/3)(r/q), c(B_i) = (4/3)(r/q),
/// c(O_i) = 1/q. Quota = q^3 + q (the O family is exactly feasible).
Instance mestre_instance(const MestreParams& p);

struct GadgetParams {
  int gamma = -1;                // pendants per high-potential vertex; -1 = q^3
  Weight eps_perturb = kTau * 1e3;  // subtracted from A costs
};

/// Extends mestre_instance with the handicap grid (q columns x q^2 rows;
/// every B vertex adjacent to the whole grid, every A vertex to q/2 columns,
/// O_i to column i), pendant vertices that make everything except the cross
/// elements high-potential, perturbed A costs, and quota 2*q^3*gamma + q.
/// Requires even q.
Instance handicap_instance(const MestreParams& m, const GadgetParams& g);

/// Index helpers into the handicap/mestre layouts (also used by tests).
struct MestreLayout {
  int q = 0;
  NodeId root = 0;
  std::vector<NodeId> a_sets, b_sets, o_sets;
  std::vector<NodeId> grid_elements;   // q^3
  std::vector<NodeId> cross_elements;  // 2q, crosses j and j+q share B_j
  std::vector<NodeId> gadget;          // q^3 for handicap, empty for mestre
};
MestreLayout mestre_layout(const MestreParams& p, bool with_gadget, int gamma);

/// Random tree on n nodes (node i attaches to a random smaller node), root
/// 0, uniform costs in [lo, hi], unit profits, quota n.
Instance random_tree_instance(int n, std::uint64_t seed, double lo, double hi);

}  // namespace nwkmst
