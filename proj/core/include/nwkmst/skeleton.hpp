// skeleton.hpp - skeleton guessing, epsilon-distance testing and pruning.

#pragma once

#include <optional>
#include <vector>

#include "nwkmst/instance.hpp"

namespace nwkmst {

/// A guessed skeleton: a vertex set W with |W| <= ceil(1/epsilon) together
/// with the current OPT estimate.
struct SkeletonGuess {
  std::vector<NodeId> skeleton;  // W, sorted; may be empty
  Weight opt_guess = 0;          // > 0
  double epsilon = 1.0;          // in (0,1]

  Weight budget() const { return epsilon * opt_guess; }
};

/// True iff v has a path to some node of targets whose node weight,
/// excluding the reached endpoint, is at most budget (+ tolerance).
/// Unreachable nodes are not epsilon-distant; v in targets always is.
bool is_eps_distant(const Instance& inst, NodeId v,
                    const std::vector<NodeId>& targets, Weight budget);

/// Induced sub-instance on the epsilon-distant nodes, ids remapped densely.
struct PrunedInstance {
  Instance inst;
  std::vector<NodeId> to_original;  // pruned id -> original id
  std::vector<NodeId> skeleton;     // W in pruned ids
};

/// Keeps { v : is_eps_distant(v, W + {r}, budget) } + {r} and remaps.
/// Returns nullopt when the pruned instance disconnects some skeleton node
/// from the root, which tells the enumeration loop to skip this guess.
std::optional<PrunedInstance> prune_instance(const Instance& inst,
                                             const SkeletonGuess& guess);

/// OPT estimates as powers of (1+epsilon) covering [min nonzero node cost,
/// total node cost]; the last value is >= the total. Falls back to kTau when
/// every cost is zero.
std::vector<Weight> opt_guess_ladder(const Instance& inst, double epsilon);

/// Every pair (W', opt_guess) with |W'| <= min(ceil(1/epsilon), max_skeleton)
/// and opt_guess from the ladder. W' = {} is always present. The returned
/// vector can be split freely across workers; each guess drives an
/// independent solve.
std::vector<SkeletonGuess> enumerate_guesses(const Instance& inst, double epsilon,
                                             int max_skeleton);

/// Constructive skeleton for a known tree (testing aid): bottom-up traversal
/// that cuts a subtree whenever some in-subtree path from a node to the
/// subtree head exceeds epsilon*opt, collecting the heads. The result W has
/// |W| <= ceil(1/epsilon) and every tree node is epsilon-distant to W + {r}
/// along tree edges.
std::vector<NodeId> decompose_skeleton(const Instance& inst, const Solution& tree,
                                       double epsilon, Weight opt);

/// Checks the decompose_skeleton guarantee along tree edges only.
bool tree_eps_distance_ok(const Instance& inst, const Solution& tree,
                          const std::vector<NodeId>& skeleton, Weight budget);

}  // namespace nwkmst
