// solver.hpp - the full pipeline: guess enumeration -> pruning -> lambda
// binary search -> merging -> best-of selection, plus the verification and
// benchmark entry points used by the CLI.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nwkmst/instance.hpp"
#include "nwkmst/lagrangian.hpp"
#include "nwkmst/merge.hpp"
#include "nwkmst/oracle.hpp"
#include "nwkmst/skeleton.hpp"

namespace nwkmst {

enum class SkeletonMode { heuristic, exhaustive };

struct SolveConfig {
  double epsilon = 0.5;   // in (0, 1]
  double epsilon2 = 0;    // <= 0 means "same as epsilon"
  int max_skeleton = 2;
  SkeletonMode skeleton_mode = SkeletonMode::heuristic;
  std::ostream* trace = nullptr;
  std::uint64_t seed = 0;
  int oracle_cap = kOracleCapDefault;

  double eps2() const { return epsilon2 > 0 ? epsilon2 : epsilon; }
  void check() const;
};

struct LagrangeRecord {
  Weight lambda1 = 0, lambda2 = 0;
  std::size_t size_t1 = 0, size_t2 = 0;
  double alpha2 = 0;
  Weight ds1 = 0, ds2 = 0;
  Weight convex_lhs = 0, bound_rhs = 0;
};

struct MergeRecord {
  Profit q = 0;
  int levels = 0;
  std::vector<NodeId> centers;
  std::size_t picked_size = 0;
  Weight picked_cost = 0, connection_cost = 0;
};

/// Invariant outcomes aggregated over every guess and probe of a solve.
struct SolveChecks {
  Weight max_lmp_violation = -kInfWeight;  // lhs - 3*DS; <= ~0 on planar inputs
  Weight max_load_violation = 0;           // dual feasibility, first constraint
  Weight min_potential = 0;                // dual feasibility, second constraint
  bool merge_bounds_ok = true;             // profit >= q, cost chain, level cap
  int merges_checked = 0;                  // merge plans built and validated
  bool exact_chain_ok = true;              // 3-approximation check on exact trees
  int monotonicity_violations = 0;
  bool center_anomaly = false;
  bool connection_over_budget = false;
};

struct SolveReport {
  bool feasible = false;
  Solution best;
  std::string source;  // "exact" | "sol1" | "sol2"
  SkeletonGuess best_guess;
  int guesses_total = 0;
  int guesses_feasible = 0;
  std::optional<LagrangeRecord> lagrange;  // winning guess, pair case
  std::optional<MergeRecord> merge;        // winning guess, pair case
  SolveChecks checks;
  Weight dual_lower_bound = -kInfWeight;  // max DS - lambda(P - quota), unpruned
  std::int64_t millis = 0;
  nlohmann::json config_echo;  // the knobs the report was produced with

  nlohmann::json to_json() const;
};

/// Runs the whole pipeline and keeps the globally cheapest solution across
/// guesses. Heuristic mode tries only the empty skeleton; exhaustive mode
/// enumerates subsets up to min(ceil(1/eps), max_skeleton).
SolveReport solve(const Instance& inst, const SolveConfig& cfg);

struct VerifyReport {
  bool pass = false;
  bool oracle_skipped = false;
  double ratio = 0;
  Weight opt_cost = 0;
  std::vector<std::string> failures;
  SolveReport solve_report;

  nlohmann::json to_json() const;
};

/// solve + oracle + every invariant check; the ratio is asserted against
/// 4 + 5*sqrt(epsilon). Instances above the oracle cap skip the ratio part
/// with a warning instead of failing.
VerifyReport verify(const Instance& inst, const SolveConfig& cfg);

std::string bench_csv_header();
/// One CSV row: instance,n,quota,epsilon,ratio,lower_bound_kind,millis.
std::string bench_csv_row(const std::string& name, const Instance& inst,
                          const SolveConfig& cfg);

}  // namespace nwkmst
