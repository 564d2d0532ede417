// Column generation for the set-partitioning master.  Prices patterns
// against the LP duals until none has positive reduced cost, routing
// around forbidden patterns with capped pricing solves.
#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "geombp/heuristics.hpp"
#include "geombp/knapsack.hpp"
#include "geombp/simplex.hpp"

namespace geombp {

struct ColGenConfig {
  // cheaper all-or-nothing pricing first, exact bounded pricing only to
  // close the loop
  bool sectional = true;
  double delta0 = 1e-5;     // initial cap offset for forbidden-pattern reruns
  double delta_cap = 1e-2;  // offset never grows past this
  double eps_rc = 1e-9;     // reduced-cost optimality threshold
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct ColGenStats {
  long columns_generated = 0;
  long exact_pricing_calls = 0;
  long decrement_solves = 0;  // capped reruns forced by forbidden patterns
  double pricing_seconds = 0.0;
};

struct ColGenOutcome {
  enum class Status { Proved, Premature, Infeasible };
  Status status = Status::Premature;
  bool proven_optimal = false;  // bound certified: no routing ever widened the cap
  double z_lp = 0.0;
  int lower_bound = 0;  // ceil(z_lp) when proven, still a ceil of the last LP otherwise
  LpSolution lp;
  ColGenStats stats;
  std::string note;  // why a run ended premature
};

// Master seeded with every maximal singleton pattern plus the bins of a
// subset-sum heuristic solution.
RestrictedMaster initialize_pool(const Instance& inst);

struct NodeMaster {
  RestrictedMaster master;
  // rows with demand left whose singleton patterns are all forbidden;
  // non-empty means LP feasibility is not guaranteed
  std::vector<int> uncovered_rows;
};

// Master for a search node: inherited pool filtered to the residual
// demands and the forbidden set, plus a singleton per positive row so
// the LP stays feasible whenever one exists.
NodeMaster make_node_master(const std::vector<int>& weights, int capacity,
                            const std::vector<int>& residual_demands,
                            std::span<const Pattern> pool, const PatternSet& forbidden);

ColGenOutcome generate_columns(RestrictedMaster& master, const PatternSet& forbidden,
                               const ColGenConfig& cfg = {});

}  // namespace geombp
