// Exact solver: depth-first branch and price with geometric diving.
// Every node prices columns against its residual demands; branching
// fixes the top-ranked fractional bin on the left and forbids it on the
// right, so both children partition the node exactly.
#pragma once

#include "geombp/colgen.hpp"
#include "geombp/diving.hpp"

namespace geombp {

struct SolverConfig {
  Criterion criterion = Criterion::L2;
  bool sectional = true;        // cheap binary pricing pass before exact pricing
  double delta0 = 1e-5;         // initial cap offset when routing around forbidden patterns
  double time_limit_seconds = 60.0;  // <= 0 disables the limit
  int batch_stride = 3;         // dive every this many depths; 0 disables diving
  BatchMode batch_mode = BatchMode::Inequality;
  BatchSense batch_sense = BatchSense::Maximize;
  long batch_node_cap = 1000000;
  bool root_only = false;  // stop after the root node (bound study mode)
  double eps_rc = 1e-9;
  double eps_int = 1e-6;
};

struct SolveCounters {
  long n_col_root = 0;    // columns generated at the root
  long n_exact_root = 0;  // exact pricing solves at the root
  long n_total_node = 0;  // nodes taken off the stack
  long n_poll_node = 0;   // nodes that needed capped pricing reruns
};

struct SolveReport {
  int optimum = 0;
  Solution solution;
  bool proved_optimal = false;
  int best_bound = 0;   // certified lower bound on the optimum
  int root_bound = 0;   // rounded-up root LP value
  bool root_bound_certified = false;
  SolveCounters counters;
  double wall_seconds = 0.0;
  double root_pricing_seconds = 0.0;
};

enum class RootGap { Closed, Open };

// Closed when the certified root bound already matches the incumbent,
// so no branching is needed.
RootGap root_gap_check(const ColGenOutcome& root, int incumbent);

struct NodeBound {
  int bound = 0;
  bool certified = false;
};

// Fixed bins plus the rounded-up node LP value; certified only when the
// node's pricing closed with proof.
NodeBound node_bound(int fixed_count, const ColGenOutcome& outcome);

SolveReport solve(const Instance& inst, const SolverConfig& cfg = {});

}  // namespace geombp
