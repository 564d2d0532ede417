// Exact knapsack solvers used as pricing oracles.  All of them run the
// same depth-first branch and bound with a fractional (greedy) upper
// bound; bounded and binary variants differ only in the per-item count
// bounds, and the capped variant additionally rejects incumbents whose
// reduced cost exceeds a given cap.
#pragma once

#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "geombp/core.hpp"

namespace geombp {

using PatternSet = std::unordered_set<Pattern, PatternHash>;

struct PricingProblem {
  // Item values.  Nonpositive values are tolerated (free equality-row
  // duals can dip below zero) but such items never enter a maximizer.
  std::vector<double> profits;
  std::vector<int> weights;          // positive integer weights
  int capacity = 0;                  // positive integer
  std::vector<int> bounds;           // per-item count bounds, >= 0
  std::optional<double> profit_cap;  // reduced-cost cap: profit - 1 <= cap + 1e-12
};

struct KnapsackResult {
  Pattern counts;
  double profit = 0.0;
  double reduced_cost = -1.0;  // profit - 1
};

// Count bounds are honoured as given (clipped by capacity internally).
KnapsackResult solve_bounded(const PricingProblem& p);

// Same problem with every bound clipped to at most one copy.
KnapsackResult solve_binary(const PricingProblem& p);

// Maximum achievable fill: profits equal weights.  Returns counts only.
Pattern solve_subset_sum(std::span<const int> weights, std::span<const int> bounds, int capacity);

// Bounded knapsack whose incumbents must satisfy the reduced-cost cap.
// Returns the zero pattern with reduced_cost -1 when nothing fits under
// the cap.  profit_cap must be present.
KnapsackResult solve_2d_decrement(const PricingProblem& p);

// Maximum-fill pattern within bounds that is not in `exclude`; the zero
// pattern when every nonzero feasible pattern is excluded.  Used to keep
// branching going when the usual pricing path is unavailable.
Pattern max_fill_excluding(std::span<const int> weights, std::span<const int> bounds, int capacity,
                           const PatternSet& exclude);

}  // namespace geombp
