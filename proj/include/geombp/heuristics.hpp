// Opening heuristics and combinatorial lower bounds.  These give the
// search its first incumbent and the bound used to certify instances
// that close without branching.
#pragma once

#include "geombp/core.hpp"

namespace geombp {

// Units in decreasing weight order, each into the feasible bin with the
// least residual capacity (new bin when none fits).
Solution best_fit_decreasing(const Instance& inst);

// Every unit of weight >= ceil(c/2) opens its own bin; remaining units
// go first-fit, in decreasing weight order, over bins in opening order.
Solution first_fit_half(const Instance& inst);

// Same seeding, then each seeded bin's residual is filled by an exact
// subset-sum maximiser (largest residual first); leftovers fill fresh
// bins the same way.
Solution subset_sum_half(const Instance& inst);

// max(ceil(total weight / c), threshold-scan bound).  The second term
// scans every weight-induced threshold K and counts bins forced by items
// above c-K plus the overflow of mid-sized items into their slack.
int lower_bound(const Instance& inst);

struct BoundPair {
  int lb = 0;
  int ub = 0;
  Solution ub_solution;
};

// Best of the three heuristics against the combinatorial lower bound.
BoundPair compute_bounds(const Instance& inst);

}  // namespace geombp
