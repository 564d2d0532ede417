// Geometric bin scoring and batch diving.  Fractional bins are ranked by
// a generalised-mean statistic of their item weights (or by their LP
// value), and a 0/1 selection over the ranked bins decides which group
// of bins a dive fixes at once.
#pragma once

#include <span>
#include <vector>

#include "geombp/core.hpp"
#include "geombp/simplex.hpp"

namespace geombp {

enum class Criterion { HighestValue, L0, L2, Ls };

// Generalised mean sum(w^p) / sum(w^(p-1)): p=0 is the harmonic mean,
// p=1 the arithmetic, p=2 the contraharmonic.  Weights must be positive;
// throws std::domain_error on an empty multiset.
double lehmer_mean(std::span<const double> w, double p);

// integral over p in [0,2] of p * lehmer_mean(w, p); equals 2w for a
// single-element multiset
double ls_integral(std::span<const double> w);

struct ScoredBin {
  int column = -1;     // index into the pool that produced the bin
  Pattern pattern;
  double value = 0.0;  // LP value of the column
  double score = 0.0;
};

// Columns with value > eps ranked by decreasing score; score ties are
// broken toward the lexicographically greater pattern.  Empty when no
// column carries value.
std::vector<ScoredBin> score_bins(const LpSolution& lp, std::span<const Pattern> columns,
                                  std::span<const int> weights, Criterion crit,
                                  double eps_int = 1e-6);

enum class BatchMode { Equality, Inequality };
enum class BatchSense { Maximize, Minimize };

struct BatchSelection {
  std::vector<ScoredBin> chosen;
  BatchMode mode_used = BatchMode::Inequality;
  bool feasible = false;  // equality mode can have no exact cover
  bool optimal = true;    // false when the node cap stopped the search
};

// Exact 0/1 selection optimising the summed score subject to the
// residual demands: equality mode must cover them exactly (and falls
// back to inequality mode when no exact cover exists), inequality mode
// must not exceed them.  Depth-first branch and bound over candidates in
// decreasing score order with a remaining-score bound.
BatchSelection batch_dive(std::span<const ScoredBin> candidates,
                          std::span<const int> residual_demands, BatchMode mode,
                          BatchSense sense = BatchSense::Maximize, long node_cap = 1000000);

// scoring and selection in one step
BatchSelection batch_dive(const LpSolution& lp, std::span<const Pattern> columns,
                          std::span<const int> weights, std::span<const int> residual_demands,
                          Criterion crit, BatchMode mode, BatchSense sense = BatchSense::Maximize,
                          long node_cap = 1000000, double eps_int = 1e-6);

}  // namespace geombp
