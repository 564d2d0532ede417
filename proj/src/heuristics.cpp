#include "geombp/heuristics.hpp"

#include <algorithm>
#include <numeric>

#include "geombp/knapsack.hpp"

namespace geombp {

namespace {

// Working bin representation before merging into (pattern, load) form.
struct OpenBin {
  std::vector<int> counts;
  int residual;
};

Solution merge_bins(const Instance& inst, const std::vector<OpenBin>& open) {
  Solution sol;
  for (const OpenBin& ob : open) {
    Pattern p(ob.counts);
    if (p.is_zero()) continue;
    auto it = std::find_if(sol.bins.begin(), sol.bins.end(),
                           [&](const Bin& b) { return b.pattern == p; });
    if (it == sol.bins.end()) {
      sol.bins.push_back({std::move(p), 1});
    } else {
      it->load += 1;
    }
  }
  (void)inst;
  return sol;
}

int half_threshold(int capacity) { return (capacity + 1) / 2; }

}  // namespace

Solution best_fit_decreasing(const Instance& inst) {
  const int n = inst.size();
  std::vector<OpenBin> open;
  for (int i = 0; i < n; ++i) {
    for (int u = 0; u < inst.demand(i); ++u) {
      int best = -1;
      for (size_t b = 0; b < open.size(); ++b) {
        if (open[b].residual < inst.weight(i)) continue;
        if (best < 0 || open[b].residual < open[static_cast<size_t>(best)].residual) {
          best = static_cast<int>(b);
        }
      }
      if (best < 0) {
        open.push_back({std::vector<int>(static_cast<size_t>(n), 0), inst.capacity()});
        best = static_cast<int>(open.size()) - 1;
      }
      open[static_cast<size_t>(best)].counts[static_cast<size_t>(i)] += 1;
      open[static_cast<size_t>(best)].residual -= inst.weight(i);
    }
  }
  return merge_bins(inst, open);
}

Solution first_fit_half(const Instance& inst) {
  const int n = inst.size();
  const int big = half_threshold(inst.capacity());
  std::vector<OpenBin> open;
  for (int i = 0; i < n; ++i) {
    if (inst.weight(i) < big) continue;
    for (int u = 0; u < inst.demand(i); ++u) {
      OpenBin ob{std::vector<int>(static_cast<size_t>(n), 0), inst.capacity() - inst.weight(i)};
      ob.counts[static_cast<size_t>(i)] = 1;
      open.push_back(std::move(ob));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (inst.weight(i) >= big) continue;
    for (int u = 0; u < inst.demand(i); ++u) {
      size_t b = 0;
      while (b < open.size() && open[b].residual < inst.weight(i)) ++b;
      if (b == open.size()) {
        open.push_back({std::vector<int>(static_cast<size_t>(n), 0), inst.capacity()});
      }
      open[b].counts[static_cast<size_t>(i)] += 1;
      open[b].residual -= inst.weight(i);
    }
  }
  return merge_bins(inst, open);
}

Solution subset_sum_half(const Instance& inst) {
  const int n = inst.size();
  const int big = half_threshold(inst.capacity());
  std::vector<int> weights = inst.weights();
  std::vector<int> remaining = inst.demands();
  std::vector<OpenBin> open;
  for (int i = 0; i < n; ++i) {
    if (inst.weight(i) < big) continue;
    for (int u = 0; u < inst.demand(i); ++u) {
      OpenBin ob{std::vector<int>(static_cast<size_t>(n), 0), inst.capacity() - inst.weight(i)};
      ob.counts[static_cast<size_t>(i)] = 1;
      open.push_back(std::move(ob));
    }
    remaining[static_cast<size_t>(i)] = 0;
  }

  // stage 1: top up seeded bins, widest gap first
  std::vector<size_t> order(open.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return open[a].residual > open[b].residual; });
  for (size_t idx : order) {
    OpenBin& ob = open[idx];
    if (ob.residual <= 0) continue;
    Pattern fill = solve_subset_sum(weights, remaining, ob.residual);
    for (int i = 0; i < n; ++i) {
      int c = fill.counts[static_cast<size_t>(i)];
      ob.counts[static_cast<size_t>(i)] += c;
      ob.residual -= c * weights[static_cast<size_t>(i)];
      remaining[static_cast<size_t>(i)] -= c;
    }
  }

  // stage 2: fresh bins for whatever is left
  while (std::any_of(remaining.begin(), remaining.end(), [](int d) { return d > 0; })) {
    Pattern fill = solve_subset_sum(weights, remaining, inst.capacity());
    OpenBin ob{std::vector<int>(static_cast<size_t>(n), 0), inst.capacity()};
    for (int i = 0; i < n; ++i) {
      int c = fill.counts[static_cast<size_t>(i)];
      ob.counts[static_cast<size_t>(i)] = c;
      ob.residual -= c * weights[static_cast<size_t>(i)];
      remaining[static_cast<size_t>(i)] -= c;
    }
    open.push_back(std::move(ob));
  }
  return merge_bins(inst, open);
}

int lower_bound(const Instance& inst) {
  const long long c = inst.capacity();
  long long l1 = (inst.total_weight() + c - 1) / c;

  // threshold scan: for each K, items above c-K and in (c/2, c-K] each
  // force a bin; items in [K, c/2] must fit into the slack those bins
  // leave or force extra bins
  std::vector<int> cand = {0};
  for (const Item& it : inst.items()) {
    for (int k : {it.weight, it.weight + 1, inst.capacity() - it.weight,
                  inst.capacity() - it.weight + 1}) {
      if (k >= 0 && 2 * k <= inst.capacity()) cand.push_back(k);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  long long best = l1;
  for (int k : cand) {
    long long forced = 0;   // units with weight > c/2 and weight >= K side
    long long slack = 0;    // free room in bins forced by (c/2, c-K] units
    long long mid = 0;      // total weight of units in [K, c/2]
    for (const Item& it : inst.items()) {
      long long w = it.weight;
      long long d = it.demand;
      if (2 * w > c) {
        forced += d;
        if (w <= c - k) slack += d * (c - w);
      } else if (w >= k) {
        mid += d * w;
      }
    }
    long long extra = mid - slack;
    long long bound = forced + (extra > 0 ? (extra + c - 1) / c : 0);
    best = std::max(best, bound);
  }
  return static_cast<int>(best);
}

BoundPair compute_bounds(const Instance& inst) {
  BoundPair bp;
  bp.lb = lower_bound(inst);
  Solution cands[] = {best_fit_decreasing(inst), first_fit_half(inst), subset_sum_half(inst)};
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (cands[i].objective() < cands[best].objective()) best = i;
  }
  bp.ub_solution = std::move(cands[best]);
  bp.ub = bp.ub_solution.objective();
  return bp;
}

}  // namespace geombp
