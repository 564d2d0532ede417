// Brute-force reference implementations and deterministic generators
// shared by the test binaries.  Everything here favours obviousness over
// speed and is only run on instances small enough to enumerate.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "geombp/core.hpp"
#include "geombp/diving.hpp"
#include "geombp/knapsack.hpp"

namespace testutil {

using geombp::Instance;
using geombp::Pattern;

namespace detail {

inline void patterns_rec(std::span<const int> w, std::span<const int> b, int residual, size_t i,
                         std::vector<int>& cur, std::vector<Pattern>& out) {
  if (i == w.size()) {
    if (std::any_of(cur.begin(), cur.end(), [](int x) { return x > 0; })) out.emplace_back(cur);
    return;
  }
  const int top = std::min(b[i], residual / w[i]);
  for (int k = 0; k <= top; ++k) {
    cur[i] = k;
    patterns_rec(w, b, residual - k * w[i], i + 1, cur, out);
  }
  cur[i] = 0;
}

}  // namespace detail

// Every nonzero count vector within the bounds that fits the capacity.
inline std::vector<Pattern> enumerate_patterns(std::span<const int> weights,
                                               std::span<const int> bounds, int capacity) {
  std::vector<Pattern> out;
  std::vector<int> cur(weights.size(), 0);
  detail::patterns_rec(weights, bounds, capacity, 0, cur, out);
  return out;
}

// Exact maximum of sum(profit * count) over enumerate_patterns plus the
// zero pattern; with a cap, only patterns with profit - 1 <= cap + 1e-12
// count.  Returns the best profit (0 when only the zero pattern fits).
inline double brute_knapsack(std::span<const double> profits, std::span<const int> weights,
                             std::span<const int> bounds, int capacity,
                             std::optional<double> cap = std::nullopt) {
  double best = 0.0;
  bool found = !cap || -1.0 <= *cap + 1e-12;  // the zero pattern
  if (!found) best = -std::numeric_limits<double>::infinity();
  for (const Pattern& p : enumerate_patterns(weights, bounds, capacity)) {
    double profit = 0.0;
    for (size_t i = 0; i < profits.size(); ++i) profit += profits[i] * p.counts[i];
    if (cap && profit - 1.0 > *cap + 1e-12) continue;
    if (!found || profit > best) {
      best = profit;
      found = true;
    }
  }
  return found ? best : 0.0;
}

// Minimum number of bins by depth-first search over the patterns that
// cover the first unpacked row, memoised on the residual demand vector.
inline int min_bins(const Instance& inst) {
  const std::vector<int> w = inst.weights();
  std::map<std::vector<int>, int> memo;

  struct Rec {
    const std::vector<int>& w;
    int c;
    std::map<std::vector<int>, int>& memo;

    int operator()(std::vector<int>& residual) {
      size_t first = residual.size();
      for (size_t i = 0; i < residual.size(); ++i) {
        if (residual[i] > 0) {
          first = i;
          break;
        }
      }
      if (first == residual.size()) return 0;
      if (auto it = memo.find(residual); it != memo.end()) return it->second;

      int best = 1 << 24;
      std::vector<int> counts(residual.size(), 0);
      fill(first, c, residual, counts, first, best);
      memo.emplace(residual, best);
      return best;
    }

    // enumerate bins that include row `anchor` at least once
    void fill(size_t i, int space, std::vector<int>& residual, std::vector<int>& counts,
              size_t anchor, int& best) {
      if (i == residual.size()) {
        if (counts[anchor] == 0) return;
        for (size_t k = 0; k < counts.size(); ++k) residual[k] -= counts[k];
        const int sub = (*this)(residual);
        for (size_t k = 0; k < counts.size(); ++k) residual[k] += counts[k];
        best = std::min(best, 1 + sub);
        return;
      }
      const int top = std::min(residual[i], space / w[i]);
      const int lo = i == anchor ? 1 : 0;
      if (lo > top) return;
      for (int k = top; k >= lo; --k) {
        counts[i] = k;
        fill(i + 1, space - k * w[i], residual, counts, anchor, best);
      }
      counts[i] = 0;
    }
  } rec{w, inst.capacity(), memo};

  std::vector<int> residual = inst.demands();
  return rec(residual);
}

// Optimal value of  min sum(lambda) : sum_k x_k lambda_k = d, lambda >= 0
// by enumerating every m-subset of columns as a candidate basis and
// keeping the best feasible one.  nullopt when no basis is feasible.
inline std::optional<double> lp_basis_oracle(const std::vector<Pattern>& cols,
                                             const std::vector<int>& demands) {
  const size_t m = demands.size();
  if (cols.size() < m) return std::nullopt;
  std::vector<size_t> pick(m);
  for (size_t i = 0; i < m; ++i) pick[i] = i;
  std::optional<double> best;

  const auto try_basis = [&]() {
    std::vector<double> a(m * (m + 1), 0.0);
    for (size_t r = 0; r < m; ++r) {
      for (size_t k = 0; k < m; ++k) a[r * (m + 1) + k] = cols[pick[k]].counts[r];
      a[r * (m + 1) + m] = demands[r];
    }
    for (size_t col = 0; col < m; ++col) {  // Gaussian elimination, partial pivot
      size_t piv = col;
      for (size_t r = col + 1; r < m; ++r)
        if (std::abs(a[r * (m + 1) + col]) > std::abs(a[piv * (m + 1) + col])) piv = r;
      if (std::abs(a[piv * (m + 1) + col]) < 1e-9) return;  // singular, skip
      if (piv != col)
        for (size_t k = 0; k <= m; ++k) std::swap(a[piv * (m + 1) + k], a[col * (m + 1) + k]);
      for (size_t r = 0; r < m; ++r) {
        if (r == col) continue;
        const double f = a[r * (m + 1) + col] / a[col * (m + 1) + col];
        if (f == 0.0) continue;
        for (size_t k = col; k <= m; ++k) a[r * (m + 1) + k] -= f * a[col * (m + 1) + k];
      }
    }
    double z = 0.0;
    for (size_t r = 0; r < m; ++r) {
      const double lam = a[r * (m + 1) + m] / a[r * (m + 1) + r];
      if (lam < -1e-9) return;
      z += lam;
    }
    if (!best || z < *best - 1e-12) best = z;
  };

  while (true) {
    try_basis();
    // next combination
    size_t i = m;
    while (i > 0) {
      --i;
      if (pick[i] + (m - i) < cols.size()) {
        ++pick[i];
        for (size_t k = i + 1; k < m; ++k) pick[k] = pick[k - 1] + 1;
        break;
      }
      if (i == 0) return best;
    }
  }
}

// Composite trapezoid for the integral of p * lehmer_mean over [0, 2].
inline double ls_trapezoid(std::span<const double> w, int points = 100001) {
  const double h = 2.0 / (points - 1);
  double acc = 0.0;
  for (int k = 0; k < points; ++k) {
    const double p = k * h;
    const double f = p * geombp::lehmer_mean(w, p);
    acc += (k == 0 || k == points - 1) ? 0.5 * f : f;
  }
  return acc * h;
}

// n <= 8 distinct weights after merging, total units <= 12, c <= 60
inline Instance random_small_instance(std::mt19937& g) {
  std::uniform_int_distribution<int> cap_d(10, 60);
  const int c = cap_d(g);
  std::uniform_int_distribution<int> units_d(1, 12);
  const int units = units_d(g);
  std::uniform_int_distribution<int> w_d(1, c);
  std::vector<int> raw;
  raw.reserve(static_cast<size_t>(units));
  for (int k = 0; k < units; ++k) raw.push_back(w_d(g));
  // cap the distinct count at 8 by reusing earlier draws
  std::vector<int> distinct;
  for (int& v : raw) {
    if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) {
      if (distinct.size() == 8) {
        std::uniform_int_distribution<size_t> pick(0, distinct.size() - 1);
        v = distinct[pick(g)];
      } else {
        distinct.push_back(v);
      }
    }
  }
  return geombp::canonicalize(c, raw);
}

// n <= 12 items, bounds <= 3, non-negative profits with occasional zeros
inline geombp::PricingProblem random_pricing(std::mt19937& g) {
  geombp::PricingProblem p;
  std::uniform_int_distribution<int> n_d(1, 12), cap_d(20, 100), b_d(0, 3);
  const int n = n_d(g);
  p.capacity = cap_d(g);
  std::uniform_int_distribution<int> w_d(std::max(1, p.capacity / 8), p.capacity);
  std::uniform_real_distribution<double> pi_d(0.0, 1.5);
  std::bernoulli_distribution zero_d(0.15);
  for (int i = 0; i < n; ++i) {
    p.weights.push_back(w_d(g));
    p.bounds.push_back(b_d(g));
    p.profits.push_back(zero_d(g) ? 0.0 : pi_d(g));
  }
  return p;
}

inline std::vector<double> random_multiset(std::mt19937& g) {
  std::uniform_int_distribution<size_t> n_d(1, 8);
  std::uniform_real_distribution<double> w_d(1.0, 1000.0);
  std::vector<double> w(n_d(g));
  for (double& x : w) x = w_d(g);
  return w;
}

}  // namespace testutil
