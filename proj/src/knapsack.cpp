#include "geombp/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geombp {

namespace {

constexpr double kProfitTie = 1e-9;   // profit comparisons
constexpr double kCapSlack = 1e-12;   // reduced-cost cap test slack

struct SearchItem {
  int orig;
  double profit;
  int weight;
  int bound;
};

// One DFS engine for every variant.  Items carry positive profits only;
// anything with profit <= 0 never improves the objective and stays at
// count zero.  Counts are explored high-first so heavy prefixes are seen
// early, and equal-profit incumbents are settled by lexicographic order
// over the counts in input order (greater wins).
class Searcher {
 public:
  Searcher(std::span<const double> profits, std::span<const int> weights,
           std::span<const int> bounds, int capacity, std::optional<double> cap,
           const PatternSet* exclude)
      : n_orig_(profits.size()), capacity_(capacity), cap_(cap), exclude_(exclude) {
    items_.reserve(n_orig_);
    for (size_t i = 0; i < n_orig_; ++i) {
      int b = std::min(bounds[i], weights[i] > 0 ? capacity / weights[i] : 0);
      if (profits[i] > 0.0 && b > 0 && weights[i] > 0) {
        items_.push_back({static_cast<int>(i), profits[i], weights[i], b});
      }
    }
    std::stable_sort(items_.begin(), items_.end(), [](const SearchItem& a, const SearchItem& b) {
      double lhs = a.profit * b.weight;
      double rhs = b.profit * a.weight;
      if (lhs != rhs) return lhs > rhs;
      return a.orig < b.orig;
    });
    cur_orig_.assign(n_orig_, 0);
    profits_.assign(profits.begin(), profits.end());
  }

  // Stops as soon as an accepted incumbent reaches this profit.
  void set_perfect(double p) { perfect_ = p; }

  KnapsackResult run() {
    dfs(0, capacity_, 0.0);
    KnapsackResult r;
    if (have_best_) {
      r.counts = Pattern(best_counts_);
      r.profit = best_profit_;
    } else {
      r.counts = Pattern(std::vector<int>(n_orig_, 0));
      r.profit = 0.0;
    }
    r.reduced_cost = r.profit - 1.0;
    return r;
  }

 private:
  double dantzig_bound(size_t k, int residual) const {
    double b = 0.0;
    for (size_t j = k; j < items_.size() && residual > 0; ++j) {
      const SearchItem& it = items_[j];
      long long full = std::min<long long>(it.bound, residual / it.weight);
      b += static_cast<double>(full) * it.profit;
      residual -= static_cast<int>(full) * it.weight;
      if (full < it.bound) {
        b += it.profit * static_cast<double>(residual) / it.weight;
        break;
      }
    }
    return b;
  }

  void consider_leaf(double acc) {
    if (cap_ && acc - 1.0 > *cap_ + kCapSlack) return;
    bool better = !have_best_ || acc > best_profit_ + kProfitTie;
    bool tie = have_best_ && std::abs(acc - best_profit_) <= kProfitTie &&
               cur_orig_ > best_counts_;
    if (!better && !tie) return;
    if (exclude_ && !is_zero(cur_orig_) && exclude_->count(Pattern(cur_orig_)) > 0) return;
    best_counts_ = cur_orig_;
    // report the profit recomputed in input order so it matches any
    // external recomputation bit for bit
    double canonical = 0.0;
    for (size_t i = 0; i < n_orig_; ++i) canonical += profits_[i] * best_counts_[i];
    best_profit_ = canonical;
    have_best_ = true;
    if (perfect_ && best_profit_ >= *perfect_ - kCapSlack) done_ = true;
  }

  static bool is_zero(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; });
  }

  void dfs(size_t k, int residual, double acc) {
    if (done_) return;
    if (k == items_.size()) {
      consider_leaf(acc);
      return;
    }
    if (have_best_ && acc + dantzig_bound(k, residual) <= best_profit_ + kProfitTie) return;
    const SearchItem& it = items_[k];
    int top = std::min(it.bound, residual / it.weight);
    for (int c = top; c >= 0 && !done_; --c) {
      double acc2 = acc + static_cast<double>(c) * it.profit;
      // committed profit only grows below this node, so a committed cap
      // violation dooms the whole subtree for this count
      if (cap_ && acc2 - 1.0 > *cap_ + kCapSlack) continue;
      cur_orig_[static_cast<size_t>(it.orig)] = c;
      dfs(k + 1, residual - c * it.weight, acc2);
      cur_orig_[static_cast<size_t>(it.orig)] = 0;
    }
  }

  size_t n_orig_;
  int capacity_;
  std::optional<double> cap_;
  const PatternSet* exclude_;
  std::vector<SearchItem> items_;
  std::vector<double> profits_;
  std::vector<int> cur_orig_;
  std::vector<int> best_counts_;
  double best_profit_ = 0.0;
  bool have_best_ = false;
  bool done_ = false;
  std::optional<double> perfect_;
};

void check_problem(const PricingProblem& p) {
  size_t n = p.profits.size();
  if (p.weights.size() != n || p.bounds.size() != n) {
    throw std::invalid_argument("pricing problem arrays disagree in length");
  }
  if (p.capacity <= 0) throw std::invalid_argument("pricing capacity must be positive");
  for (size_t i = 0; i < n; ++i) {
    if (p.weights[i] <= 0) throw std::invalid_argument("pricing weights must be positive");
    if (p.bounds[i] < 0) throw std::invalid_argument("pricing bounds must be non-negative");
  }
}

}  // namespace

KnapsackResult solve_bounded(const PricingProblem& p) {
  check_problem(p);
  Searcher s(p.profits, p.weights, p.bounds, p.capacity, p.profit_cap, nullptr);
  return s.run();
}

KnapsackResult solve_binary(const PricingProblem& p) {
  check_problem(p);
  std::vector<int> clipped(p.bounds.size());
  for (size_t i = 0; i < p.bounds.size(); ++i) clipped[i] = std::min(p.bounds[i], 1);
  Searcher s(p.profits, p.weights, clipped, p.capacity, p.profit_cap, nullptr);
  return s.run();
}

Pattern solve_subset_sum(std::span<const int> weights, std::span<const int> bounds, int capacity) {
  if (capacity <= 0) return Pattern(std::vector<int>(weights.size(), 0));
  std::vector<double> profits(weights.size());
  long long total = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    profits[i] = static_cast<double>(weights[i]);
    total += static_cast<long long>(weights[i]) * std::max(bounds[i], 0);
  }
  Searcher s(profits, weights, bounds, capacity, std::nullopt, nullptr);
  s.set_perfect(static_cast<double>(std::min<long long>(capacity, total)));
  return s.run().counts;
}

KnapsackResult solve_2d_decrement(const PricingProblem& p) {
  check_problem(p);
  if (!p.profit_cap) throw std::invalid_argument("solve_2d_decrement requires a profit cap");
  Searcher s(p.profits, p.weights, p.bounds, p.capacity, p.profit_cap, nullptr);
  return s.run();
}

Pattern max_fill_excluding(std::span<const int> weights, std::span<const int> bounds, int capacity,
                           const PatternSet& exclude) {
  if (capacity <= 0) return Pattern(std::vector<int>(weights.size(), 0));
  std::vector<double> profits(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) profits[i] = static_cast<double>(weights[i]);
  Searcher s(profits, weights, bounds, capacity, std::nullopt, &exclude);
  return s.run().counts;
}

}  // namespace geombp
