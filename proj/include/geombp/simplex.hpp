// Restricted master LP: minimise the number of bins subject to exact
// demand coverage, over the current pattern pool.  Solved by a two-phase
// revised simplex on a dense explicit basis inverse, with warm starts
// across column additions.
#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "geombp/core.hpp"

namespace geombp {

struct LpSolution {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> primal;  // one value per pooled column
  std::vector<double> duals;   // one price per item row
};

class RestrictedMaster {
 public:
  // One equality row per item; right-hand sides are the (residual)
  // demands, which stay fixed for the life of the master.
  RestrictedMaster(std::vector<int> weights, int capacity, std::vector<int> demands);

  enum class AddColumn { Added, Duplicate };

  // Throws if the pattern is the wrong length, has negative counts,
  // is all zero, or overfills the capacity.
  AddColumn add_column(const Pattern& p);

  // Drops every column matching the predicate.  If a positive-demand row
  // loses all coverage, the widest singleton column for that row that
  // does not itself match the predicate is re-injected.  Returns the
  // rows left with no coverage at all.
  std::vector<int> remove_columns(const std::function<bool(const Pattern&)>& pred);

  LpSolution solve();

  const std::vector<Pattern>& columns() const { return cols_; }
  size_t column_count() const { return cols_.size(); }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<int>& demands() const { return rhs_; }
  int capacity() const { return capacity_; }

  // Optional pool size cap; the least-recently-basic non-basic column is
  // evicted to make room.  Off by default.
  void set_pool_cap(std::optional<size_t> cap) { pool_cap_ = cap; }

 private:
  // basis entry: >= 0 pooled column index, -(r+1) artificial of row r
  bool artificial(int r) const { return basis_[static_cast<size_t>(r)] < 0; }
  double dot_row(const std::vector<double>& row, const Pattern& p) const;
  std::vector<double> compute_duals(bool phase_one) const;
  std::vector<double> ftran(const Pattern& p) const;
  void reset_to_artificial_basis();
  void refactorize();
  void pivot(int row, int col, const std::vector<double>& direction);
  int price(const std::vector<double>& sigma, bool phase_one, bool bland) const;
  int ratio_test(const std::vector<double>& direction, bool phase_two, bool bland) const;
  bool run_phase(bool phase_one);
  void erase_column(int idx);
  void evict_if_full();
  double infeasibility() const;

  std::vector<int> weights_;
  int capacity_;
  std::vector<int> rhs_;
  int m_;

  std::vector<Pattern> cols_;
  std::unordered_map<Pattern, int, PatternHash> col_index_;
  std::vector<char> in_basis_;
  std::vector<uint64_t> last_basic_;

  std::vector<int> basis_;
  std::vector<double> binv_;  // m_ x m_, row major
  std::vector<double> xb_;
  bool basis_valid_ = false;

  uint64_t tick_ = 0;
  long pivots_since_refactor_ = 0;
  bool needs_restart_ = false;
  bool phase_two_active_ = false;
  std::optional<size_t> pool_cap_;
};

}  // namespace geombp
