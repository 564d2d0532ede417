#include "geombp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geombp {

namespace {

constexpr double kPivotTol = 1e-10;  // smallest usable pivot element
constexpr double kDualTol = 1e-10;   // entering reduced-cost threshold
constexpr double kFeasTol = 1e-7;    // phase-1 infeasibility threshold
constexpr double kZeroClamp = 1e-11;

}  // namespace

RestrictedMaster::RestrictedMaster(std::vector<int> weights, int capacity,
                                   std::vector<int> demands)
    : weights_(std::move(weights)), capacity_(capacity), rhs_(std::move(demands)),
      m_(static_cast<int>(weights_.size())) {
  if (capacity_ <= 0) throw std::invalid_argument("master capacity must be positive");
  if (rhs_.size() != weights_.size()) {
    throw std::invalid_argument("master weights/demands disagree in length");
  }
  for (int w : weights_) {
    if (w <= 0 || w > capacity_) throw std::invalid_argument("master weight outside (0, capacity]");
  }
  for (int d : rhs_) {
    if (d < 0) throw std::invalid_argument("master demands must be non-negative");
  }
}

RestrictedMaster::AddColumn RestrictedMaster::add_column(const Pattern& p) {
  if (p.size() != m_) throw std::invalid_argument("column length mismatch");
  long long fill = 0;
  bool nonzero = false;
  for (int i = 0; i < m_; ++i) {
    int c = p.counts[static_cast<size_t>(i)];
    if (c < 0) throw std::invalid_argument("column has a negative count");
    if (c > 0) nonzero = true;
    fill += static_cast<long long>(c) * weights_[static_cast<size_t>(i)];
  }
  if (!nonzero) throw std::invalid_argument("column is all zero");
  if (fill > capacity_) throw std::invalid_argument("column overfills the capacity");
  if (col_index_.count(p) > 0) return AddColumn::Duplicate;
  evict_if_full();
  col_index_.emplace(p, static_cast<int>(cols_.size()));
  cols_.push_back(p);
  in_basis_.push_back(0);
  last_basic_.push_back(0);
  return AddColumn::Added;
}

void RestrictedMaster::evict_if_full() {
  if (!pool_cap_ || cols_.size() < *pool_cap_) return;
  int victim = -1;
  for (size_t j = 0; j < cols_.size(); ++j) {
    if (in_basis_[j]) continue;
    if (victim < 0 || last_basic_[j] < last_basic_[static_cast<size_t>(victim)]) {
      victim = static_cast<int>(j);
    }
  }
  if (victim >= 0) erase_column(victim);
}

void RestrictedMaster::erase_column(int idx) {
  col_index_.erase(cols_[static_cast<size_t>(idx)]);
  cols_.erase(cols_.begin() + idx);
  in_basis_.erase(in_basis_.begin() + idx);
  last_basic_.erase(last_basic_.begin() + idx);
  for (auto& [p, j] : col_index_) {
    if (j > idx) --j;
  }
  for (int& b : basis_) {
    if (b == idx) basis_valid_ = false;  // eviction never targets basic columns
    if (b > idx) --b;
  }
}

std::vector<int> RestrictedMaster::remove_columns(
    const std::function<bool(const Pattern&)>& pred) {
  bool basic_removed = false;
  std::vector<char> drop(cols_.size(), 0);
  for (size_t j = 0; j < cols_.size(); ++j) {
    if (pred(cols_[j])) {
      drop[j] = 1;
      if (in_basis_[j]) basic_removed = true;
    }
  }
  std::vector<Pattern> kept;
  std::vector<char> kept_basis;
  std::vector<uint64_t> kept_stamp;
  std::vector<int> remap(cols_.size(), -1);
  for (size_t j = 0; j < cols_.size(); ++j) {
    if (drop[j]) continue;
    remap[j] = static_cast<int>(kept.size());
    kept.push_back(std::move(cols_[j]));
    kept_basis.push_back(in_basis_[j]);
    kept_stamp.push_back(last_basic_[j]);
  }
  cols_ = std::move(kept);
  in_basis_ = std::move(kept_basis);
  last_basic_ = std::move(kept_stamp);
  col_index_.clear();
  for (size_t j = 0; j < cols_.size(); ++j) col_index_.emplace(cols_[j], static_cast<int>(j));
  if (basic_removed) {
    basis_valid_ = false;
  } else if (basis_valid_) {
    for (int& b : basis_) {
      if (b >= 0) b = remap[static_cast<size_t>(b)];
    }
  }

  // coverage repair: widest singleton not matching the predicate
  std::vector<int> uncovered;
  for (int r = 0; r < m_; ++r) {
    if (rhs_[static_cast<size_t>(r)] <= 0) continue;
    bool covered = false;
    for (const Pattern& p : cols_) {
      if (p.counts[static_cast<size_t>(r)] > 0) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    int top = std::min(rhs_[static_cast<size_t>(r)],
                       capacity_ / weights_[static_cast<size_t>(r)]);
    bool injected = false;
    for (int k = top; k >= 1; --k) {
      Pattern s(std::vector<int>(static_cast<size_t>(m_), 0));
      s.counts[static_cast<size_t>(r)] = k;
      if (pred(s)) continue;
      if (add_column(s) == AddColumn::Added) {
        injected = true;
        break;
      }
    }
    if (!injected) uncovered.push_back(r);
  }
  return uncovered;
}

double RestrictedMaster::dot_row(const std::vector<double>& row, const Pattern& p) const {
  double s = 0.0;
  for (int i = 0; i < m_; ++i) {
    int c = p.counts[static_cast<size_t>(i)];
    if (c != 0) s += row[static_cast<size_t>(i)] * c;
  }
  return s;
}

std::vector<double> RestrictedMaster::compute_duals(bool phase_one) const {
  // pi = c_B Binv with phase-1 costs on artificials, phase-2 costs on
  // pooled columns
  std::vector<double> pi(static_cast<size_t>(m_), 0.0);
  for (int r = 0; r < m_; ++r) {
    bool art = basis_[static_cast<size_t>(r)] < 0;
    if (art != phase_one) continue;
    const double* row = binv_.data() + static_cast<size_t>(r) * m_;
    for (int i = 0; i < m_; ++i) pi[static_cast<size_t>(i)] += row[i];
  }
  return pi;
}

std::vector<double> RestrictedMaster::ftran(const Pattern& p) const {
  std::vector<double> d(static_cast<size_t>(m_), 0.0);
  for (int i = 0; i < m_; ++i) {
    int c = p.counts[static_cast<size_t>(i)];
    if (c == 0) continue;
    for (int r = 0; r < m_; ++r) {
      d[static_cast<size_t>(r)] += binv_[static_cast<size_t>(r) * m_ + i] * c;
    }
  }
  return d;
}

void RestrictedMaster::reset_to_artificial_basis() {
  basis_.assign(static_cast<size_t>(m_), 0);
  for (int r = 0; r < m_; ++r) basis_[static_cast<size_t>(r)] = -(r + 1);
  binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
  for (int r = 0; r < m_; ++r) binv_[static_cast<size_t>(r) * m_ + r] = 1.0;
  xb_.assign(rhs_.begin(), rhs_.end());
  std::fill(in_basis_.begin(), in_basis_.end(), 0);
  basis_valid_ = true;
  pivots_since_refactor_ = 0;
}

void RestrictedMaster::refactorize() {
  // rebuild Binv by Gauss-Jordan with partial pivoting on the basis matrix
  const int n = m_;
  std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
  for (int r = 0; r < n; ++r) {
    int b = basis_[static_cast<size_t>(r)];
    if (b < 0) {
      a[static_cast<size_t>(-b - 1) * n + r] = 1.0;
    } else {
      const Pattern& p = cols_[static_cast<size_t>(b)];
      for (int i = 0; i < n; ++i) {
        a[static_cast<size_t>(i) * n + r] = p.counts[static_cast<size_t>(i)];
      }
    }
  }
  std::vector<double> inv(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = kPivotTol;
    for (int r = col; r < n; ++r) {
      double v = std::abs(a[static_cast<size_t>(r) * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (piv < 0) {
      // numerically singular: fall back to a fresh phase-1 start
      reset_to_artificial_basis();
      needs_restart_ = true;
      return;
    }
    if (piv != col) {
      // row swaps act on constraint rows and wash out in the full
      // reduction; the slot-indexed basis is untouched
      for (int k = 0; k < n; ++k) {
        std::swap(a[static_cast<size_t>(piv) * n + k], a[static_cast<size_t>(col) * n + k]);
        std::swap(inv[static_cast<size_t>(piv) * n + k], inv[static_cast<size_t>(col) * n + k]);
      }
    }
    double d = a[static_cast<size_t>(col) * n + col];
    for (int k = 0; k < n; ++k) {
      a[static_cast<size_t>(col) * n + k] /= d;
      inv[static_cast<size_t>(col) * n + k] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[static_cast<size_t>(r) * n + col];
      if (f == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        a[static_cast<size_t>(r) * n + k] -= f * a[static_cast<size_t>(col) * n + k];
        inv[static_cast<size_t>(r) * n + k] -= f * inv[static_cast<size_t>(col) * n + k];
      }
    }
  }
  binv_ = std::move(inv);
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    const double* row = binv_.data() + static_cast<size_t>(r) * n;
    for (int i = 0; i < n; ++i) s += row[i] * rhs_[static_cast<size_t>(i)];
    if (std::abs(s) < kZeroClamp) s = 0.0;
    // artificials are parked at zero once feasibility is reached
    if (phase_two_active_ && basis_[static_cast<size_t>(r)] < 0 && std::abs(s) <= kFeasTol) s = 0.0;
    xb_[static_cast<size_t>(r)] = s;
  }
  pivots_since_refactor_ = 0;
}

void RestrictedMaster::pivot(int row, int col, const std::vector<double>& d) {
  double alpha = d[static_cast<size_t>(row)];
  double* prow = binv_.data() + static_cast<size_t>(row) * m_;
  for (int k = 0; k < m_; ++k) prow[k] /= alpha;
  double xrow = xb_[static_cast<size_t>(row)] / alpha;
  if (std::abs(xrow) < kZeroClamp) xrow = 0.0;
  xb_[static_cast<size_t>(row)] = xrow;
  for (int r = 0; r < m_; ++r) {
    if (r == row) continue;
    double f = d[static_cast<size_t>(r)];
    if (f == 0.0) continue;
    double* dst = binv_.data() + static_cast<size_t>(r) * m_;
    for (int k = 0; k < m_; ++k) dst[k] -= f * prow[k];
    double nx = xb_[static_cast<size_t>(r)] - f * xrow;
    xb_[static_cast<size_t>(r)] = std::abs(nx) < kZeroClamp ? 0.0 : nx;
  }
  int leaving = basis_[static_cast<size_t>(row)];
  if (leaving >= 0) in_basis_[static_cast<size_t>(leaving)] = 0;
  basis_[static_cast<size_t>(row)] = col;
  in_basis_[static_cast<size_t>(col)] = 1;
  last_basic_[static_cast<size_t>(col)] = ++tick_;
  if (++pivots_since_refactor_ >= 128) refactorize();
}

int RestrictedMaster::price(const std::vector<double>& pi, bool phase_one, bool bland) const {
  int enter = -1;
  double best = -kDualTol;
  for (size_t j = 0; j < cols_.size(); ++j) {
    if (in_basis_[j]) continue;
    double rc = (phase_one ? 0.0 : 1.0) - dot_row(pi, cols_[j]);
    if (rc < -kDualTol) {
      if (bland) return static_cast<int>(j);
      if (rc < best) {
        best = rc;
        enter = static_cast<int>(j);
      }
    }
  }
  return enter;
}

int RestrictedMaster::ratio_test(const std::vector<double>& d, bool phase_two, bool bland) const {
  // In phase 2 an artificial parked at zero must never re-grow: any
  // significant component on its row forces it out at ratio zero, even a
  // negative one (the entering variable then enters at exactly zero).
  int best_row = -1;
  double best_ratio = 0.0;
  bool best_art = false;
  double best_mag = 0.0;
  for (int r = 0; r < m_; ++r) {
    double dr = d[static_cast<size_t>(r)];
    bool art = basis_[static_cast<size_t>(r)] < 0;
    double xr = std::max(0.0, xb_[static_cast<size_t>(r)]);
    double ratio;
    if (phase_two && art && xb_[static_cast<size_t>(r)] <= kZeroClamp &&
        std::abs(dr) > kPivotTol) {
      ratio = 0.0;
    } else if (dr > kPivotTol) {
      ratio = xr / dr;
    } else {
      continue;
    }
    if (best_row < 0 || ratio < best_ratio - 1e-12) {
      best_row = r;
      best_ratio = ratio;
      best_art = art;
      best_mag = std::abs(dr);
      continue;
    }
    if (ratio > best_ratio + 1e-12) continue;
    // tie: kick artificials first, then by Bland index or pivot magnitude
    if (art != best_art) {
      if (art) {
        best_row = r;
        best_art = true;
        best_mag = std::abs(dr);
      }
      continue;
    }
    if (bland) {
      int vr = basis_[static_cast<size_t>(r)];
      int vb = basis_[static_cast<size_t>(best_row)];
      long long idr = vr >= 0 ? vr : static_cast<long long>(cols_.size()) + (-vr - 1);
      long long idb = vb >= 0 ? vb : static_cast<long long>(cols_.size()) + (-vb - 1);
      if (idr < idb) {
        best_row = r;
        best_mag = std::abs(dr);
      }
    } else if (std::abs(dr) > best_mag) {
      best_row = r;
      best_mag = std::abs(dr);
    }
  }
  return best_row;
}

double RestrictedMaster::infeasibility() const {
  double s = 0.0;
  for (int r = 0; r < m_; ++r) {
    if (basis_[static_cast<size_t>(r)] < 0) s += std::max(0.0, xb_[static_cast<size_t>(r)]);
  }
  return s;
}

LpSolution RestrictedMaster::solve() {
  if (!basis_valid_) reset_to_artificial_basis();

  for (int attempt = 0; attempt < 4; ++attempt) {
    needs_restart_ = false;
    phase_two_active_ = false;
    bool feasible = run_phase(true);
    if (needs_restart_) continue;
    if (!feasible) {
      LpSolution out;
      out.status = LpSolution::Status::Infeasible;
      out.objective = infeasibility();
      out.duals = compute_duals(true);
      out.primal.assign(cols_.size(), 0.0);
      return out;
    }
    // park residual artificial values; they are within the feasibility
    // tolerance and must stay at zero from here on
    phase_two_active_ = true;
    for (int r = 0; r < m_; ++r) {
      if (basis_[static_cast<size_t>(r)] < 0 &&
          std::abs(xb_[static_cast<size_t>(r)]) <= kFeasTol) {
        xb_[static_cast<size_t>(r)] = 0.0;
      }
    }
    run_phase(false);
    if (needs_restart_) continue;

    LpSolution out;
    out.status = LpSolution::Status::Optimal;
    out.duals = compute_duals(false);
    out.primal.assign(cols_.size(), 0.0);
    double z = 0.0;
    for (int r = 0; r < m_; ++r) {
      int b = basis_[static_cast<size_t>(r)];
      if (b < 0) continue;
      double v = std::max(0.0, xb_[static_cast<size_t>(r)]);
      out.primal[static_cast<size_t>(b)] = v;
      z += v;
    }
    out.objective = z;
    return out;
  }
  throw std::runtime_error("simplex failed to stabilise");
}

bool RestrictedMaster::run_phase(bool phase_one) {
  const long bland_threshold = 5 * (static_cast<long>(m_) + static_cast<long>(cols_.size()));
  long consecutive_degenerate = 0;
  int stale_confirms = 0;
  // Termination is only trusted on a freshly rebuilt inverse: the update
  // formula drifts, and callers price externally against the duals, so a
  // stale "optimal" here would surface as a phantom entering column there.
  auto confirm_fresh = [&]() -> bool {
    if (pivots_since_refactor_ == 0 || stale_confirms >= 16) return true;
    ++stale_confirms;
    refactorize();
    return false;
  };
  while (true) {
    if (needs_restart_) return true;
    if (phase_one && infeasibility() <= kFeasTol) {
      if (confirm_fresh()) return true;
      if (needs_restart_) return true;
      continue;
    }
    bool bland = consecutive_degenerate > bland_threshold;
    std::vector<double> pi = compute_duals(phase_one);
    int enter = price(pi, phase_one, bland);
    if (enter < 0) {  // phase 2: optimal; phase 1: stuck infeasible
      if (confirm_fresh()) return !phase_one;
      if (needs_restart_) return true;
      continue;
    }
    std::vector<double> d = ftran(cols_[static_cast<size_t>(enter)]);
    int leave = ratio_test(d, !phase_one, bland);
    if (leave < 0) {
      // the objective is bounded below, so a missing blocker is numerical
      // noise; rebuild the inverse and retry once
      refactorize();
      if (needs_restart_) return true;
      d = ftran(cols_[static_cast<size_t>(enter)]);
      leave = ratio_test(d, !phase_one, bland);
      if (leave < 0) throw std::runtime_error("simplex lost the blocking variable");
    }
    double alpha = d[static_cast<size_t>(leave)];
    double step = alpha != 0.0 ? xb_[static_cast<size_t>(leave)] / alpha : 0.0;
    if (std::abs(step) <= kZeroClamp) {
      ++consecutive_degenerate;
    } else {
      consecutive_degenerate = 0;
    }
    pivot(leave, enter, d);
  }
}

}  // namespace geombp
