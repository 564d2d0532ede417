#include "geombp/colgen.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace geombp {

namespace {

using Clock = std::chrono::steady_clock;

bool past(const std::optional<Clock::time_point>& deadline) {
  return deadline && Clock::now() >= *deadline;
}

class StopwatchAdd {
 public:
  explicit StopwatchAdd(double& acc) : acc_(acc), t0_(Clock::now()) {}
  ~StopwatchAdd() { acc_ += std::chrono::duration<double>(Clock::now() - t0_).count(); }

 private:
  double& acc_;
  Clock::time_point t0_;
};

Pattern singleton(size_t n, size_t row, int count) {
  Pattern p;
  p.counts.assign(n, 0);
  p.counts[row] = count;
  return p;
}

}  // namespace

RestrictedMaster initialize_pool(const Instance& inst) {
  RestrictedMaster m(inst.weights(), inst.capacity(), inst.demands());
  const size_t n = static_cast<size_t>(inst.size());
  for (size_t i = 0; i < n; ++i) {
    const int k = std::min(inst.demand(static_cast<int>(i)),
                           inst.capacity() / inst.weight(static_cast<int>(i)));
    m.add_column(singleton(n, i, k));
  }
  const Solution seed = subset_sum_half(inst);
  for (const Bin& b : seed.bins) m.add_column(b.pattern);
  return m;
}

NodeMaster make_node_master(const std::vector<int>& weights, int capacity,
                            const std::vector<int>& residual_demands,
                            std::span<const Pattern> pool, const PatternSet& forbidden) {
  NodeMaster nm{RestrictedMaster(weights, capacity, residual_demands), {}};
  for (const Pattern& p : pool) {
    if (!pattern_within(p, residual_demands)) continue;
    if (forbidden.contains(p)) continue;
    nm.master.add_column(p);
  }
  const size_t n = weights.size();
  for (size_t i = 0; i < n; ++i) {
    if (residual_demands[i] <= 0) continue;
    const int kmax = std::min(residual_demands[i], capacity / weights[i]);
    bool covered = false;
    for (int k = kmax; k >= 1; --k) {
      Pattern s = singleton(n, i, k);
      if (forbidden.contains(s)) continue;
      nm.master.add_column(s);
      covered = true;
      break;
    }
    if (!covered) nm.uncovered_rows.push_back(static_cast<int>(i));
  }
  return nm;
}

ColGenOutcome generate_columns(RestrictedMaster& master, const PatternSet& forbidden,
                               const ColGenConfig& cfg) {
  ColGenOutcome out;
  const std::vector<int>& w = master.weights();
  const long iter_cap = 50 * static_cast<long>(w.size()) + 1000;
  bool cap_widened = false;
  bool premature = false;
  bool proved = false;
  std::string note;
  LpSolution lp;

  for (long iter = 0;; ++iter) {
    lp = master.solve();
    if (lp.status != LpSolution::Status::Optimal) {
      out.status = ColGenOutcome::Status::Infeasible;
      out.lp = std::move(lp);
      return out;
    }
    if (iter >= iter_cap) {
      premature = true;
      note = "pricing round cap reached";
      break;
    }
    if (past(cfg.deadline)) {
      premature = true;
      note = "deadline reached";
      break;
    }

    PricingProblem pp;
    pp.profits = lp.duals;
    pp.weights = w;
    pp.capacity = master.capacity();
    pp.bounds = master.demands();

    std::optional<KnapsackResult> cand;
    {
      StopwatchAdd sw(out.stats.pricing_seconds);
      if (cfg.sectional) {
        KnapsackResult r = solve_binary(pp);
        if (r.reduced_cost > cfg.eps_rc) cand = std::move(r);
      }
      if (!cand) {
        KnapsackResult r = solve_bounded(pp);
        ++out.stats.exact_pricing_calls;
        if (r.reduced_cost <= cfg.eps_rc)
          proved = true;
        else
          cand = std::move(r);
      }
    }
    if (proved) break;

    if (forbidden.contains(cand->counts)) {
      // Rerun pricing capped strictly below the forbidden reduced cost
      // until a usable pattern appears.  The offset widens tenfold after
      // three consecutive forbidden regenerations; widening gives up
      // bound certification because patterns inside the skipped window
      // are never priced.
      double nu = cand->reduced_cost;
      double delta = cfg.delta0;
      int forbidden_streak = 0;
      bool replaced = false;
      while (true) {
        if (past(cfg.deadline)) {
          note = "deadline reached";
          break;
        }
        PricingProblem capped = pp;
        capped.profit_cap = nu - delta;
        KnapsackResult r;
        {
          StopwatchAdd sw(out.stats.pricing_seconds);
          r = solve_2d_decrement(capped);
        }
        ++out.stats.decrement_solves;
        if (r.counts.is_zero()) {
          note = "no pattern fits below the forbidden ones";
          break;
        }
        if (forbidden.contains(r.counts)) {
          if (++forbidden_streak >= 3) {
            const double wider = std::min(delta * 10.0, cfg.delta_cap);
            if (wider > delta) {
              delta = wider;
              cap_widened = true;
            }
            forbidden_streak = 0;
          }
          nu = r.reduced_cost;
          continue;
        }
        if (r.reduced_cost <= cfg.eps_rc) {
          note = "only nonpositive reduced costs below the forbidden ones";
          break;
        }
        cand = std::move(r);
        replaced = true;
        break;
      }
      if (!replaced) {
        premature = true;
        break;
      }
    }

    if (master.add_column(cand->counts) == RestrictedMaster::AddColumn::Duplicate) {
      premature = true;
      note = "pricing returned a pooled pattern";
      break;
    }
    ++out.stats.columns_generated;
  }

  out.lp = std::move(lp);
  out.z_lp = out.lp.objective;
  out.lower_bound = std::max(0, static_cast<int>(std::ceil(out.z_lp - 1e-6)));
  if (proved && !premature && !cap_widened) {
    out.status = ColGenOutcome::Status::Proved;
    out.proven_optimal = true;
  } else {
    out.status = ColGenOutcome::Status::Premature;
    out.proven_optimal = false;
    out.note = note.empty() ? "pricing cap widened around forbidden patterns" : note;
  }
  return out;
}

}  // namespace geombp
