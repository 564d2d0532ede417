#include "geombp/diving.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace geombp {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1], positive abscissas
constexpr int kGlPoints = 8;
constexpr double kGlNode[kGlPoints] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kGlWeight[kGlPoints] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

double p_times_lehmer(std::span<const double> w, double p) { return p * lehmer_mean(w, p); }

// composite 16-point rule for integral of p * L_p over [0, 2]
double gl_panels(std::span<const double> w, int panels) {
  const double width = 2.0 / panels;
  double total = 0.0;
  for (int s = 0; s < panels; ++s) {
    const double mid = (s + 0.5) * width;
    const double half = 0.5 * width;
    double acc = 0.0;
    for (int i = 0; i < kGlPoints; ++i) {
      acc += kGlWeight[i] * (p_times_lehmer(w, mid - half * kGlNode[i]) +
                             p_times_lehmer(w, mid + half * kGlNode[i]));
    }
    total += half * acc;
  }
  return total;
}

}  // namespace

double lehmer_mean(std::span<const double> w, double p) {
  if (w.empty()) throw std::domain_error("lehmer_mean of an empty multiset");
  if (w.size() == 1) {
    if (w[0] <= 0.0) throw std::domain_error("lehmer_mean needs positive weights");
    return w[0];
  }
  double num = 0.0, den = 0.0;
  for (double x : w) {
    if (x <= 0.0) throw std::domain_error("lehmer_mean needs positive weights");
    const double t = std::pow(x, p);
    num += t;
    den += t / x;
  }
  return num / den;
}

double ls_integral(std::span<const double> w) {
  if (w.empty()) throw std::domain_error("ls_integral of an empty multiset");
  if (w.size() == 1) {
    if (w[0] <= 0.0) throw std::domain_error("ls_integral needs positive weights");
    return 2.0 * w[0];
  }
  // The integrand bends on a scale set by the weight spread, so one panel
  // can miss; double the panel count until two refinements agree.
  double prev = gl_panels(w, 1);
  for (int panels = 2; panels <= 64; panels *= 2) {
    const double cur = gl_panels(w, panels);
    if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

std::vector<ScoredBin> score_bins(const LpSolution& lp, std::span<const Pattern> columns,
                                  std::span<const int> weights, Criterion crit, double eps_int) {
  if (lp.primal.size() != columns.size())
    throw std::logic_error("score_bins: solution and pool sizes disagree");
  std::vector<ScoredBin> out;
  std::vector<double> expanded;
  for (size_t j = 0; j < columns.size(); ++j) {
    const double v = lp.primal[j];
    if (v <= eps_int) continue;
    ScoredBin sb;
    sb.column = static_cast<int>(j);
    sb.pattern = columns[j];
    sb.value = v;
    if (crit == Criterion::HighestValue) {
      sb.score = v;
    } else {
      expanded.clear();
      const auto& counts = columns[j].counts;
      for (size_t i = 0; i < counts.size(); ++i)
        for (int r = 0; r < counts[i]; ++r) expanded.push_back(static_cast<double>(weights[i]));
      switch (crit) {
        case Criterion::L0: sb.score = lehmer_mean(expanded, 0.0); break;
        case Criterion::L2: sb.score = lehmer_mean(expanded, 2.0); break;
        default: sb.score = ls_integral(expanded); break;
      }
    }
    out.push_back(std::move(sb));
  }
  std::sort(out.begin(), out.end(), [](const ScoredBin& a, const ScoredBin& b) {
    if (a.score != b.score) return a.score > b.score;
    return b.pattern < a.pattern;
  });
  return out;
}

namespace {

// DFS over the candidates in rank order.  Prunes on the remaining
// attainable score and, in equality mode, on remaining coverage.
class BatchSearch {
 public:
  BatchSearch(std::span<const ScoredBin> cand, std::span<const int> residual, BatchMode mode,
              BatchSense sense, long cap)
      : cand_(cand), mode_(mode), cap_(cap), residual_(residual.begin(), residual.end()) {
    const size_t k = cand.size();
    const size_t m = residual.size();
    val_.resize(k);
    for (size_t j = 0; j < k; ++j)
      val_[j] = sense == BatchSense::Maximize ? cand[j].score : -cand[j].score;
    suffix_gain_.assign(k + 1, 0.0);
    for (size_t j = k; j-- > 0;) suffix_gain_[j] = suffix_gain_[j + 1] + std::max(0.0, val_[j]);
    if (mode_ == BatchMode::Equality) {
      suffix_cover_.assign(k + 1, std::vector<long long>(m, 0));
      for (size_t j = k; j-- > 0;) {
        suffix_cover_[j] = suffix_cover_[j + 1];
        for (size_t i = 0; i < m; ++i) suffix_cover_[j][i] += cand[j].pattern.counts[i];
      }
    }
    taken_.assign(k, false);
  }

  BatchSelection run() {
    dfs(0, 0.0);
    BatchSelection sel;
    sel.mode_used = mode_;
    sel.feasible = found_;
    sel.optimal = !stopped_;
    if (found_)
      for (size_t j = 0; j < cand_.size(); ++j)
        if (best_taken_[j]) sel.chosen.push_back(cand_[j]);
    return sel;
  }

 private:
  bool fits(size_t j) const {
    const auto& x = cand_[j].pattern.counts;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] > residual_[i]) return false;
    return true;
  }

  void dfs(size_t k, double acc) {
    if (stopped_) return;
    if (++nodes_ > cap_) {
      stopped_ = true;
      return;
    }
    if (mode_ == BatchMode::Equality) {
      for (size_t i = 0; i < residual_.size(); ++i)
        if (residual_[i] > suffix_cover_[k][i]) return;
    }
    if (found_ && acc + suffix_gain_[k] <= best_val_ + 1e-12) return;
    if (k == cand_.size()) {
      // equality coverage already guaranteed by the suffix prune
      found_ = true;
      best_val_ = acc;
      best_taken_ = taken_;
      return;
    }
    if (fits(k)) {
      const auto& x = cand_[k].pattern.counts;
      for (size_t i = 0; i < x.size(); ++i) residual_[i] -= x[i];
      taken_[k] = true;
      dfs(k + 1, acc + val_[k]);
      taken_[k] = false;
      for (size_t i = 0; i < x.size(); ++i) residual_[i] += x[i];
    }
    dfs(k + 1, acc);
  }

  std::span<const ScoredBin> cand_;
  BatchMode mode_;
  long cap_;
  long nodes_ = 0;
  bool stopped_ = false;
  bool found_ = false;
  double best_val_ = 0.0;
  std::vector<int> residual_;
  std::vector<double> val_;
  std::vector<double> suffix_gain_;
  std::vector<std::vector<long long>> suffix_cover_;
  std::vector<bool> taken_, best_taken_;
};

}  // namespace

BatchSelection batch_dive(std::span<const ScoredBin> candidates,
                          std::span<const int> residual_demands, BatchMode mode, BatchSense sense,
                          long node_cap) {
  std::vector<ScoredBin> ranked(candidates.begin(), candidates.end());
  std::sort(ranked.begin(), ranked.end(), [](const ScoredBin& a, const ScoredBin& b) {
    if (a.score != b.score) return a.score > b.score;
    return b.pattern < a.pattern;
  });
  BatchSelection sel = BatchSearch(ranked, residual_demands, mode, sense, node_cap).run();
  if (mode == BatchMode::Equality && !sel.feasible) {
    const bool certified = sel.optimal;
    sel = BatchSearch(ranked, residual_demands, BatchMode::Inequality, sense, node_cap).run();
    sel.optimal = sel.optimal && certified;
  }
  return sel;
}

BatchSelection batch_dive(const LpSolution& lp, std::span<const Pattern> columns,
                          std::span<const int> weights, std::span<const int> residual_demands,
                          Criterion crit, BatchMode mode, BatchSense sense, long node_cap,
                          double eps_int) {
  const auto ranked = score_bins(lp, columns, weights, crit, eps_int);
  return batch_dive(ranked, residual_demands, mode, sense, node_cap);
}

}  // namespace geombp
