#include "geombp/bnp.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <utility>

namespace geombp {

namespace {

using Clock = std::chrono::steady_clock;

// One open subproblem: pack `residual` exactly, never using a forbidden
// pattern, on top of the bins already fixed along the path.
struct Node {
  std::vector<int> residual;
  std::vector<Bin> fixed;
  int fixed_count = 0;
  PatternSet forbidden;
  std::vector<Pattern> pool;  // inherited columns, filtered when the node is opened
  int depth = 0;
  int cert_bound = 0;  // best certified bound seen along the path
};

bool all_zero(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

void add_bin(std::vector<Bin>& bins, const Pattern& p, int load) {
  for (Bin& b : bins) {
    if (b.pattern == p) {
      b.load += load;
      return;
    }
  }
  bins.push_back(Bin{p, load});
}

// Rounds near-integral column values into bins; nullopt when any value
// is genuinely fractional.
std::optional<std::pair<std::vector<Bin>, int>> integral_bins(const LpSolution& lp,
                                                              std::span<const Pattern> columns,
                                                              double eps_int) {
  std::vector<Bin> bins;
  int total = 0;
  for (size_t j = 0; j < columns.size(); ++j) {
    const double v = lp.primal[j];
    const double r = std::round(v);
    if (std::abs(v - r) > eps_int) return std::nullopt;
    const int k = static_cast<int>(r);
    if (k <= 0) continue;
    add_bin(bins, columns[j], k);
    total += k;
  }
  return std::make_pair(std::move(bins), total);
}

class Search {
 public:
  Search(const Instance& inst, const SolverConfig& cfg)
      : inst_(inst), cfg_(cfg), w_(inst.weights()), c_(inst.capacity()) {}

  SolveReport run() {
    const auto t0 = Clock::now();
    if (cfg_.time_limit_seconds > 0.0)
      deadline_ = t0 + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(cfg_.time_limit_seconds));

    BoundPair hb = compute_bounds(inst_);
    best_ = hb.ub;
    best_sol_ = std::move(hb.ub_solution);
    global_cert_ = hb.lb;
    report_.root_bound = hb.lb;

    Node root;
    root.residual = inst_.demands();
    root.depth = 0;
    root.cert_bound = global_cert_;
    {
      RestrictedMaster seed = initialize_pool(inst_);
      root.pool = seed.columns();
    }
    stack_.push_back(std::move(root));

    while (!stack_.empty()) {
      // the root is always processed so the report carries its bound
      if (counters_.n_total_node > 0 && best_ <= global_cert_) {
        stack_.clear();
        break;
      }
      if (past_deadline()) {
        aborted_ = true;
        break;
      }
      Node node = std::move(stack_.back());
      stack_.pop_back();
      ++counters_.n_total_node;
      process(std::move(node));
    }

    report_.optimum = best_;
    report_.solution = best_sol_;
    int frontier = INT_MAX;
    if (aborted_)
      for (const Node& n : stack_) frontier = std::min(frontier, n.cert_bound);
    if (root_stopped_) frontier = std::min(frontier, root_children_cert_);
    int bound = best_;
    if (frontier != INT_MAX) bound = std::min(bound, frontier);
    bound = std::max(bound, global_cert_);
    bound = std::min(bound, best_);
    report_.best_bound = bound;
    report_.proved_optimal = bound >= best_;
    report_.counters = counters_;
    report_.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return report_;
  }

 private:
  bool past_deadline() const { return deadline_ && Clock::now() >= *deadline_; }

  void try_adopt(std::vector<Bin> bins) {
    Solution s{std::move(bins)};
    const int count = s.objective();
    if (count >= best_) return;
    if (!verify_solution(inst_, s).ok) return;  // numerical guard, never expected
    best_ = count;
    best_sol_ = std::move(s);
  }

  // Pricing is unavailable (some positive row has every singleton
  // forbidden, or the LP reported infeasible): keep the partition exact
  // by branching on the fullest usable pattern directly.
  void branch_without_pricing(Node node) {
    const Pattern p = max_fill_excluding(w_, node.residual, c_, node.forbidden);
    if (p.is_zero()) return;  // every usable pattern forbidden: no completion exists

    Node right;
    right.residual = node.residual;
    right.fixed = node.fixed;
    right.fixed_count = node.fixed_count;
    right.forbidden = node.forbidden;
    right.forbidden.insert(p);
    right.pool = node.pool;
    right.depth = node.depth + 1;
    right.cert_bound = node.cert_bound;

    Node left;
    left.residual = node.residual;
    for (size_t i = 0; i < p.counts.size(); ++i) left.residual[i] -= p.counts[i];
    left.fixed = std::move(node.fixed);
    add_bin(left.fixed, p, 1);
    left.fixed_count = node.fixed_count + 1;
    left.forbidden = std::move(node.forbidden);
    left.pool = std::move(node.pool);
    left.depth = node.depth + 1;
    left.cert_bound = node.cert_bound;

    stack_.push_back(std::move(right));
    stack_.push_back(std::move(left));
  }

  // Repeatedly fix a batch of top-ranked bins and reprice, hunting for a
  // better incumbent.  Heuristic only: nothing here affects bounds.
  void plunge(const Node& node, const ColGenOutcome& out, std::vector<Pattern> columns) {
    std::vector<int> residual = node.residual;
    std::vector<Bin> dived = node.fixed;
    int count = node.fixed_count;
    LpSolution lp = out.lp;

    while (true) {
      if (past_deadline()) return;
      const auto ranked = score_bins(lp, columns, w_, cfg_.criterion, cfg_.eps_int);
      if (ranked.empty()) return;
      const BatchSelection sel =
          batch_dive(ranked, residual, cfg_.batch_mode, cfg_.batch_sense, cfg_.batch_node_cap);
      if (sel.chosen.empty()) return;
      for (const ScoredBin& sb : sel.chosen) {
        add_bin(dived, sb.pattern, 1);
        ++count;
        for (size_t i = 0; i < sb.pattern.counts.size(); ++i) residual[i] -= sb.pattern.counts[i];
      }
      if (all_zero(residual)) {
        try_adopt(std::move(dived));
        return;
      }
      if (count + 1 >= best_) return;  // even one more bin cannot beat the incumbent

      NodeMaster nm = make_node_master(w_, c_, residual, columns, node.forbidden);
      if (!nm.uncovered_rows.empty()) return;
      ColGenConfig cc;
      cc.sectional = cfg_.sectional;
      cc.delta0 = cfg_.delta0;
      cc.eps_rc = cfg_.eps_rc;
      cc.deadline = deadline_;
      ColGenOutcome o = generate_columns(nm.master, node.forbidden, cc);
      if (o.status == ColGenOutcome::Status::Infeasible) return;
      lp = std::move(o.lp);
      columns = nm.master.columns();
      if (auto ib = integral_bins(lp, columns, cfg_.eps_int)) {
        std::vector<Bin> bins = dived;
        for (const Bin& b : ib->first) add_bin(bins, b.pattern, b.load);
        try_adopt(std::move(bins));
        return;
      }
    }
  }

  void process(Node node) {
    if (all_zero(node.residual)) {
      try_adopt(std::move(node.fixed));
      return;
    }

    NodeMaster nm = make_node_master(w_, c_, node.residual, node.pool, node.forbidden);
    bool lp_ok = nm.uncovered_rows.empty();
    ColGenOutcome out;
    if (lp_ok) {
      ColGenConfig cc;
      cc.sectional = cfg_.sectional;
      cc.delta0 = cfg_.delta0;
      cc.eps_rc = cfg_.eps_rc;
      cc.deadline = deadline_;
      out = generate_columns(nm.master, node.forbidden, cc);
      if (out.stats.decrement_solves > 0) ++counters_.n_poll_node;
      if (node.depth == 0) {
        counters_.n_col_root = out.stats.columns_generated;
        counters_.n_exact_root = out.stats.exact_pricing_calls;
        report_.root_pricing_seconds = out.stats.pricing_seconds;
      }
      if (out.status == ColGenOutcome::Status::Infeasible) lp_ok = false;
    }
    if (!lp_ok) {
      branch_without_pricing(std::move(node));
      return;
    }

    const NodeBound nb = node_bound(node.fixed_count, out);
    int cert = node.cert_bound;
    if (nb.certified) cert = std::max(cert, nb.bound);
    if (node.depth == 0) {
      report_.root_bound = nb.bound;
      report_.root_bound_certified = nb.certified;
      if (nb.certified) global_cert_ = std::max(global_cert_, nb.bound);
    }

    if (auto ib = integral_bins(out.lp, nm.master.columns(), cfg_.eps_int)) {
      std::vector<Bin> bins = node.fixed;
      for (const Bin& b : ib->first) add_bin(bins, b.pattern, b.load);
      try_adopt(std::move(bins));
    }

    // Certified subtrees that cannot improve the incumbent are done.
    // Uncertified bounds never prune: those nodes branch on.
    if (cert >= best_) return;

    if (cfg_.batch_stride > 0 && node.depth % cfg_.batch_stride == 0) {
      plunge(node, out, nm.master.columns());
      if (cert >= best_) return;
    }

    const auto ranked = score_bins(out.lp, nm.master.columns(), w_, cfg_.criterion, cfg_.eps_int);
    if (ranked.empty()) {
      branch_without_pricing(std::move(node));
      return;
    }
    if (cfg_.root_only && node.depth == 0) {
      root_stopped_ = true;
      root_children_cert_ = cert;
      return;
    }

    const Pattern b = ranked.front().pattern;
    std::vector<Pattern> child_pool = nm.master.columns();

    Node right;
    right.residual = node.residual;
    right.fixed = node.fixed;
    right.fixed_count = node.fixed_count;
    right.forbidden = node.forbidden;
    right.forbidden.insert(b);
    right.pool = child_pool;
    right.depth = node.depth + 1;
    right.cert_bound = cert;

    Node left;  // fixing the bin first keeps the dive depth-first
    left.residual = node.residual;
    for (size_t i = 0; i < b.counts.size(); ++i) left.residual[i] -= b.counts[i];
    left.fixed = std::move(node.fixed);
    add_bin(left.fixed, b, 1);
    left.fixed_count = node.fixed_count + 1;
    left.forbidden = std::move(node.forbidden);
    left.pool = std::move(child_pool);
    left.depth = node.depth + 1;
    left.cert_bound = cert;

    stack_.push_back(std::move(right));
    stack_.push_back(std::move(left));
  }

  const Instance& inst_;
  SolverConfig cfg_;
  std::vector<int> w_;
  int c_;
  std::optional<Clock::time_point> deadline_;

  int best_ = 0;
  Solution best_sol_;
  int global_cert_ = 0;
  std::vector<Node> stack_;
  SolveCounters counters_;
  SolveReport report_;
  bool aborted_ = false;
  bool root_stopped_ = false;
  int root_children_cert_ = 0;
};

}  // namespace

RootGap root_gap_check(const ColGenOutcome& root, int incumbent) {
  return root.proven_optimal && incumbent <= root.lower_bound ? RootGap::Closed : RootGap::Open;
}

NodeBound node_bound(int fixed_count, const ColGenOutcome& outcome) {
  return NodeBound{fixed_count + outcome.lower_bound, outcome.proven_optimal};
}

SolveReport solve(const Instance& inst, const SolverConfig& cfg) {
  return Search(inst, cfg).run();
}

}  // namespace geombp
