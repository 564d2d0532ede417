#include <doctest.h>

#include <algorithm>

#include "geombp/colgen.hpp"
#include "oracles.hpp"

using namespace geombp;

namespace {

bool pool_contains(const RestrictedMaster& m, const Pattern& p) {
  const auto& cols = m.columns();
  return std::find(cols.begin(), cols.end(), p) != cols.end();
}

}  // namespace

TEST_CASE("the initial pool holds maximal singletons and heuristic bins") {
  const Instance inst = parse_instance("2\n100\n30 5\n20 3\n");
  RestrictedMaster m = initialize_pool(inst);
  CHECK(pool_contains(m, Pattern({3, 0})));  // 3 copies cap the capacity
  CHECK(pool_contains(m, Pattern({0, 3})));  // 3 copies cap the demand
  CHECK(pool_contains(m, Pattern({2, 2})));  // subset-sum bin filling 100
  CHECK(m.solve().status == LpSolution::Status::Optimal);
}

TEST_CASE("six-item reference instance prices to the proved fractional bound") {
  const Instance inst = parse_instance("6\n100\n72\n54\n34\n33\n19\n18\n");
  RestrictedMaster m = initialize_pool(inst);
  const ColGenOutcome out = generate_columns(m, {}, {});
  REQUIRE(out.status == ColGenOutcome::Status::Proved);
  CHECK(out.proven_optimal);
  CHECK(out.z_lp == doctest::Approx(2.6).epsilon(1e-8));
  CHECK(out.lower_bound == 3);
  CHECK(out.note.empty());
  CHECK(out.stats.exact_pricing_calls >= 1);  // the closing proof is exact
  CHECK(out.stats.decrement_solves == 0);     // nothing was forbidden
}

TEST_CASE("proved outcomes match a pattern-enumeration LP oracle") {
  const Instance inst = parse_instance("3\n10\n5 2\n4 2\n3 1\n");
  RestrictedMaster m = initialize_pool(inst);
  const ColGenOutcome out = generate_columns(m, {}, {});
  REQUIRE(out.status == ColGenOutcome::Status::Proved);

  std::vector<int> bounds = inst.demands();
  const std::vector<Pattern> all =
      testutil::enumerate_patterns(inst.weights(), bounds, inst.capacity());
  const std::optional<double> want = testutil::lp_basis_oracle(all, inst.demands());
  REQUIRE(want.has_value());
  CHECK(out.z_lp == doctest::Approx(*want).epsilon(1e-7));
}

TEST_CASE("a forbidden pattern never enters the master") {
  const Instance inst = parse_instance("2\n100\n60\n40\n");
  PatternSet forbidden{Pattern({1, 1})};
  NodeMaster nm = make_node_master(inst.weights(), inst.capacity(), inst.demands(),
                                   initialize_pool(inst).columns(), forbidden);
  CHECK(nm.uncovered_rows.empty());
  CHECK(!pool_contains(nm.master, Pattern({1, 1})));

  const ColGenOutcome out = generate_columns(nm.master, forbidden, {});
  // the two singletons are optimal among allowed patterns, but the proof
  // cannot close: the sole improving pattern is the forbidden one
  CHECK(out.status == ColGenOutcome::Status::Premature);
  CHECK(!out.proven_optimal);
  CHECK(out.z_lp == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(out.lower_bound == 2);
  CHECK(out.stats.decrement_solves == 1);
  CHECK(out.note == "only nonpositive reduced costs below the forbidden ones");
  CHECK(!pool_contains(nm.master, Pattern({1, 1})));
}

TEST_CASE("capped reruns route around the forbidden maximizer") {
  // weights 55/25/20, demands 1/2/1: the full bin (1,1,1) prices best at
  // every dual the masters produce; with it forbidden the chain must keep
  // supplying the runner-up patterns
  const Instance inst = parse_instance("3\n100\n55 1\n25 2\n20 1\n");
  PatternSet forbidden{Pattern({1, 1, 1})};
  NodeMaster nm = make_node_master(inst.weights(), inst.capacity(), inst.demands(),
                                   initialize_pool(inst).columns(), forbidden);
  REQUIRE(nm.uncovered_rows.empty());

  const ColGenOutcome out = generate_columns(nm.master, forbidden, {});
  CHECK(out.status == ColGenOutcome::Status::Premature);
  CHECK(!out.proven_optimal);
  // LP over everything except (1,1,1): (1,1,0), (0,2,1), (1,0,1) at 2/3,
  // 2/3, 1/3 covers all demands with value 5/3
  CHECK(out.z_lp == doctest::Approx(5.0 / 3.0).epsilon(1e-7));
  CHECK(out.lower_bound == 2);
  CHECK(out.stats.decrement_solves >= 2);
  CHECK(out.stats.columns_generated >= 1);
  CHECK(out.note == "only nonpositive reduced costs below the forbidden ones");
  CHECK(!pool_contains(nm.master, Pattern({1, 1, 1})));
  for (const Pattern& p : nm.master.columns()) {
    CHECK(pattern_within(p, inst.demands()));
  }
}

TEST_CASE("rows whose singletons are all forbidden are reported uncovered") {
  const Instance inst = parse_instance("2\n100\n60\n40\n");
  PatternSet forbidden{Pattern({1, 0})};
  NodeMaster nm = make_node_master(inst.weights(), inst.capacity(), inst.demands(),
                                   initialize_pool(inst).columns(), forbidden);
  REQUIRE(nm.uncovered_rows.size() == 1);
  CHECK(nm.uncovered_rows[0] == 0);
}

TEST_CASE("node masters drop patterns that exceed residual demands") {
  const Instance inst = parse_instance("2\n100\n30 5\n20 3\n");
  RestrictedMaster pool = initialize_pool(inst);
  // residual state after fixing bins that consumed most copies
  const std::vector<int> residual{1, 1};
  NodeMaster nm =
      make_node_master(inst.weights(), inst.capacity(), residual, pool.columns(), {});
  CHECK(nm.uncovered_rows.empty());
  for (const Pattern& p : nm.master.columns()) {
    CHECK(pattern_within(p, residual));
  }
  CHECK(pool_contains(nm.master, Pattern({1, 0})));
  CHECK(pool_contains(nm.master, Pattern({0, 1})));
  CHECK(!pool_contains(nm.master, Pattern({2, 2})));

  const ColGenOutcome out = generate_columns(nm.master, {}, {});
  REQUIRE(out.status == ColGenOutcome::Status::Proved);
  // 30 + 20 fits one bin
  CHECK(out.z_lp == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("an expired deadline ends pricing prematurely but keeps the lp") {
  const Instance inst = parse_instance("6\n100\n72\n54\n34\n33\n19\n18\n");
  RestrictedMaster m = initialize_pool(inst);
  ColGenConfig cfg;
  cfg.deadline = std::chrono::steady_clock::now() - std::chrono::milliseconds(1);
  const ColGenOutcome out = generate_columns(m, {}, cfg);
  CHECK(out.status == ColGenOutcome::Status::Premature);
  CHECK(!out.proven_optimal);
  CHECK(out.note == "deadline reached");
  CHECK(out.lp.status == LpSolution::Status::Optimal);  // solved before the check
  CHECK(out.z_lp > 0.0);
}

TEST_CASE("a master with an uncoverable row reports infeasibility") {
  const Instance inst = parse_instance("2\n100\n60\n40\n");
  PatternSet forbidden{Pattern({1, 0}), Pattern({1, 1})};
  NodeMaster nm = make_node_master(inst.weights(), inst.capacity(), inst.demands(),
                                   initialize_pool(inst).columns(), forbidden);
  REQUIRE(!nm.uncovered_rows.empty());
  const ColGenOutcome out = generate_columns(nm.master, forbidden, {});
  CHECK(out.status == ColGenOutcome::Status::Infeasible);
}
