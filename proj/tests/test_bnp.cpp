#include <doctest.h>

#include <random>

#include "geombp/bnp.hpp"
#include "oracles.hpp"

using namespace geombp;

TEST_CASE("six-item reference instance solves to three proved bins") {
  const Instance inst = parse_instance("6\n100\n72\n54\n34\n33\n19\n18\n");
  const SolveReport rep = solve(inst);
  CHECK(rep.optimum == 3);
  CHECK(rep.proved_optimal);
  CHECK(rep.best_bound == 3);
  CHECK(rep.root_bound == 3);
  CHECK(rep.root_bound_certified);
  CHECK(rep.counters.n_total_node >= 1);
  CHECK(rep.counters.n_col_root >= 1);
  const VerifyResult v = verify_solution(inst, rep.solution);
  REQUIRE_MESSAGE(v.ok, (v.reasons.empty() ? "" : v.reasons[0]));
  CHECK(rep.solution.objective() == 3);
}

TEST_CASE("every diving criterion reaches the same proved optimum") {
  const Instance inst = parse_instance("6\n100\n72\n54\n34\n33\n19\n18\n");
  for (Criterion crit :
       {Criterion::HighestValue, Criterion::L0, Criterion::L2, Criterion::Ls}) {
    SolverConfig cfg;
    cfg.criterion = crit;
    const SolveReport rep = solve(inst, cfg);
    CHECK(rep.optimum == 3);
    CHECK(rep.proved_optimal);
    CHECK(verify_solution(inst, rep.solution).ok);
  }
}

TEST_CASE("random instances match the exhaustive packing oracle") {
  std::mt19937 g(2024);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const Instance inst = testutil::random_small_instance(g);
    if (inst.total_unit_count() > 10) continue;
    const int want = testutil::min_bins(inst);
    const SolveReport rep = solve(inst);
    REQUIRE_MESSAGE(rep.optimum == want, "trial " << trial << ": got " << rep.optimum << " want "
                                                  << want << " on\n"
                                                  << to_text(inst));
    REQUIRE(rep.proved_optimal);
    CHECK(rep.best_bound == rep.optimum);
    CHECK(verify_solution(inst, rep.solution).ok);
    ++checked;
  }
  CHECK(checked >= 40);
}

TEST_CASE("configuration variations preserve exactness") {
  std::mt19937 g(4048);
  std::vector<Instance> sample;
  for (int trial = 0; trial < 40 && sample.size() < 12; ++trial) {
    const Instance inst = testutil::random_small_instance(g);
    if (inst.total_unit_count() <= 9) sample.push_back(inst);
  }
  REQUIRE(!sample.empty());
  for (const Instance& inst : sample) {
    const int want = testutil::min_bins(inst);

    SolverConfig no_batch;
    no_batch.batch_stride = 0;
    SolverConfig eq_batch;
    eq_batch.batch_mode = BatchMode::Equality;
    SolverConfig min_batch;
    min_batch.batch_sense = BatchSense::Minimize;
    SolverConfig plain_pricing;
    plain_pricing.sectional = false;
    SolverConfig harmonic;
    harmonic.criterion = Criterion::L0;

    for (const SolverConfig& cfg : {no_batch, eq_batch, min_batch, plain_pricing, harmonic}) {
      const SolveReport rep = solve(inst, cfg);
      REQUIRE_MESSAGE(rep.optimum == want, "bad optimum on\n" << to_text(inst));
      REQUIRE(rep.proved_optimal);
      CHECK(verify_solution(inst, rep.solution).ok);
    }
  }
}

TEST_CASE("high multiplicity demands stay exact") {
  const Instance inst = parse_instance("3\n100\n42 13\n31 9\n17 21\n", InstanceFormat::Csp);
  const SolveReport rep = solve(inst);
  CHECK(rep.proved_optimal);
  CHECK(verify_solution(inst, rep.solution).ok);
  // weight bound: ceil((42*13 + 31*9 + 17*21) / 100) = ceil(1182/100) = 12
  CHECK(rep.optimum >= 12);
  CHECK(rep.best_bound == rep.optimum);
}

TEST_CASE("an exhausted time limit still returns a valid packing and bound") {
  // triplet-style instance: every bin must combine one large, one medium
  // and one small item, which keeps the tree busy enough to hit a tiny limit
  const Instance inst = parse_instance(
      "15\n100\n49\n48\n47\n46\n45\n34\n33\n31\n28\n27\n25\n24\n21\n21\n21\n");
  SolverConfig cfg;
  cfg.time_limit_seconds = 1e-4;
  const SolveReport rep = solve(inst, cfg);
  CHECK(verify_solution(inst, rep.solution).ok);
  CHECK(rep.optimum == rep.solution.objective());
  CHECK(rep.best_bound <= rep.optimum);
  CHECK(rep.best_bound >= 1);
  if (!rep.proved_optimal) {
    CHECK(rep.wall_seconds < 5.0);  // the limit was honoured, with slack for slow machines
  }
}

TEST_CASE("root-only mode processes exactly one node") {
  const Instance inst = parse_instance("6\n100\n72\n54\n34\n33\n19\n18\n");
  SolverConfig cfg;
  cfg.root_only = true;
  const SolveReport rep = solve(inst, cfg);
  CHECK(rep.counters.n_total_node == 1);
  CHECK(rep.counters.n_poll_node == 0);  // nothing is forbidden at the root
  CHECK(rep.root_bound == 3);
  CHECK(verify_solution(inst, rep.solution).ok);
  // the root gap happens to close here: bound 3 meets the heuristic incumbent
  CHECK(rep.proved_optimal);
  CHECK(rep.optimum == 3);
}

TEST_CASE("the root bound is reported even when branching continues") {
  // 51/49 pairs: root LP is integral but the incumbent needs work
  const Instance inst = parse_instance("2\n100\n51 4\n49 4\n", InstanceFormat::Csp);
  const SolveReport rep = solve(inst);
  CHECK(rep.optimum == 4);
  CHECK(rep.proved_optimal);
  CHECK(rep.root_bound == 4);
  CHECK(rep.root_bound_certified);
}

TEST_CASE("gap check closes only on certified matching bounds") {
  ColGenOutcome proved;
  proved.status = ColGenOutcome::Status::Proved;
  proved.proven_optimal = true;
  proved.z_lp = 2.6;
  proved.lower_bound = 3;
  CHECK(root_gap_check(proved, 3) == RootGap::Closed);
  CHECK(root_gap_check(proved, 4) == RootGap::Open);

  ColGenOutcome premature = proved;
  premature.status = ColGenOutcome::Status::Premature;
  premature.proven_optimal = false;
  CHECK(root_gap_check(premature, 3) == RootGap::Open);
}

TEST_CASE("node bounds add fixed bins to the pricing bound") {
  ColGenOutcome out;
  out.status = ColGenOutcome::Status::Proved;
  out.proven_optimal = true;
  out.z_lp = 2.4;
  out.lower_bound = 3;
  const NodeBound nb = node_bound(2, out);
  CHECK(nb.bound == 5);
  CHECK(nb.certified);

  out.proven_optimal = false;
  CHECK(!node_bound(2, out).certified);
}

TEST_CASE("single item instances close at the root") {
  const Instance inst = parse_instance("1\n10\n7 5\n", InstanceFormat::Csp);
  const SolveReport rep = solve(inst);
  CHECK(rep.optimum == 5);
  CHECK(rep.proved_optimal);
  CHECK(rep.counters.n_total_node == 1);
}

TEST_CASE("pairable halves fold into half as many bins") {
  const Instance inst = parse_instance("1\n100\n50 10\n", InstanceFormat::Csp);
  const SolveReport rep = solve(inst);
  CHECK(rep.optimum == 5);
  CHECK(rep.proved_optimal);
}
