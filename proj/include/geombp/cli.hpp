// Benchmark harness: run the solver over instance files or directories
// and emit per-instance and per-class reports (CSV and JSON).
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geombp/bnp.hpp"

namespace geombp {

struct RunRecord {
  std::string instance;  // path as collected
  std::string class_label;
  bool ok = false;       // parsed and solved; failure reason in `error` otherwise
  std::string error;
  bool trivial = false;  // combinatorial bound already matches best fit decreasing
  int optimum = 0;
  bool proved = false;
  double wall_seconds = 0.0;
  SolveCounters counters;
};

struct BenchmarkConfig {
  InstanceFormat format = InstanceFormat::Auto;
  SolverConfig solver;
  int jobs = 1;
  bool exclude_trivial = false;
  // zero every time field so reruns produce byte-identical reports
  bool omit_times = false;
  std::string class_label;  // empty: label by parent directory name
};

struct BenchmarkReport {
  std::vector<RunRecord> records;
  std::vector<std::string> excluded_trivial;
};

struct ClassAggregate {
  std::string class_label;
  int instances = 0;  // all rows of the class, failures included
  int solved = 0;     // proved within the configured limit
  int failed = 0;     // unreadable or unparseable
  double avg_col_root = 0.0;
  double avg_exact_root = 0.0;
  double avg_total_node = 0.0;
  double avg_poll_node = 0.0;
  double avg_seconds = 0.0;  // averages are over the non-failed rows
};

const char* criterion_name(Criterion c);
std::optional<Criterion> criterion_from(std::string_view s);

// Trivial: the combinatorial lower bound equals the best-fit-decreasing
// bin count, so no search is needed.
bool is_trivial(const Instance& inst);

// Indices of the instances worth solving (the non-trivial ones).
std::vector<size_t> filter_trivial(std::span<const Instance> instances);

// Files or directories (recursed), expanded and sorted; missing paths
// stay in the list so they surface as failure rows.
std::vector<std::string> collect_instance_files(const std::vector<std::string>& paths);

// One solve per file, optionally across a worker pool.  A file that
// cannot be read or parsed becomes a failure row; the run continues.
BenchmarkReport run_benchmark(const std::vector<std::string>& paths, const BenchmarkConfig& cfg);

// Per-class rollup of the per-instance rows, sorted by label.
std::vector<ClassAggregate> aggregate_classes(std::span<const RunRecord> records);

std::string instances_csv(const BenchmarkReport& rep);
std::string classes_csv(const BenchmarkReport& rep);
std::string report_json(const BenchmarkReport& rep, const BenchmarkConfig& cfg);

// instances.csv, classes.csv and report.json under out_dir
void write_reports(const BenchmarkReport& rep, const BenchmarkConfig& cfg,
                   const std::string& out_dir);

}  // namespace geombp
