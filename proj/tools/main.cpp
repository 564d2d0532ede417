// geombp: exact bin packing / cutting stock solver over files or
// directories of instances, with optional CSV/JSON benchmark reports.
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geombp/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void print_record(const geombp::RunRecord& r) {
  if (!r.ok) {
    std::printf("%s: FAILED (%s)\n", r.instance.c_str(), r.error.c_str());
    return;
  }
  std::printf("%s: optimum %d %s %.3fs  n_col_root=%ld n_exact_root=%ld n_total_node=%ld "
              "n_poll_node=%ld%s\n",
              r.instance.c_str(), r.optimum, r.proved ? "(proved)" : "(not proved)",
              r.wall_seconds, r.counters.n_col_root, r.counters.n_exact_root,
              r.counters.n_total_node, r.counters.n_poll_node, r.trivial ? " [trivial]" : "");
}

void print_solution(const geombp::Instance& inst, const geombp::Solution& sol) {
  const std::vector<int> w = inst.weights();
  for (size_t b = 0; b < sol.bins.size(); ++b) {
    const geombp::Bin& bin = sol.bins[b];
    std::string items;
    for (size_t i = 0; i < bin.pattern.counts.size(); ++i)
      for (int rep = 0; rep < bin.pattern.counts[i]; ++rep) items += ' ' + std::to_string(w[i]);
    std::printf("  bin %zu x%d (fill %lld/%d):%s\n", b + 1, bin.load,
                geombp::pattern_weight(bin.pattern, w), inst.capacity(), items.c_str());
  }
}

// Solve each file in place and print its bins; no report files.
int direct_mode(const std::vector<std::string>& paths, const geombp::BenchmarkConfig& cfg,
                bool strict) {
  int rc = 0;
  for (const std::string& path : geombp::collect_instance_files(paths)) {
    try {
      const geombp::Instance inst = geombp::parse_instance(read_file(path), cfg.format);
      const geombp::SolveReport rep = geombp::solve(inst, cfg.solver);
      geombp::RunRecord r;
      r.instance = path;
      r.ok = true;
      r.trivial = geombp::is_trivial(inst);
      r.optimum = rep.optimum;
      r.proved = rep.proved_optimal;
      r.wall_seconds = cfg.omit_times ? 0.0 : rep.wall_seconds;
      r.counters = rep.counters;
      print_record(r);
      print_solution(inst, rep.solution);
      if (strict && !rep.proved_optimal) rc = 2;
    } catch (const std::exception& e) {
      std::printf("%s: FAILED (%s)\n", path.c_str(), e.what());
      if (strict) rc = 2;
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact one-dimensional bin packing / cutting stock solver"};

  std::vector<std::string> paths;
  std::string format = "auto", criterion = "l2", batch_mode = "ineq", batch_sense = "max";
  std::string sectional = "on", out_dir, class_label;
  geombp::BenchmarkConfig cfg;
  bool strict = false, show_solution = false;

  app.add_option("paths", paths, "instance files or directories")->required();
  app.add_option("--format", format, "instance text format")
      ->check(CLI::IsMember({"bpp", "csp", "auto"}))
      ->capture_default_str();
  app.add_option("--criterion", criterion, "bin ranking criterion")
      ->check(CLI::IsMember({"hv", "l0", "l2", "ls"}))
      ->capture_default_str();
  app.add_option("--time-limit", cfg.solver.time_limit_seconds,
                 "per-instance limit in seconds, <= 0 for none")
      ->capture_default_str();
  app.add_option("--delta0", cfg.solver.delta0, "initial pricing cap offset")
      ->capture_default_str();
  app.add_option("--batch-stride", cfg.solver.batch_stride, "dive every this many depths, 0 never")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--batch-mode", batch_mode, "batch selection coverage")
      ->check(CLI::IsMember({"eq", "ineq"}))
      ->capture_default_str();
  app.add_option("--batch-sense", batch_sense, "batch selection objective sense")
      ->check(CLI::IsMember({"max", "min"}))
      ->capture_default_str();
  app.add_option("--sectional", sectional, "binary pricing pass before exact pricing")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "parallel instances")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", out_dir, "directory for instances.csv, classes.csv, report.json");
  app.add_option("--class-label", cfg.class_label,
                 "force this class label instead of the directory name");
  app.add_flag("--exclude-trivial", cfg.exclude_trivial,
               "skip instances whose combinatorial bound matches best fit decreasing");
  app.add_flag("--omit-times", cfg.omit_times, "zero time fields for reproducible reports");
  app.add_flag("--root-only", cfg.solver.root_only, "stop after the root node");
  app.add_flag("--strict", strict, "exit 2 when any instance is not proved optimal");
  auto* sol_flag = app.add_flag("--print-solution", show_solution, "print the bins of each solve");
  sol_flag->excludes(app.get_option("--out"));

  CLI11_PARSE(app, argc, argv);

  cfg.format = format == "bpp"   ? geombp::InstanceFormat::Bpp
               : format == "csp" ? geombp::InstanceFormat::Csp
                                 : geombp::InstanceFormat::Auto;
  cfg.solver.criterion = *geombp::criterion_from(criterion);
  cfg.solver.batch_mode =
      batch_mode == "eq" ? geombp::BatchMode::Equality : geombp::BatchMode::Inequality;
  cfg.solver.batch_sense =
      batch_sense == "min" ? geombp::BatchSense::Minimize : geombp::BatchSense::Maximize;
  cfg.solver.sectional = sectional == "on";

  try {
    if (show_solution) return direct_mode(paths, cfg, strict);

    const geombp::BenchmarkReport rep = geombp::run_benchmark(paths, cfg);
    for (const geombp::RunRecord& r : rep.records) print_record(r);
    for (const std::string& name : rep.excluded_trivial)
      std::printf("%s: excluded (trivial)\n", name.c_str());
    if (!out_dir.empty()) {
      geombp::write_reports(rep, cfg, out_dir);
      std::printf("reports written to %s\n", out_dir.c_str());
    }
    if (strict)
      for (const geombp::RunRecord& r : rep.records)
        if (!r.ok || !r.proved) return 2;
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
