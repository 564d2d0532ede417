#include "geombp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "geombp/heuristics.hpp"

namespace geombp {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failed: " + path);
  return std::move(buf).str();
}

std::string infer_class(const std::string& path) {
  const std::string label = fs::path(path).parent_path().filename().string();
  return label.empty() ? "root" : label;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::HighestValue: return "hv";
    case Criterion::L0: return "l0";
    case Criterion::L2: return "l2";
    default: return "ls";
  }
}

std::optional<Criterion> criterion_from(std::string_view s) {
  if (s == "hv") return Criterion::HighestValue;
  if (s == "l0") return Criterion::L0;
  if (s == "l2") return Criterion::L2;
  if (s == "ls") return Criterion::Ls;
  return std::nullopt;
}

bool is_trivial(const Instance& inst) {
  return lower_bound(inst) == best_fit_decreasing(inst).objective();
}

std::vector<size_t> filter_trivial(std::span<const Instance> instances) {
  std::vector<size_t> keep;
  for (size_t i = 0; i < instances.size(); ++i)
    if (!is_trivial(instances[i])) keep.push_back(i);
  return keep;
}

std::vector<std::string> collect_instance_files(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const std::string& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        if (entry.is_regular_file()) files.push_back(entry.path().string());
      }
    } else {
      files.push_back(p);  // missing files surface as failure rows
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

BenchmarkReport run_benchmark(const std::vector<std::string>& paths, const BenchmarkConfig& cfg) {
  const std::vector<std::string> files = collect_instance_files(paths);
  std::vector<RunRecord> recs(files.size());
  std::vector<char> excluded(files.size(), 0);

  auto run_one = [&](size_t i) {
    RunRecord r;
    r.instance = files[i];
    r.class_label = cfg.class_label.empty() ? infer_class(files[i]) : cfg.class_label;
    try {
      const Instance inst = parse_instance(read_file(files[i]), cfg.format);
      r.trivial = is_trivial(inst);
      if (cfg.exclude_trivial && r.trivial) {
        excluded[i] = 1;
      } else {
        const SolveReport sr = solve(inst, cfg.solver);
        r.ok = true;
        r.optimum = sr.optimum;
        r.proved = sr.proved_optimal;
        r.wall_seconds = cfg.omit_times ? 0.0 : sr.wall_seconds;
        r.counters = sr.counters;
      }
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    recs[i] = std::move(r);
  };

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || files.size() <= 1) {
    for (size_t i = 0; i < files.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const size_t workers = std::min<size_t>(static_cast<size_t>(jobs), files.size());
    pool.reserve(workers);
    for (size_t t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) run_one(i);
      });
    for (std::thread& th : pool) th.join();
  }

  BenchmarkReport rep;
  for (size_t i = 0; i < files.size(); ++i) {
    if (excluded[i])
      rep.excluded_trivial.push_back(files[i]);
    else
      rep.records.push_back(std::move(recs[i]));
  }
  return rep;
}

std::vector<ClassAggregate> aggregate_classes(std::span<const RunRecord> records) {
  std::map<std::string, ClassAggregate> by_class;
  for (const RunRecord& r : records) {
    ClassAggregate& a = by_class[r.class_label];
    a.class_label = r.class_label;
    ++a.instances;
    if (!r.ok) {
      ++a.failed;
      continue;
    }
    if (r.proved) ++a.solved;
    a.avg_col_root += static_cast<double>(r.counters.n_col_root);
    a.avg_exact_root += static_cast<double>(r.counters.n_exact_root);
    a.avg_total_node += static_cast<double>(r.counters.n_total_node);
    a.avg_poll_node += static_cast<double>(r.counters.n_poll_node);
    a.avg_seconds += r.wall_seconds;
  }
  std::vector<ClassAggregate> out;
  out.reserve(by_class.size());
  for (auto& [label, a] : by_class) {
    const int ok_rows = a.instances - a.failed;
    if (ok_rows > 0) {
      a.avg_col_root /= ok_rows;
      a.avg_exact_root /= ok_rows;
      a.avg_total_node /= ok_rows;
      a.avg_poll_node /= ok_rows;
      a.avg_seconds /= ok_rows;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::string instances_csv(const BenchmarkReport& rep) {
  std::string out =
      "instance,class,optimum,proved,n_col_root,n_exact_root,n_total_node,n_poll_node,"
      "wall_seconds,trivial,status\n";
  for (const RunRecord& r : rep.records) {
    out += csv_quote(r.instance) + ',' + csv_quote(r.class_label) + ',';
    out += std::to_string(r.optimum) + ',' + (r.proved ? "1" : "0") + ',';
    out += std::to_string(r.counters.n_col_root) + ',' + std::to_string(r.counters.n_exact_root) +
           ',' + std::to_string(r.counters.n_total_node) + ',' +
           std::to_string(r.counters.n_poll_node) + ',';
    out += fixed6(r.wall_seconds) + ',' + (r.trivial ? "1" : "0") + ',';
    out += r.ok ? "ok" : csv_quote(r.error);
    out += '\n';
  }
  return out;
}

std::string classes_csv(const BenchmarkReport& rep) {
  std::string out =
      "class,instances,solved,failed,avg_n_col_root,avg_n_exact_root,avg_n_total_node,"
      "avg_n_poll_node,avg_seconds\n";
  for (const ClassAggregate& a : aggregate_classes(rep.records)) {
    out += csv_quote(a.class_label) + ',' + std::to_string(a.instances) + ',' +
           std::to_string(a.solved) + ',' + std::to_string(a.failed) + ',';
    out += fixed6(a.avg_col_root) + ',' + fixed6(a.avg_exact_root) + ',' +
           fixed6(a.avg_total_node) + ',' + fixed6(a.avg_poll_node) + ',' +
           fixed6(a.avg_seconds) + '\n';
  }
  return out;
}

std::string report_json(const BenchmarkReport& rep, const BenchmarkConfig& cfg) {
  nlohmann::json j;
  j["config"] = {
      {"criterion", criterion_name(cfg.solver.criterion)},
      {"sectional", cfg.solver.sectional},
      {"delta0", cfg.solver.delta0},
      {"time_limit_seconds", cfg.solver.time_limit_seconds},
      {"batch_stride", cfg.solver.batch_stride},
      {"batch_mode", cfg.solver.batch_mode == BatchMode::Equality ? "eq" : "ineq"},
      {"batch_sense", cfg.solver.batch_sense == BatchSense::Maximize ? "max" : "min"},
      {"jobs", cfg.jobs},
      {"exclude_trivial", cfg.exclude_trivial},
      {"omit_times", cfg.omit_times},
  };
  j["instances"] = nlohmann::json::array();
  for (const RunRecord& r : rep.records) {
    nlohmann::json row = {
        {"instance", r.instance}, {"class", r.class_label},   {"trivial", r.trivial},
        {"ok", r.ok},             {"optimum", r.optimum},     {"proved", r.proved},
        {"wall_seconds", r.wall_seconds},
        {"counters",
         {{"n_col_root", r.counters.n_col_root},
          {"n_exact_root", r.counters.n_exact_root},
          {"n_total_node", r.counters.n_total_node},
          {"n_poll_node", r.counters.n_poll_node}}},
    };
    if (!r.ok) row["error"] = r.error;
    j["instances"].push_back(std::move(row));
  }
  j["classes"] = nlohmann::json::array();
  for (const ClassAggregate& a : aggregate_classes(rep.records)) {
    j["classes"].push_back({{"class", a.class_label},
                            {"instances", a.instances},
                            {"solved", a.solved},
                            {"failed", a.failed},
                            {"avg_n_col_root", a.avg_col_root},
                            {"avg_n_exact_root", a.avg_exact_root},
                            {"avg_n_total_node", a.avg_total_node},
                            {"avg_n_poll_node", a.avg_poll_node},
                            {"avg_seconds", a.avg_seconds}});
  }
  j["excluded_trivial"] = rep.excluded_trivial;
  return j.dump(2) + "\n";
}

void write_reports(const BenchmarkReport& rep, const BenchmarkConfig& cfg,
                   const std::string& out_dir) {
  fs::create_directories(out_dir);
  const auto write = [&](const char* name, const std::string& text) {
    const fs::path p = fs::path(out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + p.string());
  };
  write("instances.csv", instances_csv(rep));
  write("classes.csv", classes_csv(rep));
  write("report.json", report_json(rep, cfg));
}

}  // namespace geombp
