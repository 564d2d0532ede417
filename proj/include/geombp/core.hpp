// Core model types for one-dimensional bin packing / cutting stock:
// canonical instances, packing patterns, solutions, text/JSON round-trips
// and solution verification.
//
// Canonical form: weights strictly decreasing, one entry per distinct
// weight, demands >= 1.  All downstream modules assume this ordering.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace geombp {

struct Item {
  int weight = 0;
  int demand = 0;
  bool operator==(const Item&) const = default;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Immutable canonical instance.  Construction validates every invariant;
// a constructed Instance never needs re-checking.
class Instance {
 public:
  Instance(int capacity, std::vector<Item> items);

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(items_.size()); }
  int weight(int i) const { return items_[static_cast<size_t>(i)].weight; }
  int demand(int i) const { return items_[static_cast<size_t>(i)].demand; }
  std::span<const Item> items() const { return items_; }
  std::vector<int> weights() const;
  std::vector<int> demands() const;
  long long total_unit_count() const;
  long long total_weight() const;  // sum of weight(i) * demand(i)

  bool operator==(const Instance&) const = default;

 private:
  int capacity_;
  std::vector<Item> items_;
};

// A weight with the input line it came from, so validation errors can
// point at the offending line of the source file.
struct RawWeight {
  int weight = 0;
  int line = 0;
};

// Merges duplicate weights into demands and sorts by decreasing weight.
Instance canonicalize(int capacity, std::span<const RawWeight> raw);
Instance canonicalize(int capacity, std::span<const int> weights);

// A pattern is one bin's content: counts[i] copies of item i.
struct Pattern {
  std::vector<int> counts;

  Pattern() = default;
  explicit Pattern(std::vector<int> c) : counts(std::move(c)) {}

  bool operator==(const Pattern&) const = default;
  // Lexicographic order over counts; larger-weight items come first in
  // canonical instances, so "greater" means heavier items preferred.
  auto operator<=>(const Pattern& o) const { return counts <=> o.counts; }

  bool is_zero() const;
  int size() const { return static_cast<int>(counts.size()); }
};

struct PatternHash {
  size_t operator()(const Pattern& p) const;
};

long long pattern_weight(const Pattern& p, std::span<const int> weights);
bool pattern_within(const Pattern& p, std::span<const int> bounds);

struct Bin {
  Pattern pattern;
  int load = 0;  // how many bins are cut with this pattern
  bool operator==(const Bin&) const = default;
};

struct Solution {
  std::vector<Bin> bins;
  int objective() const;  // total number of bins
  bool operator==(const Solution&) const = default;
};

enum class InstanceFormat { Bpp, Csp, Auto };

// BPP text: line 1 item-line count, line 2 capacity, then one weight per
// line (duplicates allowed).  CSP text: line 1 distinct-item count,
// line 2 capacity, then "weight demand" lines.  Auto mode detects CSP by
// a two-token first item line.  Blank lines and CRLF endings are
// tolerated everywhere.
Instance parse_instance(std::string_view text, InstanceFormat format = InstanceFormat::Auto);

// Canonical CSP text; parse(to_text(inst)) == inst.
std::string to_text(const Instance& inst);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> reasons;
};

// Checks pattern lengths, count bounds, capacity per bin, positive loads
// and exact demand coverage.  Never throws.
VerifyResult verify_solution(const Instance& inst, const Solution& sol);

// JSON bridge used by the benchmark harness:
//   instance: {"capacity": c, "items": [{"weight": w, "demand": d}, ...]}
//   solution: {"bins": [{"counts": [...], "load": l}, ...]}
std::string instance_to_json(const Instance& inst);
std::string solution_to_json(const Solution& sol);
std::string run_to_json(const Instance& inst, const Solution& sol);
Instance instance_from_json(std::string_view text);
Solution solution_from_json(std::string_view text);

}  // namespace geombp
