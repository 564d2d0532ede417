#include "geombp/core.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include <json.hpp>

namespace geombp {

namespace {

void check_weight(int weight, int capacity, int line) {
  if (weight <= 0) {
    throw ValidationError("non-positive weight " + std::to_string(weight) + " at line " +
                          std::to_string(line));
  }
  if (weight > capacity) {
    throw ValidationError("weight " + std::to_string(weight) + " exceeds capacity " +
                          std::to_string(capacity) + " at line " + std::to_string(line));
  }
}

}  // namespace

Instance::Instance(int capacity, std::vector<Item> items)
    : capacity_(capacity), items_(std::move(items)) {
  if (capacity_ <= 0) throw ValidationError("capacity must be positive");
  if (items_.empty()) throw ValidationError("instance has no items");
  for (size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    if (it.weight <= 0 || it.weight > capacity_) {
      throw ValidationError("item " + std::to_string(i + 1) + " weight " +
                            std::to_string(it.weight) + " outside (0, capacity]");
    }
    if (it.demand < 1) {
      throw ValidationError("item " + std::to_string(i + 1) + " demand " +
                            std::to_string(it.demand) + " below 1");
    }
    if (i > 0 && items_[i - 1].weight <= it.weight) {
      throw ValidationError("weights not strictly decreasing at item " + std::to_string(i + 1));
    }
  }
}

std::vector<int> Instance::weights() const {
  std::vector<int> w(items_.size());
  for (size_t i = 0; i < items_.size(); ++i) w[i] = items_[i].weight;
  return w;
}

std::vector<int> Instance::demands() const {
  std::vector<int> d(items_.size());
  for (size_t i = 0; i < items_.size(); ++i) d[i] = items_[i].demand;
  return d;
}

long long Instance::total_unit_count() const {
  long long n = 0;
  for (const Item& it : items_) n += it.demand;
  return n;
}

long long Instance::total_weight() const {
  long long s = 0;
  for (const Item& it : items_) s += static_cast<long long>(it.weight) * it.demand;
  return s;
}

Instance canonicalize(int capacity, std::span<const RawWeight> raw) {
  if (capacity <= 0) throw ValidationError("capacity must be positive");
  if (raw.empty()) throw ValidationError("no items given");
  // greater<> keeps the map in decreasing weight order, which is the
  // canonical item order.
  std::map<int, int, std::greater<>> demand_of;
  for (const RawWeight& rw : raw) {
    check_weight(rw.weight, capacity, rw.line);
    demand_of[rw.weight] += 1;
  }
  std::vector<Item> items;
  items.reserve(demand_of.size());
  for (auto [w, d] : demand_of) items.push_back({w, d});
  return Instance(capacity, std::move(items));
}

Instance canonicalize(int capacity, std::span<const int> weights) {
  std::vector<RawWeight> raw(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) raw[i] = {weights[i], static_cast<int>(i + 1)};
  return canonicalize(capacity, raw);
}

bool Pattern::is_zero() const {
  return std::all_of(counts.begin(), counts.end(), [](int c) { return c == 0; });
}

size_t PatternHash::operator()(const Pattern& p) const {
  // FNV-1a over the raw counts
  uint64_t h = 1469598103934665603ull;
  for (int c : p.counts) {
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(c));
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

long long pattern_weight(const Pattern& p, std::span<const int> weights) {
  long long s = 0;
  for (size_t i = 0; i < p.counts.size() && i < weights.size(); ++i) {
    s += static_cast<long long>(p.counts[i]) * weights[i];
  }
  return s;
}

bool pattern_within(const Pattern& p, std::span<const int> bounds) {
  if (p.counts.size() != bounds.size()) return false;
  for (size_t i = 0; i < bounds.size(); ++i) {
    if (p.counts[i] < 0 || p.counts[i] > bounds[i]) return false;
  }
  return true;
}

int Solution::objective() const {
  int n = 0;
  for (const Bin& b : bins) n += b.load;
  return n;
}

namespace {

struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
};

// Splits into non-blank lines of whitespace tokens; tolerates CRLF.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos) ? text.substr(pos)
                                                            : text.substr(pos, eol - pos);
    ++number;
    Line out;
    out.number = number;
    size_t i = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; };
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      if (i > start) out.tokens.push_back(line.substr(start, i - start));
    }
    if (!out.tokens.empty()) lines.push_back(std::move(out));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

int parse_int(std::string_view token, int line) {
  int value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("expected an integer, got \"" + std::string(token) + "\"", line);
  }
  return value;
}

int expect_single_int(const std::vector<Line>& lines, size_t idx, const char* what) {
  if (idx >= lines.size()) {
    int last = lines.empty() ? 1 : lines.back().number;
    throw ParseError(std::string("missing ") + what, last);
  }
  const Line& l = lines[idx];
  if (l.tokens.size() != 1) {
    throw ParseError(std::string("expected one token for ") + what + ", got " +
                         std::to_string(l.tokens.size()),
                     l.number);
  }
  return parse_int(l.tokens[0], l.number);
}

}  // namespace

Instance parse_instance(std::string_view text, InstanceFormat format) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty input", 1);
  int declared = expect_single_int(lines, 0, "item count");
  if (declared <= 0) throw ParseError("item count must be positive", lines[0].number);
  int capacity = expect_single_int(lines, 1, "capacity");
  if (capacity <= 0) throw ParseError("capacity must be positive", lines[1].number);

  size_t first_item = 2;
  if (lines.size() < first_item + 1) {
    throw ParseError("no item lines (declared " + std::to_string(declared) + ")",
                     lines.back().number);
  }
  if (format == InstanceFormat::Auto) {
    format = lines[first_item].tokens.size() == 2 ? InstanceFormat::Csp : InstanceFormat::Bpp;
  }
  size_t expected_tokens = (format == InstanceFormat::Csp) ? 2 : 1;

  size_t have = lines.size() - first_item;
  if (have < static_cast<size_t>(declared)) {
    throw ParseError("declared " + std::to_string(declared) + " item lines but found " +
                         std::to_string(have),
                     lines.back().number);
  }
  if (have > static_cast<size_t>(declared)) {
    throw ParseError("unexpected content after " + std::to_string(declared) + " item lines",
                     lines[first_item + static_cast<size_t>(declared)].number);
  }

  if (format == InstanceFormat::Bpp) {
    std::vector<RawWeight> raw;
    raw.reserve(static_cast<size_t>(declared));
    for (size_t k = 0; k < static_cast<size_t>(declared); ++k) {
      const Line& l = lines[first_item + k];
      if (l.tokens.size() != expected_tokens) {
        throw ParseError("expected 1 token per item line, got " + std::to_string(l.tokens.size()),
                         l.number);
      }
      raw.push_back({parse_int(l.tokens[0], l.number), l.number});
    }
    return canonicalize(capacity, raw);
  }

  // CSP: weight/demand pairs; repeated weights are merged.
  std::map<int, int, std::greater<>> demand_of;
  for (size_t k = 0; k < static_cast<size_t>(declared); ++k) {
    const Line& l = lines[first_item + k];
    if (l.tokens.size() != expected_tokens) {
      throw ParseError("expected 2 tokens per item line, got " + std::to_string(l.tokens.size()),
                       l.number);
    }
    int w = parse_int(l.tokens[0], l.number);
    int d = parse_int(l.tokens[1], l.number);
    check_weight(w, capacity, l.number);
    if (d < 1) throw ParseError("demand must be at least 1", l.number);
    demand_of[w] += d;
  }
  std::vector<Item> items;
  items.reserve(demand_of.size());
  for (auto [w, d] : demand_of) items.push_back({w, d});
  return Instance(capacity, std::move(items));
}

std::string to_text(const Instance& inst) {
  std::ostringstream os;
  os << inst.size() << '\n' << inst.capacity() << '\n';
  for (const Item& it : inst.items()) os << it.weight << ' ' << it.demand << '\n';
  return os.str();
}

VerifyResult verify_solution(const Instance& inst, const Solution& sol) {
  VerifyResult r;
  const int n = inst.size();
  std::vector<long long> packed(static_cast<size_t>(n), 0);
  for (size_t b = 0; b < sol.bins.size(); ++b) {
    const Bin& bin = sol.bins[b];
    if (bin.load < 1) {
      r.reasons.push_back("bin " + std::to_string(b) + " has non-positive load");
      continue;
    }
    if (bin.pattern.size() != n) {
      r.reasons.push_back("bin " + std::to_string(b) + " pattern length " +
                          std::to_string(bin.pattern.size()) + " != " + std::to_string(n));
      continue;
    }
    if (bin.pattern.is_zero()) {
      r.reasons.push_back("bin " + std::to_string(b) + " is empty");
      continue;
    }
    long long fill = 0;
    for (int i = 0; i < n; ++i) {
      int c = bin.pattern.counts[static_cast<size_t>(i)];
      if (c < 0) {
        r.reasons.push_back("bin " + std::to_string(b) + " has negative count for item " +
                            std::to_string(i));
        c = 0;
      }
      fill += static_cast<long long>(c) * inst.weight(i);
      packed[static_cast<size_t>(i)] += static_cast<long long>(c) * bin.load;
    }
    if (fill > inst.capacity()) {
      r.reasons.push_back("bin " + std::to_string(b) + " exceeds capacity: " +
                          std::to_string(fill) + " > " + std::to_string(inst.capacity()));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (packed[static_cast<size_t>(i)] != inst.demand(i)) {
      r.reasons.push_back("item " + std::to_string(i) + " demand mismatch: packed " +
                          std::to_string(packed[static_cast<size_t>(i)]) + ", demand " +
                          std::to_string(inst.demand(i)));
    }
  }
  r.ok = r.reasons.empty();
  return r;
}

namespace {

nlohmann::json instance_json(const Instance& inst) {
  nlohmann::json j;
  j["capacity"] = inst.capacity();
  j["items"] = nlohmann::json::array();
  for (const Item& it : inst.items()) {
    j["items"].push_back({{"weight", it.weight}, {"demand", it.demand}});
  }
  return j;
}

nlohmann::json solution_json(const Solution& sol) {
  nlohmann::json bins = nlohmann::json::array();
  for (const Bin& b : sol.bins) {
    bins.push_back({{"counts", b.pattern.counts}, {"load", b.load}});
  }
  return nlohmann::json{{"bins", bins}};
}

}  // namespace

std::string instance_to_json(const Instance& inst) { return instance_json(inst).dump(); }

std::string solution_to_json(const Solution& sol) { return solution_json(sol).dump(); }

std::string run_to_json(const Instance& inst, const Solution& sol) {
  nlohmann::json j = instance_json(inst);
  j["bins"] = solution_json(sol)["bins"];
  return j.dump();
}

Instance instance_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Item> items;
  for (const auto& it : j.at("items")) {
    items.push_back({it.at("weight").get<int>(), it.at("demand").get<int>()});
  }
  return Instance(j.at("capacity").get<int>(), std::move(items));
}

Solution solution_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Solution sol;
  for (const auto& b : j.at("bins")) {
    Bin bin;
    bin.pattern.counts = b.at("counts").get<std::vector<int>>();
    bin.load = b.at("load").get<int>();
    sol.bins.push_back(std::move(bin));
  }
  return sol;
}

}  // namespace geombp
