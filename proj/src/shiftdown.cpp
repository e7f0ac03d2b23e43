#include "sunflower/shiftdown.hpp"

#include <algorithm>
#include <unordered_map>

#include <boost/functional/hash.hpp>

namespace sunflower {

namespace {

struct SetHash {
  std::size_t operator()(const ElementSet& s) const { return boost::hash_range(s.begin(), s.end()); }
};

// Calls fn on every subset of `set` with at most `max_size` elements,
// including the empty set.
template <class Fn>
void for_each_small_subset(const ElementSet& set, std::size_t max_size, Fn&& fn) {
  ElementSet current;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    fn(current);
    if (current.size() == max_size) return;
    for (std::size_t i = start; i < set.size(); ++i) {
      current.push_back(set[i]);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::uint64_t shiftdowns_per_pair(std::size_t j, int beta) {
  std::uint64_t total = 0;
  const std::size_t top = std::min<std::size_t>(j, static_cast<std::size_t>(std::max(beta, 0)));
  for (std::size_t i = 0; i <= top; ++i)
    total += binomial(static_cast<unsigned>(j), static_cast<unsigned>(i)).convert_to<std::uint64_t>();
  return total;
}

PairCounts classify_pairs(const SetFamily& f, const Params& params, unsigned jobs) {
  const auto hist = intersection_histogram(f, jobs);
  PairCounts counts;
  for (std::size_t j = 0; j < hist.size(); ++j)
    (static_cast<int>(j) > params.beta ? counts.errors : counts.non_errors) += hist[j];
  return counts;
}

std::optional<CoreId> ShiftDownIndex::find(const ElementSet& c) const {
  auto it = std::lower_bound(cores_.begin(), cores_.end(), c,
                             [](const CoreEntry& e, const ElementSet& key) { return e.core < key; });
  if (it == cores_.end() || it->core != c) return std::nullopt;
  return static_cast<CoreId>(it - cores_.begin());
}

CoreId ShiftDownIndex::core_of_triple(std::uint64_t triple) const {
  auto it = std::upper_bound(cores_.begin(), cores_.end(), triple,
                             [](std::uint64_t t, const CoreEntry& e) { return t < e.triple_offset; });
  return static_cast<CoreId>(it - cores_.begin() - 1);
}

ShiftDownIndex build_shiftdowns(const SetFamily& f, const Params& params, std::uint64_t triple_budget,
                                unsigned jobs) {
  if (params.beta < 0 || params.beta > static_cast<int>(f.cardinality()))
    throw DomainError("beta must lie in [0, m]");
  const auto hist = intersection_histogram(f, jobs);
  std::uint64_t predicted = 0;
  for (std::size_t j = 0; j < hist.size(); ++j) predicted += hist[j] * shiftdowns_per_pair(j, params.beta);
  if (predicted > triple_budget)
    throw SizingError("shift-down construction would enumerate " + std::to_string(predicted) +
                      " triples, budget is " + std::to_string(triple_budget));

  ShiftDownIndex index;
  index.family_size_ = f.size();
  index.beta_ = params.beta;
  const std::size_t max_core = static_cast<std::size_t>(params.beta);

  std::unordered_map<ElementSet, CoreEntry, SetHash> building;
  auto& tel = index.telemetry_;
  for (std::size_t t = 0; t < f.size(); ++t) {
    for (std::size_t u = 0; u < f.size(); ++u) {
      const ElementSet common = f.intersection(t, u);
      const std::size_t j = common.size();
      const bool error = j > max_core;
      const PairId pair = static_cast<PairId>(t) * f.size() + u;
      std::uint64_t produced = 0;
      for_each_small_subset(common, max_core, [&](const ElementSet& c) {
        auto& entry = building[c];
        if (error) ++entry.e_count;
        else entry.n_pairs.push_back(pair);
        ++produced;
      });
      tel.max_per_pair = std::max(tel.max_per_pair, produced);
      if (error) {
        ++tel.e_pairs;
        tel.e_star += produced;
        if (j < 64 && produced >= (std::uint64_t{1} << j)) index.remark_b_per_pair_ = false;
      } else {
        ++tel.n_pairs;
        tel.n_star += produced;
      }
    }
  }
  if (!f.empty()) building.try_emplace(ElementSet{});

  index.cores_.reserve(building.size());
  for (auto& [core, entry] : building) {
    entry.core = core;
    index.cores_.push_back(std::move(entry));
  }
  std::sort(index.cores_.begin(), index.cores_.end(),
            [](const CoreEntry& a, const CoreEntry& b) { return a.core < b.core; });
  std::uint64_t offset = 0;
  for (auto& entry : index.cores_) {
    entry.triple_offset = offset;
    offset += entry.n_pairs.size();
  }
  tel.cores = index.cores_.size();
  return index;
}

bool psi1(const ShiftDownIndex& index, CoreId core, const Params& params) {
  const auto& entry = index.core(core);
  return Real(entry.e_count) * params.b_dag < Real(entry.n_pairs.size());
}

ShiftDownCheck check_shiftdowns(const SetFamily& f, const ShiftDownIndex& index, const Params& params) {
  ShiftDownCheck check;
  auto fail = [&](bool& flag, const std::string& why) {
    flag = false;
    if (check.first_failure.empty()) check.first_failure = why;
  };
  std::uint64_t n_star_total = 0;
  for (const auto& entry : index.cores()) {
    const auto members = f.members_containing(entry.core);
    std::uint64_t n = 0, e = 0;
    for (std::size_t a : members)
      for (std::size_t b : members) {
        if (static_cast<int>(f.intersection_size(a, b)) > params.beta) ++e;
        else ++n;
      }
    const std::uint64_t square = static_cast<std::uint64_t>(members.size()) * members.size();
    if (entry.n_pairs.size() + entry.e_count != square)
      fail(check.partition, "partition fails at core {" + format_set(entry.core) + "}");
    if (entry.n_pairs.size() != n || entry.e_count != e)
      fail(check.per_core, "per-core count mismatch at core {" + format_set(entry.core) + "}");
    n_star_total += entry.n_pairs.size();
  }

  const auto hist = intersection_histogram(f);
  std::uint64_t expected = 0;
  for (std::size_t j = 0; j < hist.size() && static_cast<int>(j) <= params.beta; ++j)
    expected += hist[j] * shiftdowns_per_pair(j, params.beta);
  if (expected != n_star_total || expected != index.n_star_size())
    fail(check.double_count, "shift-down double count mismatch");

  for (std::size_t j = static_cast<std::size_t>(std::max(params.beta, -1) + 1); j < hist.size(); ++j)
    if (hist[j] && j < 64 && shiftdowns_per_pair(j, params.beta) >= (std::uint64_t{1} << j))
      fail(check.remark_b_pairs, "error pairs with j=" + std::to_string(j) + " reach 2^j shift-downs");
  if (!index.remark_b_per_pair()) fail(check.remark_b_pairs, "construction saw an error pair with >= 2^j shift-downs");

  const Real f2 = Real(f.size()) * Real(f.size());
  check.remark_b_bound = params.gamma * f2 / params.b_dag;
  check.remark_b_global = Real(index.e_star_size()) < check.remark_b_bound;
  check.remark_b_global_asserted = params.mode == ParamsMode::paper;
  if (!check.remark_b_global && check.remark_b_global_asserted)
    fail(check.remark_b_global, "|E*| >= b_dag^-1 gamma |F|^2 in paper mode");
  return check;
}

std::string to_key_value(const ShiftDownTelemetry& t) {
  return "n_pairs=" + std::to_string(t.n_pairs) + "\ne_pairs=" + std::to_string(t.e_pairs) +
         "\nn_star=" + std::to_string(t.n_star) + "\ne_star=" + std::to_string(t.e_star) +
         "\ncores=" + std::to_string(t.cores) + "\nmax_shiftdowns_per_pair=" + std::to_string(t.max_per_pair) +
         "\n";
}

}  // namespace sunflower
