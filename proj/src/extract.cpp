#include "sunflower/extract.hpp"

#include <algorithm>
#include <map>

namespace sunflower {

namespace {

std::uint64_t count_alive(const TripleSet& set, const CoreEntry& entry) {
  std::uint64_t count = 0;
  const std::uint64_t end = entry.triple_offset + entry.n_pairs.size();
  for (std::uint64_t t = entry.triple_offset; t < end; ++t) count += set.test(t);
  return count;
}

// |N'| >= b_dag^-1 |N*|
bool above_guard(std::uint64_t n_prime, std::uint64_t n_star, const Params& params) {
  return Real(n_prime) * params.b_dag >= Real(n_star);
}

}  // namespace

DenseCoreLadder build_ladder(const SetFamily& f, const ShiftDownIndex& index, const Params& params) {
  DenseCoreLadder ladder;
  const auto& cores = index.cores();
  ladder.family_count.resize(cores.size());
  ladder.dense.assign(cores.size(), 0);
  ladder.levels.assign(static_cast<std::size_t>(index.beta()) + 1, {});
  std::vector<Integer> cutoff(static_cast<std::size_t>(index.beta()) + 1);
  for (int s = 0; s <= index.beta(); ++s)
    cutoff[s] = ceil(pow(params.b_star, -s) * Real(f.size()));
  for (CoreId id = 0; id < cores.size(); ++id) {
    const auto& core = cores[id].core;
    ladder.family_count[id] = f.count_containing(core);
    if (static_cast<int>(core.size()) > index.beta()) continue;
    if (Integer(ladder.family_count[id]) >= cutoff[core.size()]) {
      ladder.dense[id] = 1;
      ladder.levels[core.size()].push_back(id);
    }
  }
  return ladder;
}

bool psi3(const ElementSet& d, const SetFamily& f, const Params& params) {
  if (d.empty()) throw DomainError("psi3 requires a nonempty set");
  return Real(f.count_containing(d)) >= pow(params.b_star, -static_cast<long>(d.size())) * Real(f.size());
}

std::vector<std::uint64_t> star_slice_sizes(const ShiftDownIndex& index, const DenseCoreLadder& ladder,
                                            const TripleSet& n_prime) {
  const std::size_t levels = static_cast<std::size_t>(index.beta()) + 1;
  std::vector<std::uint64_t> by_size(levels, 0);
  for (CoreId id = 0; id < index.cores().size(); ++id)
    if (ladder.dense[id]) by_size[index.core(id).core.size()] += count_alive(n_prime, index.core(id));
  for (std::size_t r = levels - 1; r-- > 0;) by_size[r] += by_size[r + 1];
  return by_size;
}

std::optional<int> rank_of(const ShiftDownIndex& index, const DenseCoreLadder& ladder,
                           const TripleSet& n_prime, const Params& params) {
  const std::uint64_t size = n_prime.count();
  if (!above_guard(size, index.n_star_size(), params))
    throw std::invalid_argument("rank_of requires |N'| >= b_dag^-1 |N*|");
  const auto slices = star_slice_sizes(index, ladder, n_prime);
  for (int r = index.beta(); r >= 0; --r)
    if (Real(slices[r]) * pow(params.b_star, 2 * r) >= Real(size)) return r;
  return std::nullopt;
}

const Bucket* ExtractionResult::bucket(CoreId core) const {
  auto it = std::lower_bound(buckets.begin(), buckets.end(), core,
                             [](const Bucket& b, CoreId c) { return b.core < c; });
  return it != buckets.end() && it->core == core ? &*it : nullptr;
}

std::vector<PairId> ExtractionResult::bucket_pairs(const ShiftDownIndex& index, CoreId core) const {
  std::vector<PairId> pairs;
  if (const Bucket* b = bucket(core)) {
    const auto& entry = index.core(core);
    for (std::uint64_t t : b->triples) pairs.push_back(entry.n_pairs[t - entry.triple_offset]);
  }
  return pairs;
}

ExtractionResult algorithm_r(const ShiftDownIndex& index, const DenseCoreLadder& ladder, const Params& params) {
  ExtractionResult result;
  result.n_star = index.n_star_size();
  TripleSet n_prime(result.n_star);
  n_prime.set();
  std::map<CoreId, Bucket> buckets;
  const std::size_t levels = static_cast<std::size_t>(index.beta()) + 1;

  while (n_prime.any() && above_guard(n_prime.count(), result.n_star, params)) {
    const auto rank = rank_of(index, ladder, n_prime, params);
    if (!rank) {
      result.failure = RankFailure{result.rounds.size(), n_prime.count(),
                                   star_slice_sizes(index, ladder, n_prime)};
      break;
    }
    ExtractionRound round;
    round.rank = *rank;
    round.n_prime_size = n_prime.count();
    round.extracted_by_size.assign(levels, 0);
    round.triples.resize(result.n_star);
    for (CoreId id = 0; id < index.cores().size(); ++id) {
      if (!ladder.in_star(index, id, *rank)) continue;
      const auto& entry = index.core(id);
      std::vector<std::uint64_t> taken;
      const std::uint64_t end = entry.triple_offset + entry.n_pairs.size();
      for (std::uint64_t t = entry.triple_offset; t < end; ++t)
        if (n_prime.test(t)) taken.push_back(t);
      if (taken.empty()) continue;
      for (std::uint64_t t : taken) {
        round.triples.set(t);
        n_prime.reset(t);
      }
      round.extracted += taken.size();
      round.extracted_by_size[entry.core.size()] += taken.size();
      if (static_cast<int>(entry.core.size()) == *rank) {
        if (buckets.count(id)) throw std::logic_error("core bucketed twice");
        buckets.emplace(id, Bucket{id, result.rounds.size(), std::move(taken)});
        round.bucket_cores.push_back(id);
      } else {
        round.spill += taken.size();
      }
    }
    result.rounds.push_back(std::move(round));
  }

  for (auto& [id, bucket] : buckets) result.buckets.push_back(std::move(bucket));
  result.leftover = n_prime;
  result.extracted = ~n_prime;
  return result;
}

RemarkEReport check_remark_e(const ExtractionResult& result, const ShiftDownIndex& index,
                             const DenseCoreLadder& ladder, const Params& params) {
  RemarkEReport report;
  auto fail = [&](bool& flag, const std::string& why) {
    flag = false;
    if (report.first_failure.empty()) report.first_failure = why;
  };
  const std::uint64_t n_star = result.n_star;
  TripleSet rounds_union(n_star), buckets_union(n_star), spill_union(n_star);

  std::vector<char> rank_seen(static_cast<std::size_t>(index.beta()) + 1, 0);
  for (std::size_t i = 0; i < result.rounds.size(); ++i) {
    const auto& round = result.rounds[i];
    if (rounds_union.intersects(round.triples)) fail(report.rounds_disjoint, "rounds overlap");
    rounds_union |= round.triples;
    if (rank_seen[round.rank]) fail(report.ranks_unique, "rank " + std::to_string(round.rank) + " repeated");
    rank_seen[round.rank] = 1;
    for (std::size_t t = round.triples.find_first(); t != TripleSet::npos; t = round.triples.find_next(t)) {
      const CoreId core = index.core_of_triple(t);
      if (static_cast<int>(index.core(core).core.size()) > round.rank) spill_union.set(t);
    }
    for (int j = round.rank + 1; j <= index.beta(); ++j) {
      std::uint64_t slice = 0;
      for (int s = j; s <= index.beta(); ++s) slice += round.extracted_by_size[s];
      RemarkERow row{i, j, slice, Real(slice) * pow(params.b_star, 2 * (j - round.rank)) < Real(round.extracted)};
      if (!row.holds) fail(report.e_iii, "E-iii fails at round " + std::to_string(i) + ", j=" + std::to_string(j));
      report.e_iii_rows.push_back(row);
    }
    const Real lower = pow(params.b_star, -2 * index.beta()) * Real(n_star) / params.b_dag;
    if (Real(round.extracted) < lower) report.e_i_lower = false;
  }
  report.e_i_asserted = params.mode == ParamsMode::paper;
  if (!report.e_i_lower && report.e_i_asserted) fail(report.e_i_lower, "E-i lower bound fails in paper mode");

  if (result.rounds.size() > static_cast<std::size_t>(index.beta()) + 1)
    fail(report.round_count_ok, "more than beta + 1 rounds");
  if (!result.failure && Real(result.leftover.count()) * params.b_dag >= Real(n_star) && result.leftover.any())
    fail(report.leftover_ok, "leftover not below b_dag^-1 |N*|");

  std::uint64_t bucket_total = 0;
  CoreId previous = 0;
  for (std::size_t i = 0; i < result.buckets.size(); ++i) {
    const auto& b = result.buckets[i];
    if (i && b.core == previous) fail(report.one_bucket_per_core, "core bucketed twice");
    previous = b.core;
    for (std::uint64_t t : b.triples) {
      if (buckets_union.test(t)) fail(report.buckets_disjoint, "buckets overlap");
      buckets_union.set(t);
      if (index.core_of_triple(t) != b.core) fail(report.buckets_disjoint, "triple filed under the wrong core");
    }
    bucket_total += b.triples.size();
  }

  report.spill_total = spill_union.count();
  if (rounds_union != result.extracted) fail(report.union_accounting, "rounds do not cover N̂*");
  if ((result.extracted & ~result.leftover) != result.extracted || result.extracted.intersects(result.leftover))
    fail(report.union_accounting, "N̂* and leftover overlap");
  if (buckets_union.intersects(spill_union) || (buckets_union | spill_union) != result.extracted)
    fail(report.union_accounting, "N̂* is not the disjoint union of buckets and spill");
  report.union_literal = buckets_union == result.extracted;

  report.f_ii_sum = Real(bucket_total) > (Real(1) - Real(1) / params.b_dag) * Real(n_star);
  (void)ladder;
  return report;
}

std::uint64_t dense_extension_weight(const SetFamily& f, const ShiftDownIndex& index,
                                     const DenseCoreLadder& ladder, const ExtractionResult& result,
                                     CoreId core) {
  const auto& c = index.core(core).core;
  if (static_cast<int>(c.size()) + 1 > index.beta()) return 0;
  std::map<Element, bool> dense_extension;
  auto is_dense = [&](Element x) {
    auto it = dense_extension.find(x);
    if (it != dense_extension.end()) return it->second;
    ElementSet d = c;
    d.insert(std::upper_bound(d.begin(), d.end(), x), x);
    auto id = index.find(d);
    bool dense = id && ladder.dense[*id];
    dense_extension.emplace(x, dense);
    return dense;
  };
  std::uint64_t weight = 0;
  for (PairId p : result.bucket_pairs(index, core)) {
    const ElementSet span = set_difference(set_union(f[index.pair_first(p)], f[index.pair_second(p)]), c);
    for (Element x : span) weight += is_dense(x);
  }
  return weight;
}

bool psi2(const SetFamily& f, const ShiftDownIndex& index, const DenseCoreLadder& ladder,
          const ExtractionResult& result, CoreId core, const Params& params) {
  const Bucket* b = result.bucket(core);
  if (!b || b->triples.empty()) throw DomainError("psi2 requires a nonempty bucket");
  const std::uint64_t weight = dense_extension_weight(f, index, ladder, result, core);
  return Real(weight) * params.b_star < Real(params.m) * Real(b->triples.size());
}

SmallnessReport lemma_smallness_report(const SetFamily& f, const ShiftDownIndex& index,
                                       const DenseCoreLadder& ladder, const ExtractionResult& result,
                                       const Params& params) {
  SmallnessReport report;
  for (const auto& b : result.buckets)
    if (!b.triples.empty() && !psi2(f, index, ladder, result, b.core, params)) report.lhs += b.triples.size();
  report.rhs = Real(params.m) / params.b_star * Real(result.extracted.count());
  report.holds = Real(report.lhs) < report.rhs;
  report.asserted = params.mode == ParamsMode::paper;
  return report;
}

namespace {

CoreRemarks core_remarks(const SetFamily& f, const ShiftDownIndex& index, const DenseCoreLadder& ladder,
                         const ExtractionResult& result, CoreId core, const Params& params) {
  CoreRemarks r;
  const auto& entry = index.core(core);
  const auto& c = entry.core;
  const std::uint64_t fc = ladder.family_count[core];
  const std::uint64_t n_c = result.bucket(core) ? result.bucket(core)->triples.size() : 0;
  r.off_core = fc * fc - n_c;
  r.identity = r.off_core == entry.e_count + (entry.n_pairs.size() - n_c);
  const Real fc2 = Real(fc) * Real(fc);
  r.off_core_bound = Real(3) / params.b_dag * fc2;
  r.sparse_bound = Real(2 * (params.m - static_cast<int>(c.size()))) / params.b_star * fc2;
  r.extended_bound = Real(4 * params.m) / params.b_star * Real(n_c);

  for (PairId p : result.bucket_pairs(index, core)) {
    const ElementSet common = f.intersection(index.pair_first(p), index.pair_second(p));
    if (common.size() > c.size()) ++r.extended;
    const ElementSet extra = set_difference(common, c);
    // Any sparse D with C ⊊ D ⊆ T ∩ U puts the pair in M.
    bool in_m = false;
    for (std::uint32_t mask = 1; mask < (1u << extra.size()) && !in_m; ++mask) {
      ElementSet d = c;
      for (std::size_t i = 0; i < extra.size(); ++i)
        if (mask >> i & 1u) d.push_back(extra[i]);
      std::sort(d.begin(), d.end());
      auto id = index.find(d);
      if (!id || !ladder.dense[*id]) in_m = !psi3(d, f, params);
    }
    r.sparse_extensions += in_m;
    if (static_cast<int>(c.size()) + 1 <= index.beta()) {
      for (Element x : extra) {
        ElementSet d = c;
        d.insert(std::upper_bound(d.begin(), d.end(), x), x);
        auto id = index.find(d);
        r.dense_extensions += id && ladder.dense[*id];
      }
    }
  }
  return r;
}

}  // namespace

CoreSelection select_core(const SetFamily& f, const ShiftDownIndex& index, const DenseCoreLadder& ladder,
                          const ExtractionResult& result, const Params& params) {
  CoreSelection selection;
  std::size_t fail_psi1 = 0, fail_psi2 = 0, fail_residual = 0, fail_bucket = 0;
  for (CoreId id = 0; id < index.cores().size(); ++id) {
    const auto& entry = index.core(id);
    if (entry.n_pairs.empty() && entry.e_count == 0) continue;
    CoreConjuncts row;
    row.core = id;
    row.family_count = ladder.family_count[id];
    row.n = entry.n_pairs.size();
    row.e = entry.e_count;
    const Bucket* b = result.bucket(id);
    row.bucket = b ? b->triples.size() : 0;
    row.psi1 = psi1(index, id, params);
    if (row.bucket) row.psi2 = psi2(f, index, ladder, result, id, params);
    row.residual = Real(row.n - row.bucket) * params.b_dag < Real(2) * Real(row.n);
    row.qualifies = row.bucket && row.psi1 && row.psi2.value_or(false) && row.residual;
    fail_psi1 += !row.psi1;
    fail_psi2 += row.psi2 && !*row.psi2;
    fail_residual += !row.residual;
    fail_bucket += !row.bucket;
    if (row.qualifies &&
        (!selection.core || row.bucket > selection.table[*selection.core].bucket))
      selection.core = static_cast<CoreId>(selection.table.size());
    selection.table.push_back(row);
  }
  if (selection.core) {
    // selection.core held a table position while scanning.
    selection.core = selection.table[*selection.core].core;
    selection.remarks = core_remarks(f, index, ladder, result, *selection.core, params);
  } else {
    const std::pair<std::size_t, const char*> tally[] = {
        {fail_psi1, "psi1"}, {fail_psi2, "psi2"}, {fail_residual, "residual"}, {fail_bucket, "bucket"}};
    const auto* worst = &tally[0];
    for (const auto& t : tally)
      if (t.first > worst->first) worst = &t;
    selection.most_failed = worst->second;
  }
  return selection;
}

std::string to_csv(const CoreSelection& selection, const ShiftDownIndex& index) {
  std::string out = "core,family_count,n,e,bucket,psi1,psi2,residual,qualifies\n";
  auto flag = [](bool b) { return b ? "1" : "0"; };
  for (const auto& row : selection.table) {
    out += "{" + format_set(index.core(row.core).core) + "}," + std::to_string(row.family_count) + "," +
           std::to_string(row.n) + "," + std::to_string(row.e) + "," + std::to_string(row.bucket) + "," +
           flag(row.psi1) + "," + (row.psi2 ? flag(*row.psi2) : "na") + "," + flag(row.residual) + "," +
           flag(row.qualifies) + "\n";
  }
  return out;
}

std::string to_report(const ExtractionResult& result) {
  std::string out = "round,rank,n_prime,extracted,spill,buckets\n";
  for (std::size_t i = 0; i < result.rounds.size(); ++i) {
    const auto& r = result.rounds[i];
    out += std::to_string(i) + "," + std::to_string(r.rank) + "," + std::to_string(r.n_prime_size) + "," +
           std::to_string(r.extracted) + "," + std::to_string(r.spill) + "," +
           std::to_string(r.bucket_cores.size()) + "\n";
  }
  return out;
}

}  // namespace sunflower
