#include "sunflower/gamma.hpp"

#include <unordered_map>

#include <boost/functional/hash.hpp>

namespace sunflower {

namespace {

struct SetHash {
  std::size_t operator()(const ElementSet& s) const { return boost::hash_range(s.begin(), s.end()); }
};

}  // namespace

std::optional<GammaWitness> gamma_check(const SetFamily& f, const Real& b) {
  if (f.empty()) throw DomainError("Gamma check on an empty family");
  const std::size_t m = f.cardinality();
  if (m >= 31) throw DomainError("Gamma check enumerates 2^m subsets per member; m too large");

  std::unordered_map<ElementSet, std::uint64_t, SetHash> counts;
  ElementSet subset;
  for (const auto& u : f.members()) {
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      subset.clear();
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1u) subset.push_back(u[i]);
      ++counts[subset];
    }
  }

  // A count violates at size s iff count >= ceil(b^-s |F|).
  std::vector<Real> threshold(m + 1);
  std::vector<Integer> cutoff(m + 1);
  for (std::size_t s = 1; s <= m; ++s) {
    threshold[s] = pow(b, -static_cast<long>(s)) * Real(f.size());
    cutoff[s] = ceil(threshold[s]);
  }

  // Within one size the violation ratio orders by count alone.
  std::vector<const ElementSet*> best(m + 1, nullptr);
  std::vector<std::uint64_t> best_count(m + 1, 0);
  for (const auto& [s, count] : counts) {
    const std::size_t size = s.size();
    if (Integer(count) < cutoff[size]) continue;
    if (!best[size] || count > best_count[size] || (count == best_count[size] && s < *best[size])) {
      best[size] = &s;
      best_count[size] = count;
    }
  }

  std::optional<std::size_t> pick;
  Real pick_ratio;
  for (std::size_t size = 1; size <= m; ++size) {
    if (!best[size]) continue;
    Real ratio = Real(best_count[size]) * pow(b, static_cast<long>(size));
    if (!pick || ratio > pick_ratio) {
      pick = size;
      pick_ratio = ratio;
    }
  }
  if (!pick) return std::nullopt;
  return GammaWitness{*best[*pick], best_count[*pick], threshold[*pick]};
}

GammaReduction gamma_reduce(const SetFamily& f, const Real& b) {
  if (f.empty()) throw DomainError("Gamma reduction on an empty family");
  GammaReduction out{{}, f, {}, 0};
  out.origin.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.origin[i] = i;
  while (true) {
    if (out.family.cardinality() == 0)
      throw ReductionExhausted("Gamma reduction consumed every element (prefix {" +
                                   format_set(out.prefix) + "}, " + std::to_string(out.steps) +
                                   " steps, final size " + std::to_string(out.family.size()) + ")",
                               out.prefix, out.steps, out.family.size());
    auto witness = gamma_check(out.family, b);
    if (!witness) break;
    Link next = link(out.family, witness->set);
    std::vector<std::size_t> origin(next.origin.size());
    for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = out.origin[next.origin[i]];
    out.prefix = set_union(out.prefix, witness->set);
    out.family = std::move(next.family);
    out.origin = std::move(origin);
    ++out.steps;
  }
  if (Real(out.family.size()) < pow(b, -static_cast<long>(out.prefix.size())) * Real(f.size()))
    throw std::logic_error("Gamma reduction lost more members than the witness bound allows");
  return out;
}

std::vector<PairBoundRow> pair_bound_report(const SetFamily& f, const Real& b, unsigned jobs) {
  if (auto w = gamma_check(f, b))
    throw DomainError("family violates Gamma(b) at S={" + format_set(w->set) + "}");
  const std::size_t m = f.cardinality();
  const auto hist = intersection_histogram(f, jobs);
  const Real f2 = Real(f.size()) * Real(f.size());
  std::vector<PairBoundRow> rows;
  for (std::size_t j = 0; j <= m; ++j) {
    PairBoundRow row;
    row.j = j;
    row.observed = hist[j];
    row.bound_mid = Real(binomial(static_cast<unsigned>(m), static_cast<unsigned>(j))) *
                    pow(b, -static_cast<long>(j)) * f2;
    row.informational = j == 0;
    if (j > 0) {
      const Real base = b * Real(j) / Real(3 * m);
      if (base > Real(1)) row.bound_outer = pow(base, -static_cast<long>(j)) * f2;
      row.pass = Real(row.observed) < row.bound_mid &&
                 (!row.bound_outer || Real(row.observed) < *row.bound_outer);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_csv(const std::vector<PairBoundRow>& rows) {
  std::string out = "j,observed,bound_mid,bound_outer,verdict\n";
  for (const auto& r : rows) {
    out += std::to_string(r.j) + "," + std::to_string(r.observed) + "," + to_decimal(r.bound_mid, 10) +
           "," + (r.bound_outer ? to_decimal(*r.bound_outer, 10) : std::string("n/a")) + "," +
           (r.informational ? "info" : (r.pass ? "pass" : "fail")) + "\n";
  }
  return out;
}

BinomialEstimate binom_estimate(unsigned x, unsigned y) {
  if (y < 1 || y > x) throw DomainError("binomial estimate requires 1 <= y <= x");
  BinomialEstimate e;
  const Rational ratio(x, y);
  e.lower = Real(pow(Real(ratio), static_cast<long>(y))).exact();
  e.exact = binomial(x, y);
  e.upper = pow(exp(Real(1)) * Real(ratio), static_cast<long>(y));
  e.holds = Rational(e.exact) >= e.lower && Real(e.exact) < e.upper;
  return e;
}

}  // namespace sunflower
