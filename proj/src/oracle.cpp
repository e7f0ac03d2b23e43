#include "sunflower/oracle.hpp"

#include "sunflower/params.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace sunflower {

SearchBudget default_budget() {
  SearchBudget budget;
  if (const char* env = std::getenv("SUNFLOWER_BUDGET")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) budget.max_nodes = v;
    } catch (const std::exception&) {
    }
  }
  return budget;
}

namespace {

using Words = std::vector<std::uint64_t>;

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1u; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  Bits and_not_upto(const Bits& o, std::size_t pos) const {
    // this & o, keeping only bits strictly above pos
    Bits r;
    r.words_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    for (std::size_t i = 0; i < pos / 64 && i < r.words_.size(); ++i) r.words_[i] = 0;
    if (pos / 64 < r.words_.size()) r.words_[pos / 64] &= ~std::uint64_t{0} << (pos % 64) << 1;
    return r;
  }
  template <class Fn>
  bool for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        if (!fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)))) return false;
        bits &= bits - 1;
      }
    }
    return true;
  }

 private:
  Words words_;
};

struct Packer {
  int k;
  std::uint64_t& nodes;
  const SearchBudget& budget;
  std::chrono::steady_clock::time_point start;
  std::vector<Bits> compatible;  // in sorted candidate order
  std::vector<std::size_t> chosen;
  bool exhausted = false;

  bool out_of_budget() {
    if (nodes >= budget.max_nodes) return true;
    if ((nodes & 1023u) == 0 && std::chrono::steady_clock::now() - start > budget.wall_clock) return true;
    return false;
  }

  bool search(const Bits& candidates) {
    if (static_cast<int>(chosen.size()) == k) return true;
    const std::size_t need = static_cast<std::size_t>(k) - chosen.size();
    bool found = false;
    candidates.for_each([&](std::size_t i) {
      ++nodes;
      if (out_of_budget()) {
        exhausted = true;
        return false;
      }
      Bits next = candidates.and_not_upto(compatible[i], i);
      if (next.count() + 1 < need) return true;
      chosen.push_back(i);
      if (search(next)) {
        found = true;
        return false;
      }
      chosen.pop_back();
      return !exhausted;
    });
    return found;
  }
};

}  // namespace

SearchResult find_sunflower_exact(const SetFamily& f, int k, const SearchBudget& budget) {
  if (k < 2) throw DomainError("k must be at least 2");
  SearchResult result;
  const auto start = std::chrono::steady_clock::now();

  std::set<ElementSet> cores{ElementSet{}};
  for (std::size_t t = 0; t < f.size(); ++t)
    for (std::size_t u = t + 1; u < f.size(); ++u) {
      const ElementSet common = f.intersection(t, u);
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << common.size()); ++mask) {
        ElementSet c;
        for (std::size_t i = 0; i < common.size(); ++i)
          if (mask >> i & 1u) c.push_back(common[i]);
        cores.insert(std::move(c));
        if (cores.size() > budget.max_cores) {
          result.status = SearchStatus::budget_exhausted;
          return result;
        }
      }
    }

  for (const auto& core : cores) {
    ++result.cores_examined;
    const auto members = f.members_containing(core);
    if (members.size() < static_cast<std::size_t>(k)) continue;

    std::vector<ElementSet> parts;
    for (std::size_t i : members) parts.push_back(set_difference(f[i], core));
    std::vector<Bits> part_bits(parts.size(), Bits(f.universe()));
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (Element e : parts[i]) part_bits[i].set(e);

    // Fewest conflicts first, ties by member order.
    std::vector<std::size_t> degree(parts.size(), 0);
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b)
        if (part_bits[a].intersects(part_bits[b])) ++degree[a], ++degree[b];
    std::vector<std::size_t> order(parts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] < degree[b]; });

    Packer packer{k, result.nodes, budget, start, {}, {}, false};
    packer.compatible.assign(order.size(), Bits(order.size()));
    Bits all(order.size());
    for (std::size_t a = 0; a < order.size(); ++a) {
      all.set(a);
      for (std::size_t b = 0; b < order.size(); ++b)
        if (a != b && !part_bits[order[a]].intersects(part_bits[order[b]])) packer.compatible[a].set(b);
    }
    if (packer.search(all)) {
      SunflowerCertificate cert{core, {}};
      for (std::size_t i : packer.chosen) cert.petals.push_back(members[order[i]]);
      std::sort(cert.petals.begin(), cert.petals.end());
      if (!verify_certificate(f, cert, static_cast<std::size_t>(k)))
        throw std::logic_error("exact search produced an invalid certificate");
      result.status = SearchStatus::found;
      result.certificate = std::move(cert);
      return result;
    }
    if (packer.exhausted) {
      result.status = SearchStatus::budget_exhausted;
      return result;
    }
  }
  result.status = SearchStatus::none;
  return result;
}

std::optional<SunflowerCertificate> find_sunflower_greedy_er(const SetFamily& f, int k) {
  if (k < 2) throw DomainError("k must be at least 2");
  SetFamily current = f;
  std::vector<std::size_t> origin(f.size());
  std::iota(origin.begin(), origin.end(), 0);
  ElementSet prefix;

  while (!current.empty()) {
    std::vector<std::size_t> disjoint;
    ElementSet covered;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (!set_intersection(covered, current[i]).empty()) continue;
      disjoint.push_back(i);
      covered = set_union(covered, current[i]);
      if (static_cast<int>(disjoint.size()) == k) break;
    }
    if (static_cast<int>(disjoint.size()) >= k) {
      SunflowerCertificate cert{prefix, {}};
      for (std::size_t i : disjoint) cert.petals.push_back(origin[i]);
      std::sort(cert.petals.begin(), cert.petals.end());
      if (!verify_certificate(f, cert, static_cast<std::size_t>(k)))
        throw std::logic_error("greedy recursion produced an invalid certificate");
      return cert;
    }
    if (covered.empty()) return std::nullopt;

    Element best = covered.front();
    std::size_t best_count = 0;
    for (Element y : covered) {
      const std::size_t c = current.count_containing({y});
      if (c > best_count) {
        best = y;
        best_count = c;
      }
    }
    Link next = link(current, {best});
    for (auto& o : next.origin) o = origin[o];
    origin = std::move(next.origin);
    current = std::move(next.family);
    prefix = set_union(prefix, {best});
  }
  return std::nullopt;
}

}  // namespace sunflower
