// Brute-force reference implementations used to cross-check the library.
// They share no code with it beyond the SetFamily container.
#pragma once

#include <cstdint>
#include <vector>

#include "sunflower/real.hpp"
#include "sunflower/setfam.hpp"

namespace oracle {

using sunflower::ElementSet;
using sunflower::Rational;
using sunflower::SetFamily;

inline bool contains(const ElementSet& big, const ElementSet& small) {
  std::size_t i = 0;
  for (auto e : big)
    if (i < small.size() && small[i] == e) ++i;
  return i == small.size();
}

inline ElementSet meet(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  for (auto x : a)
    for (auto y : b)
      if (x == y) out.push_back(x);
  return out;
}

/// Gamma(b) over every nonempty S of the ground set: |F[S]| * b^|S| < |F|.
inline bool gamma_holds(const SetFamily& f, const Rational& b) {
  const std::size_t n = f.universe();
  const Rational total(static_cast<long>(f.size()));
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    ElementSet s;
    for (std::size_t e = 0; e < n; ++e)
      if (mask >> e & 1u) s.push_back(static_cast<sunflower::Element>(e));
    long count = 0;
    for (const auto& u : f.members())
      if (contains(u, s)) ++count;
    if (count == 0) continue;
    Rational lhs(count);
    for (std::size_t i = 0; i < s.size(); ++i) lhs *= b;
    if (lhs >= total) return false;
  }
  return true;
}

inline bool is_sunflower(const SetFamily& f, const std::vector<std::size_t>& idx) {
  if (idx.size() < 2) return true;
  const ElementSet core = meet(f[idx[0]], f[idx[1]]);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (meet(f[idx[a]], f[idx[b]]) != core) return false;
  return true;
}

/// Any k-subset of members forming a sunflower.
inline bool has_sunflower(const SetFamily& f, int k) {
  const std::size_t n = f.size();
  if (static_cast<std::size_t>(k) > n) return false;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  while (true) {
    if (is_sunflower(f, idx)) return true;
    std::size_t i = idx.size();
    while (i > 0 && idx[i - 1] == n - idx.size() + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Pascal's triangle up to row n.
inline std::vector<std::vector<sunflower::Integer>> pascal(unsigned n) {
  std::vector<std::vector<sunflower::Integer>> rows(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    rows[i].assign(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
  }
  return rows;
}

/// Ordered pairs of F^2 by intersection size, by direct pairwise meets.
inline std::vector<std::uint64_t> histogram(const SetFamily& f) {
  std::vector<std::uint64_t> h(f.cardinality() + 1, 0);
  for (const auto& t : f.members())
    for (const auto& u : f.members()) ++h[meet(t, u).size()];
  return h;
}

}  // namespace oracle
