#include "sunflower/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sunflower/params.hpp"

namespace sunflower {

ElementSet random_subset(SplitMix64& rng, std::size_t n, std::size_t m) {
  std::set<Element> chosen;
  for (std::size_t j = n - m; j < n; ++j) {
    const auto t = static_cast<Element>(rng.below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(static_cast<Element>(j));
  }
  return ElementSet(chosen.begin(), chosen.end());
}

SetFamily gen_random(std::size_t n, std::size_t m, std::size_t size, std::uint64_t seed) {
  if (m < 1 || m > n) throw DomainError("gen_random requires 1 <= m <= n");
  const Integer total = binomial(static_cast<unsigned>(n), static_cast<unsigned>(m));
  if (total < size) throw DomainError("C(n, m) is smaller than the requested size");
  SplitMix64 rng(seed);
  std::vector<ElementSet> members;

  if (total <= (1u << 20) && Integer(2 * size) > total) {
    // Dense request: shuffle-select from the full list of m-sets.
    std::vector<ElementSet> all;
    ElementSet current(m);
    std::iota(current.begin(), current.end(), 0);
    while (true) {
      all.push_back(current);
      std::size_t i = m;
      while (i > 0 && current[i - 1] == n - m + i - 1) --i;
      if (i == 0) break;
      ++current[i - 1];
      for (std::size_t j = i; j < m; ++j) current[j] = current[j - 1] + 1;
    }
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(all.size() - i));
      std::swap(all[i], all[j]);
    }
    all.resize(size);
    members = std::move(all);
  } else {
    std::set<ElementSet> seen;
    while (seen.size() < size) seen.insert(random_subset(rng, n, m));
    members.assign(seen.begin(), seen.end());
  }
  return SetFamily(n, m, std::move(members));
}

SetFamily gen_er_lower_bound(int m, int k) {
  if (m < 1 || k < 2) throw DomainError("gen_er_lower_bound requires m >= 1 and k >= 2");
  const std::size_t block = static_cast<std::size_t>(k - 1);
  const std::size_t n = static_cast<std::size_t>(m) * block;
  std::vector<ElementSet> members;
  std::vector<std::size_t> digit(static_cast<std::size_t>(m), 0);
  while (true) {
    ElementSet u(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<Element>(i * block + digit[i]);
    members.push_back(std::move(u));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == block) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return SetFamily(n, static_cast<std::size_t>(m), std::move(members));
}

PlantedInstance gen_planted(int m, int k, int core_size, int extra, const Rational& noise, std::uint64_t seed,
                            std::size_t universe) {
  if (m < 1 || k < 2) throw DomainError("gen_planted requires m >= 1 and k >= 2");
  if (core_size < 0 || core_size >= m) throw DomainError("core size must lie in [0, m)");
  if (extra < k) throw DomainError("need at least k petals");
  if (noise < 0 || noise >= 1) throw DomainError("noise must lie in [0, 1)");
  const std::size_t petal_part = static_cast<std::size_t>(m - core_size);
  const std::size_t needed = static_cast<std::size_t>(core_size) + static_cast<std::size_t>(extra) * petal_part;
  if (universe != 0 && universe < needed)
    throw DomainError("universe of " + std::to_string(universe) + " cannot host " + std::to_string(extra) +
                      " disjoint petal complements (needs " + std::to_string(needed) + ")");
  const std::size_t n = std::max(universe, needed);
  if (n > kDefaultMaxUniverse) throw DomainError("planted instance needs a universe beyond the cap");

  SplitMix64 rng(seed);
  std::vector<Element> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[rng.below(i)]);

  ElementSet core(label.begin(), label.begin() + core_size);
  std::sort(core.begin(), core.end());
  std::set<ElementSet> members;
  std::vector<ElementSet> petals;
  for (int p = 0; p < extra; ++p) {
    ElementSet u = core;
    const std::size_t begin = static_cast<std::size_t>(core_size) + static_cast<std::size_t>(p) * petal_part;
    u.insert(u.end(), label.begin() + static_cast<std::ptrdiff_t>(begin),
             label.begin() + static_cast<std::ptrdiff_t>(begin + petal_part));
    std::sort(u.begin(), u.end());
    members.insert(u);
    petals.push_back(std::move(u));
  }

  const Integer noise_count = floor(noise * Rational(extra));
  const std::size_t wanted = members.size() + noise_count.convert_to<std::size_t>();
  if (binomial(static_cast<unsigned>(n), static_cast<unsigned>(m)) < wanted)
    throw DomainError("universe too small for the requested noise");
  SplitMix64 noise_rng = rng.split();
  while (members.size() < wanted) members.insert(random_subset(noise_rng, n, static_cast<std::size_t>(m)));

  SetFamily family(n, static_cast<std::size_t>(m), std::vector<ElementSet>(members.begin(), members.end()));
  std::vector<std::size_t> petal_index;
  for (const auto& u : petals) petal_index.push_back(family.find(u));
  std::sort(petal_index.begin(), petal_index.end());
  petal_index.resize(static_cast<std::size_t>(k));
  return {std::move(family), SunflowerCertificate{std::move(core), std::move(petal_index)}};
}

}  // namespace sunflower
