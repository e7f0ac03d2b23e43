#pragma once

#include <cstdint>

#include "sunflower/assemble.hpp"
#include "sunflower/real.hpp"
#include "sunflower/setfam.hpp"

namespace sunflower {

/// SplitMix64 (Steele, Lea, Flood 2014). Bounded draws use rejection so the
/// stream of values is identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t reject_under = (0 - bound) % bound;
    while (true) {
      const std::uint64_t r = next();
      if (r >= reject_under) return r % bound;
    }
  }

  /// Independent child stream.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

/// Uniform random m-subset of {0, ..., n-1} (Floyd's algorithm), sorted.
ElementSet random_subset(SplitMix64& rng, std::size_t n, std::size_t m);

/// `size` distinct uniform m-sets over n elements. Throws DomainError when
/// C(n, m) < size.
SetFamily gen_random(std::size_t n, std::size_t m, std::size_t size, std::uint64_t seed);

/// All (k-1)^m transversals of m disjoint blocks of k-1 elements; contains
/// no k-sunflower.
SetFamily gen_er_lower_bound(int m, int k);

struct PlantedInstance {
  SetFamily family;
  SunflowerCertificate planted;
};

/// `extra` petals over a common core of `core_size` elements with pairwise
/// disjoint complements, plus floor(noise * extra) random m-sets. Element
/// labels are shuffled by the seed. The universe is the minimum that hosts
/// the petals unless `universe` is larger; a smaller nonzero `universe`
/// throws DomainError. The planted certificate names the first k petals in
/// family order.
PlantedInstance gen_planted(int m, int k, int core_size, int extra, const Rational& noise, std::uint64_t seed,
                            std::size_t universe = 0);

}  // namespace sunflower
