#include <doctest.h>

#include "oracles.hpp"
#include "sunflower/generators.hpp"
#include "sunflower/setfam.hpp"

using namespace sunflower;

namespace {

SetFamily fam(std::size_t n, std::size_t m, std::vector<ElementSet> members) {
  return SetFamily(n, m, std::move(members));
}

}  // namespace

TEST_CASE("restrict keeps members containing S") {
  const auto f = fam(6, 2, {{1, 2}, {1, 3}, {4, 5}});
  CHECK(restrict(f, {1}).members() == std::vector<ElementSet>{{1, 2}, {1, 3}});
  CHECK(restrict(fam(6, 2, {{1, 2}, {1, 3}}), {}) == fam(6, 2, {{1, 2}, {1, 3}}));
  CHECK(restrict(f, {1, 2, 3}).empty());
}

TEST_CASE("link removes S and records origins") {
  const auto f = fam(6, 2, {{0, 5}, {1, 2}, {1, 3}, {4, 5}});
  const Link l = link(f, {1});
  CHECK(l.family.cardinality() == 1);
  CHECK(l.family.members() == std::vector<ElementSet>{{2}, {3}});
  CHECK(l.origin == std::vector<std::size_t>{1, 2});
}

TEST_CASE("family text format") {
  const auto f = load_family("n=6 m=2\n1 2\n3 4\n");
  CHECK(f.universe() == 6);
  CHECK(f.size() == 2);

  SUBCASE("duplicate member") {
    try {
      load_family("n=4 m=2\n1 2\n1 2\n");
      FAIL("expected FamilyError");
    } catch (const FamilyError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("comments, blank lines and unsorted ids") {
    const auto g = load_family("# a family\nn=6 m=2\n\n4 3 # trailing\n2 1\n");
    CHECK(g == f);
  }
  CHECK_THROWS_AS(load_family("n=4 m=2\n1 2 3\n"), FamilyError);
  CHECK_THROWS_AS(load_family("n=4 m=2\n1 4\n"), FamilyError);
  CHECK_THROWS_AS(load_family("n=4 m=2\n1 1\n"), FamilyError);
  CHECK_THROWS_AS(load_family("m=2\n1 2\n"), FamilyError);
  CHECK_THROWS_AS(load_family("n=4 m=2\n1 x\n"), FamilyError);
  CHECK_THROWS_AS(load_family("n=5000 m=2\n1 2\n"), FamilyError);
}

TEST_CASE("save/load round trip over random families") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SplitMix64 rng(seed);
    const std::size_t n = 4 + rng.below(12);
    const std::size_t m = 1 + rng.below(3);
    const Integer total = binomial(static_cast<unsigned>(n), static_cast<unsigned>(m));
    const std::size_t size = 1 + rng.below(std::min<std::uint64_t>(30, total.convert_to<std::uint64_t>()));
    const auto f = gen_random(n, m, size, seed);
    CHECK(load_family(save_family(f)) == f);
  }
}

TEST_CASE("intersection histogram") {
  CHECK(intersection_histogram(fam(6, 2, {{0, 1}, {2, 3}, {4, 5}})) == std::vector<std::uint64_t>{6, 0, 3});
  CHECK(intersection_histogram(fam(6, 2, {{1, 2}, {1, 3}})) == std::vector<std::uint64_t>{0, 2, 2});

  const auto f = gen_random(10, 3, 20, 11);
  const auto h = intersection_histogram(f);
  std::uint64_t sum = 0;
  for (auto v : h) sum += v;
  CHECK(sum == 400);
  CHECK(h == oracle::histogram(f));
  CHECK(intersection_histogram(f, 4) == h);
}

TEST_CASE("restriction composes and is monotone") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto f = gen_random(9, 3, 25, seed);
    for (Element a = 0; a < 9; ++a)
      for (Element b = 0; b < 9; ++b) {
        if (a == b) continue;
        const ElementSet s{a};
        const ElementSet t = set_union(s, {b});
        CHECK(restrict(restrict(f, s), {b}) == restrict(f, t));
        CHECK(f.count_containing(t) <= f.count_containing(s));
        std::size_t naive = 0;
        for (const auto& u : f.members()) naive += oracle::contains(u, t);
        CHECK(f.count_containing(t) == naive);
      }
  }
}

TEST_CASE("members, counts and lookups agree") {
  const auto f = gen_random(8, 3, 30, 5);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(f.find(f[i]) == i);
    for (std::size_t j = 0; j < f.size(); ++j) {
      CHECK(f.intersection(i, j) == oracle::meet(f[i], f[j]));
      CHECK(f.intersection_size(i, j) == oracle::meet(f[i], f[j]).size());
    }
  }
  CHECK(fam(6, 2, {{1, 2}}).find({1, 3}) == 1);
  for (Element e = 0; e < 8; ++e) {
    std::size_t count = 0;
    for (const auto& u : f.members()) count += oracle::contains(u, {e});
    CHECK(f.count_containing({e}) == count);
    CHECK(f.members_containing({e}).size() == count);
  }
}

TEST_CASE("set helpers") {
  CHECK(is_subset({1, 3}, {1, 2, 3}));
  CHECK_FALSE(is_subset({1, 4}, {1, 2, 3}));
  CHECK(set_union({1, 3}, {2, 3}) == ElementSet{1, 2, 3});
  CHECK(set_intersection({1, 3}, {2, 3}) == ElementSet{3});
  CHECK(set_difference({1, 2, 3}, {2}) == ElementSet{1, 3});
  CHECK(format_set({1, 2}) == "1 2");
}
