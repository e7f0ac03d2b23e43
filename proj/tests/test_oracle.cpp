#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "sunflower/generators.hpp"
#include "sunflower/oracle.hpp"
#include "sunflower/params.hpp"

using namespace sunflower;

TEST_CASE("SplitMix64 reference stream") {
  SplitMix64 zero(0);
  CHECK(zero.next() == 0xe220a8397b1dcdafULL);
  CHECK(zero.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(zero.next() == 0x06c45d188009454fULL);
  SplitMix64 answer(42);
  CHECK(answer.next() == 0xbdd732262feb6e95ULL);

  SplitMix64 rng(9);
  for (int i = 0; i < 1000; ++i) CHECK(rng.below(7) < 7);
}

TEST_CASE("random subsets are uniform") {
  // 10 elements, 3 per draw: each element expected 0.3 * draws.
  SplitMix64 rng(123);
  const int draws = 30000;
  std::vector<int> hits(10, 0);
  for (int i = 0; i < draws; ++i) {
    const auto s = random_subset(rng, 10, 3);
    REQUIRE(s.size() == 3);
    for (auto e : s) ++hits[e];
  }
  double chi2 = 0;
  for (int h : hits) chi2 += (h - 9000.0) * (h - 9000.0) / 9000.0;
  CHECK(chi2 < 9 + 5 * std::sqrt(18.0));

  // Every 2-subset of 5 over single-set draws: 10 cells, 1000 draws.
  std::map<ElementSet, int> cells;
  for (int i = 0; i < 1000; ++i) ++cells[random_subset(rng, 5, 2)];
  CHECK(cells.size() == 10);
  for (const auto& [set, count] : cells) CHECK(std::abs(count - 100) < 5 * std::sqrt(90.0));
}

TEST_CASE("gen_random") {
  const auto all = gen_random(6, 2, 15, 1);
  CHECK(all.size() == 15);
  CHECK(gen_random(12, 3, 40, 77) == gen_random(12, 3, 40, 77));
  CHECK_FALSE(gen_random(12, 3, 40, 77) == gen_random(12, 3, 40, 78));
  CHECK_THROWS_AS(gen_random(4, 2, 7, 0), DomainError);
  CHECK_THROWS_AS(gen_random(4, 5, 1, 0), DomainError);
}

TEST_CASE("gen_er_lower_bound") {
  const auto a = gen_er_lower_bound(2, 3);
  CHECK(a.size() == 4);
  CHECK(a.universe() == 4);
  CHECK(gen_er_lower_bound(3, 3).size() == 8);
  CHECK(gen_er_lower_bound(2, 4).size() == 9);
  CHECK(find_sunflower_exact(gen_er_lower_bound(3, 3), 3).status == SearchStatus::none);
  const auto b = gen_er_lower_bound(2, 4);
  CHECK(find_sunflower_exact(b, 4).status == SearchStatus::none);
  CHECK(find_sunflower_exact(b, 3).status == SearchStatus::found);
}

TEST_CASE("gen_planted") {
  const auto small = gen_planted(2, 3, 1, 3, Rational(0), 5);
  CHECK(small.family.size() == 3);
  CHECK(small.planted.core.size() == 1);
  CHECK(verify_certificate(small.family, small.planted, 3));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = gen_planted(4, 3, 1, 8, Rational(1, 2), seed);
    CHECK(inst.family.size() == 12);
    CHECK(verify_certificate(inst.family, inst.planted, 3));
    CHECK(find_sunflower_exact(inst.family, 3).status == SearchStatus::found);
  }
  CHECK(gen_planted(3, 3, 1, 5, Rational(1, 5), 7).family == gen_planted(3, 3, 1, 5, Rational(1, 5), 7).family);
  CHECK_THROWS_AS(gen_planted(3, 3, 1, 5, Rational(0), 7, 8), DomainError);
  CHECK_THROWS_AS(gen_planted(3, 3, 3, 5, Rational(0), 7), DomainError);
  CHECK_THROWS_AS(gen_planted(3, 3, 1, 2, Rational(0), 7), DomainError);
  CHECK_THROWS_AS(gen_planted(3, 3, 1, 5, Rational(1), 7), DomainError);
}

TEST_CASE("exact search") {
  const SetFamily star(5, 2, {{1, 2}, {1, 3}, {1, 4}});
  const auto r = find_sunflower_exact(star, 3);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.certificate->core == ElementSet{1});

  CHECK(find_sunflower_exact(gen_er_lower_bound(2, 3), 3).status == SearchStatus::none);

  SearchBudget tiny;
  tiny.max_nodes = 1;
  CHECK(find_sunflower_exact(gen_er_lower_bound(3, 4), 4, tiny).status == SearchStatus::budget_exhausted);
}

TEST_CASE("exact search matches k-subset enumeration") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    SplitMix64 rng(seed);
    const std::size_t n = 4 + rng.below(5);
    const std::size_t m = 1 + rng.below(3);
    const std::size_t total = binomial(static_cast<unsigned>(n), static_cast<unsigned>(m)).convert_to<std::size_t>();
    const auto f = gen_random(n, m, std::min<std::size_t>(1 + rng.below(12), total), seed);
    const int k = 3 + static_cast<int>(seed % 2);
    const auto r = find_sunflower_exact(f, k);
    CHECK((r.status == SearchStatus::found) == oracle::has_sunflower(f, k));
    if (r.certificate) CHECK(verify_certificate(f, *r.certificate, static_cast<std::size_t>(k)));
  }
}

TEST_CASE("greedy Erdős–Rado recursion") {
  const SetFamily disjoint(6, 2, {{0, 1}, {2, 3}, {4, 5}});
  const auto d = find_sunflower_greedy_er(disjoint, 3);
  REQUIRE(d);
  CHECK(d->core.empty());

  const SetFamily triangle(4, 2, {{1, 2}, {1, 3}, {2, 3}});
  CHECK_FALSE(find_sunflower_greedy_er(triangle, 3));
  CHECK(find_sunflower_exact(triangle, 3).status == SearchStatus::none);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto f = gen_random(9, 3, 49, seed);  // 3! 2^3 = 48
    const auto c = find_sunflower_greedy_er(f, 3);
    REQUIRE(c);
    CHECK(verify_certificate(f, *c, 3));
  }
}
