#include <doctest.h>

#include "sunflower/generators.hpp"
#include "sunflower/shiftdown.hpp"

using namespace sunflower;

namespace {

Params with_beta(int k, int m, int beta) {
  ScaledOverrides o;
  o.beta = beta;
  return scaled_params(k, m, o);
}

std::uint64_t n_count(const ShiftDownIndex& index, const ElementSet& c) {
  const auto id = index.find(c);
  return id ? index.core(*id).n_pairs.size() : 0;
}

std::uint64_t e_count(const ShiftDownIndex& index, const ElementSet& c) {
  const auto id = index.find(c);
  return id ? index.core(*id).e_count : 0;
}

}  // namespace

TEST_CASE("pair classes") {
  const SetFamily f(5, 2, {{1, 2}, {1, 3}});
  const auto counts = classify_pairs(f, with_beta(3, 2, 1));
  CHECK(counts.non_errors == 2);
  CHECK(counts.errors == 2);

  std::vector<PairClass> seen;
  for_each_pair_class(f, 1, [&](const PairClass& p) { seen.push_back(p); });
  REQUIRE(seen.size() == 4);
  CHECK(seen[0].kind == PairKind::error);
  CHECK(seen[1].j == 1);
  CHECK(seen[1].kind == PairKind::non_error);

  const auto all = classify_pairs(f, with_beta(3, 2, 2));
  CHECK(all.non_errors == 4);
  CHECK(all.errors == 0);
  CHECK(classify_pairs(gen_random(9, 3, 30, 4), scaled_params(3, 3), 4).non_errors ==
        classify_pairs(gen_random(9, 3, 30, 4), scaled_params(3, 3), 1).non_errors);
}

TEST_CASE("shift-downs of single pairs") {
  const SetFamily f(5, 2, {{1, 2}, {1, 3}});
  const auto index = build_shiftdowns(f, with_beta(3, 2, 1));
  // (0,1) and (1,0) meet in {1}: shift-downs to {} and {1}.
  CHECK(n_count(index, {}) == 2);
  CHECK(n_count(index, {1}) == 2);
  CHECK(index.n_star_size() == 4);
  // Diagonal errors j=2, beta=1: {}, and the two singletons.
  CHECK(e_count(index, {}) == 2);
  CHECK(e_count(index, {1}) == 2);
  CHECK(e_count(index, {2}) == 1);
  CHECK(index.e_star_size() == 6);
  CHECK(index.remark_b_per_pair());

  const SetFamily apart(5, 2, {{0, 1}, {2, 3}});
  const auto disjoint = build_shiftdowns(apart, with_beta(3, 2, 2));
  CHECK(n_count(disjoint, {}) == 4);  // two off-diagonal pairs plus both diagonals
  CHECK(disjoint.telemetry().n_pairs == 4);

  CHECK(shiftdowns_per_pair(1, 1) == 2);
  CHECK(shiftdowns_per_pair(0, 3) == 1);
  CHECK(shiftdowns_per_pair(3, 1) == 4);
  CHECK(shiftdowns_per_pair(3, 1) < 8);
}

TEST_CASE("triple ids map back to their cores") {
  const auto f = gen_random(9, 3, 25, 2);
  const auto index = build_shiftdowns(f, scaled_params(3, 3));
  for (CoreId c = 0; c < index.cores().size(); ++c) {
    const auto& entry = index.core(c);
    for (std::size_t i = 0; i < entry.n_pairs.size(); ++i) {
      CHECK(index.core_of_triple(entry.triple_offset + i) == c);
      const auto p = entry.n_pairs[i];
      CHECK(is_subset(entry.core, f.intersection(index.pair_first(p), index.pair_second(p))));
    }
  }
  CHECK(index.cores().front().core.empty());
  for (std::size_t c = 1; c < index.cores().size(); ++c)
    CHECK(index.cores()[c - 1].core < index.cores()[c].core);
}

TEST_CASE("psi1 edge cases") {
  const SetFamily f(5, 2, {{1, 2}, {1, 3}});
  const auto all_good = build_shiftdowns(f, with_beta(3, 2, 2));
  CHECK(psi1(all_good, *all_good.find({}), with_beta(3, 2, 2)));

  const Params p = with_beta(3, 2, 1);
  const auto index = build_shiftdowns(f, p);
  CHECK_FALSE(psi1(index, *index.find({2}), p));  // N[{2}] empty, E[{2}] not
}

TEST_CASE("step one identities on random families") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SplitMix64 rng(seed);
    const std::size_t m = 2 + rng.below(3);
    const auto f = gen_random(10, m, 10 + rng.below(30), seed);
    const Params p = with_beta(3, static_cast<int>(m), static_cast<int>(rng.below(m + 1)));
    const auto index = build_shiftdowns(f, p);
    const auto check = check_shiftdowns(f, index, p);
    CHECK(check.ok());
    CHECK(check.partition);
    CHECK(check.remark_b_pairs);
    CHECK_MESSAGE(check.first_failure.empty(), check.first_failure);

    const auto threaded = build_shiftdowns(f, p, kDefaultTripleBudget, 4);
    CHECK(threaded.telemetry().n_star == index.telemetry().n_star);
    CHECK(threaded.cores().size() == index.cores().size());
    for (std::size_t c = 0; c < index.cores().size(); ++c) {
      CHECK(threaded.cores()[c].n_pairs == index.cores()[c].n_pairs);
      CHECK(threaded.cores()[c].e_count == index.cores()[c].e_count);
    }
  }
}

TEST_CASE("triple budget") {
  const auto f = gen_random(10, 3, 60, 1);
  CHECK_THROWS_AS(build_shiftdowns(f, scaled_params(3, 3), 100), SizingError);
  CHECK(to_key_value(build_shiftdowns(f, scaled_params(3, 3)).telemetry()).find("n_star=") != std::string::npos);
}
