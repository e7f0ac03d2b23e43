#include <doctest.h>

#include <numeric>

#include "sunflower/assemble.hpp"
#include "sunflower/generators.hpp"

using namespace sunflower;

TEST_CASE("verify_certificate") {
  const SetFamily star(5, 2, {{1, 2}, {1, 3}, {1, 4}});
  CHECK(verify_certificate(star, {{1}, {0, 1, 2}}));
  CHECK(verify_certificate(star, {{1}, {0, 1, 2}}, 3));
  CHECK_FALSE(verify_certificate(star, {{1}, {0, 1, 2}}, 4));
  CHECK_FALSE(verify_certificate(star, {{}, {0, 1, 2}}));
  CHECK_FALSE(verify_certificate(star, {{1}, {0, 0, 1}}));
  CHECK_THROWS_AS(verify_certificate(star, {{1}, {0, 1, 7}}), std::out_of_range);

  const SetFamily triangle(4, 2, {{1, 2}, {1, 3}, {2, 3}});
  CHECK_FALSE(verify_certificate(triangle, {{}, {0, 1, 2}}));
}

TEST_CASE("certificate text round trip") {
  const SetFamily star(5, 2, {{0, 4}, {1, 2}, {1, 3}, {1, 4}});
  const SunflowerCertificate cert{{1}, {1, 2, 3}};
  const std::string text = save_certificate(star, cert);
  CHECK(text == "core: 1\n1 2\n1 3\n1 4\n");
  CHECK(load_certificate(text, star) == cert);
  CHECK(load_certificate("core:\n0 4\n1 2\n", star) == SunflowerCertificate{{}, {0, 1}});
  CHECK_THROWS_AS(load_certificate("core: 1\n2 3\n", star), FamilyError);
  CHECK_THROWS_AS(load_certificate("1 2\n", star), FamilyError);
}

TEST_CASE("psi4") {
  const SetFamily star(5, 2, {{1, 2}, {1, 3}, {1, 4}});
  const std::vector<std::size_t> all{0, 1, 2};
  // Every other member meets member 0 exactly in {1}.
  CHECK(psi4(star, 0, all, {1}, Real(Rational(1, 2)), 3));
  CHECK(psi4(star, 0, all, {1}, Real(Rational(1, 2)), 4) == false);
  const std::vector<std::size_t> alone{0};
  CHECK_FALSE(psi4(star, 0, alone, {1}, Real(Rational(1, 10)), 3));
}

TEST_CASE("algorithm S examples") {
  const SetFamily star(5, 2, {{1, 2}, {1, 3}, {1, 4}});
  const auto r = algorithm_s(star, {1}, 3, Real(Rational(1, 2)));
  REQUIRE(r.certificate);
  CHECK(r.certificate->core == ElementSet{1});
  CHECK(r.certificate->petals == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.steps.size() == 3);

  const SetFamily disjoint(9, 3, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
  const auto d = algorithm_s(disjoint, {}, 3, Real(Rational(1, 2)));
  REQUIRE(d.certificate);
  CHECK(d.certificate->core.empty());
  CHECK(verify_certificate(disjoint, *d.certificate, 3));

  const SetFamily triangle(4, 2, {{1, 2}, {1, 3}, {2, 3}});
  const auto t = algorithm_s(triangle, {}, 3, Real(Rational(1, 2)));
  CHECK_FALSE(t.certificate);
  REQUIRE(t.failure);
  CHECK(t.failure->iteration == 0);

  // A core that is itself a member can only host one petal.
  const auto full = algorithm_s(star, {1, 2}, 2, Real(Rational(1, 2)));
  CHECK_FALSE(full.certificate);
}

TEST_CASE("algorithm S on pure cores below the purity bound") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SplitMix64 rng(seed);
    const int k = 3 + static_cast<int>(rng.below(3));
    const int size = k + static_cast<int>(rng.below(6));
    const int core = static_cast<int>(rng.below(3));
    const auto inst = gen_planted(core + 2, k, core, size, Rational(0), seed);
    // threshold < 1 - (k - 1)/|F[C]|
    const Rational thr = Rational(size - k, size) - Rational(1, 100 * size);
    if (thr <= 0) continue;
    const auto r = algorithm_s(inst.family, inst.planted.core, k, Real(thr));
    REQUIRE(r.certificate);
    CHECK(verify_certificate(inst.family, *r.certificate, static_cast<std::size_t>(k)));
  }
}

TEST_CASE("algorithm S certificates on random cores always verify") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto f = gen_random(10, 3, 40, seed);
    for (Element x = 0; x < 10; ++x) {
      if (f.count_containing({x}) == 0) continue;
      const auto r = algorithm_s(f, {x}, 3, Real(Rational(1, 3)));
      if (r.certificate) CHECK(verify_certificate(f, *r.certificate, 3));
    }
  }
}
