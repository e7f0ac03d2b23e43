#include <doctest.h>

#include "sunflower/generators.hpp"
#include "sunflower/oracle.hpp"
#include "sunflower/pipeline.hpp"

using namespace sunflower;

TEST_CASE("planted family with noise") {
  const auto inst = gen_planted(4, 3, 1, 8, Rational(1, 5), 7);
  const auto out = find_sunflower_paper(inst.family, 3, scaled_params(3, 4));
  REQUIRE(out.certificate);
  CHECK(verify_certificate(inst.family, *out.certificate, 3));
  CHECK(out.method != Method::none);
  if (out.method == Method::greedy_fallback) {
    REQUIRE(out.failure);
    CHECK_FALSE(out.failure->to_report().empty());
  }
}

TEST_CASE("clean disjoint planted family runs every stage") {
  const auto inst = gen_planted(2, 3, 0, 90, Rational(0), 1);
  const auto out = find_sunflower_paper(inst.family, 3, scaled_params(3, 2));
  REQUIRE(out.certificate);
  CHECK(out.method == Method::pipeline);
  CHECK_FALSE(out.failure);
  CHECK(out.telemetry.reduction_steps == 0);
  REQUIRE(out.telemetry.shiftdowns);
  CHECK(out.telemetry.shiftdowns->n_star > 0);
  CHECK(out.telemetry.rounds >= 1);
  CHECK(out.telemetry.petal_steps == 3);
  CHECK(verify_certificate(inst.family, *out.certificate, 3));
}

TEST_CASE("reduced family lifts back through the prefix") {
  // 90 petals over a 2-element core: the reduction links over the core.
  const auto inst = gen_planted(4, 3, 2, 150, Rational(0), 2);
  const auto out = find_sunflower_paper(inst.family, 3, scaled_params(3, 4));
  REQUIRE(out.certificate);
  CHECK(out.telemetry.reduction_prefix == inst.planted.core);
  CHECK(verify_certificate(inst.family, *out.certificate, 3));
}

TEST_CASE("lower-bound families yield no certificate") {
  for (auto [m, k] : {std::pair{2, 3}, {3, 3}, {2, 4}}) {
    const auto f = gen_er_lower_bound(m, k);
    const auto out = find_sunflower_paper(f, k, scaled_params(k, m));
    CHECK_FALSE(out.certificate);
    CHECK(out.method == Method::none);
    CHECK(find_sunflower_exact(f, k).status == SearchStatus::none);
  }
}

TEST_CASE("paper constants at desk scale defer to the classic lemma") {
  std::vector<ElementSet> members;
  for (Element i = 0; i < 3; ++i) {
    ElementSet u;
    for (Element j = 0; j < 16; ++j) u.push_back(i * 16 + j);
    members.push_back(u);
  }
  const SetFamily f(48, 16, members);
  const auto out = find_sunflower_paper(f, 3, derive_params(Rational(1, 2), 3, 16));
  REQUIRE_FALSE(out.notices.empty());
  CHECK(out.notices.front().find("m <= b/k") != std::string::npos);
  CHECK(out.method == Method::greedy_fallback);
  REQUIRE(out.certificate);
  CHECK(verify_certificate(f, *out.certificate, 3));
}

TEST_CASE("stage failures are values") {
  const SetFamily triangle(4, 2, {{1, 2}, {1, 3}, {2, 3}});
  PipelineOptions no_fallback;
  no_fallback.fallback = false;
  const auto out = find_sunflower_paper(triangle, 3, scaled_params(3, 2), no_fallback);
  CHECK_FALSE(out.certificate);
  REQUIRE(out.failure);
  const std::string report = out.failure->to_report();
  CHECK(report.rfind("stage=", 0) == 0);
  CHECK(report.find("detail=") != std::string::npos);
}
