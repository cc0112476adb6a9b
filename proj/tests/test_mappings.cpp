#include <doctest.h>

#include <cmath>
#include <numbers>

#include "epfp/classifier.hpp"
#include "epfp/mapping.hpp"

using namespace epfp;

namespace {

constexpr double kQuarterTurn = std::numbers::pi / 2.0;

ConvexSet plane_ball(double radius = 2.0) {
  return ConvexSet::ball(Vector({0.0, 0.0}), radius);
}

std::vector<Mapping> mapping_catalog() {
  ConvexSet dom = plane_ball();
  return {
      Mapping::identity(dom),
      Mapping::projection(ConvexSet::box(Vector({-0.5, -0.5}),
                                         Vector({0.5, 0.5})),
                          dom),
      Mapping::rotation(Vector({0.0, 0.0}), 0.7, dom),
      Mapping::scaled_reflection(Vector({0.1, -0.2}), 0.6, dom),
      Mapping::affine((Eigen::MatrixXd(2, 2) << 0.3, -0.1, 0.2, 0.4).finished(),
                      Vector({0.05, -0.05}), dom),
      Mapping::composite({Mapping::rotation(Vector({0.0, 0.0}), 0.3, dom),
                          Mapping::scaled_reflection(Vector({0.0, 0.0}), 0.5,
                                                     dom)},
                         dom),
  };
}

}  // namespace

TEST_CASE("apply examples") {
  ConvexSet dom = ConvexSet::whole_space(2);
  Mapping id = Mapping::identity(dom);
  CHECK(id.apply(Vector({1.0, 2.0})) == Vector({1.0, 2.0}));

  Mapping rot = Mapping::rotation(Vector({0.0, 0.0}), kQuarterTurn, dom);
  Vector r = rot.apply(Vector({1.0, 0.0}));
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(1.0));

  // componentwise formula oracle: S x = c - factor (x - c), center 0
  Mapping sr = Mapping::scaled_reflection(Vector({0.0, 0.0}), 0.5, dom);
  Vector x({0.8, -0.4});
  Vector sx = sr.apply(x);
  for (int i = 0; i < 2; ++i) CHECK(sx[i] == doctest::Approx(-0.5 * x[i]));
}

TEST_CASE("composite applies parts in list order") {
  ConvexSet dom = ConvexSet::whole_space(1);
  Mapping plus_two = Mapping::affine(Eigen::MatrixXd::Identity(1, 1),
                                     Vector({2.0}), dom);
  Mapping halve = Mapping::affine(0.5 * Eigen::MatrixXd::Identity(1, 1),
                                  Vector({0.0}), dom);
  Mapping both = Mapping::composite({plus_two, halve}, dom);
  // (x + 2) then halve
  CHECK(both.apply(Vector({4.0}))[0] == doctest::Approx(3.0));
}

TEST_CASE("mapping validation and domain checks") {
  CHECK_THROWS_AS(
      Mapping::rotation(Vector({0.0, 0.0, 0.0}), 1.0, ConvexSet::whole_space(3)),
      ValidationError);
  CHECK_THROWS_AS(Mapping::scaled_reflection(Vector({0.0}), 1.5,
                                             ConvexSet::whole_space(1)),
                  ValidationError);
  Mapping id = Mapping::identity(ConvexSet::ball(Vector({0.0, 0.0}), 1.0));
  CHECK_THROWS_AS(id.apply(Vector({5.0, 0.0})), DomainError);
  CHECK_THROWS_AS(id.apply(Vector({0.5})), DimensionError);
}

TEST_CASE("fixed point residual examples") {
  ConvexSet dom = ConvexSet::whole_space(2);
  CHECK(fixed_point_residual(Mapping::identity(dom), Vector({3.0, 1.0})) ==
        0.0);
  CHECK(fixed_point_residual(
            Mapping::rotation(Vector({0.0, 0.0}), kQuarterTurn, dom),
            Vector({0.0, 0.0})) == 0.0);
  ConvexSet dom1 = ConvexSet::whole_space(1);
  // || -0.5 x - x || at x = 1
  CHECK(fixed_point_residual(
            Mapping::scaled_reflection(Vector({0.0}), 0.5, dom1),
            Vector({1.0})) == doctest::Approx(1.5));
}

TEST_CASE("generalized hybrid residual examples") {
  ConvexSet dom = ConvexSet::whole_space(2);
  Mapping id = Mapping::identity(dom);
  Vector x({1.5, -0.25});
  Vector y({-2.0, 0.5});
  CHECK(generalized_hybrid_residual(id, 0.3, -1.2, x, y) ==
        doctest::Approx(0.0));
  CHECK(generalized_hybrid_residual(id, 2.0, 1.0, x, y) ==
        doctest::Approx(0.0));

  Mapping rot = Mapping::rotation(Vector({0.0, 0.0}), 0.9, dom);
  CHECK(generalized_hybrid_residual(rot, 1.0, 0.0, x, y) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // hand/oracle computation: ||P x - P y||^2 - ||x - y||^2 = 1 - 4 = -3
  Mapping proj =
      Mapping::projection(ConvexSet::ball(Vector({0.0, 0.0}), 1.0), dom);
  CHECK(generalized_hybrid_residual(proj, 1.0, 0.0, Vector({2.0, 0.0}),
                                    Vector({0.0, 0.0})) ==
        doctest::Approx(-3.0));
}

TEST_CASE("residual identities tie the named classes to (alpha, beta) pairs") {
  Rng rng(5);
  for (const Mapping& S : mapping_catalog()) {
    for (int trial = 0; trial < 200; ++trial) {
      Vector x = sample_point(S.domain(), rng);
      Vector y = sample_point(S.domain(), rng);

      double nonexp = class_residual(S, OperatorClass::Nonexpansive, x, y);
      double nonspread = class_residual(S, OperatorClass::Nonspreading, x, y);
      double hybrid = class_residual(S, OperatorClass::Hybrid, x, y);

      CHECK(std::abs(generalized_hybrid_residual(S, 1.0, 0.0, x, y) -
                     nonexp) <= 1e-10);
      CHECK(std::abs(generalized_hybrid_residual(S, 2.0, 1.0, x, y) -
                     nonspread) <= 1e-10);
      CHECK(std::abs(generalized_hybrid_residual(S, 1.5, 0.5, x, y) -
                     0.5 * hybrid) <= 1e-10);
    }
  }
}

TEST_CASE("classify: metric projection is firmly nonexpansive") {
  Mapping proj = Mapping::projection(
      ConvexSet::box(Vector({0.0, 0.0}), Vector({1.0, 1.0})),
      ConvexSet::box(Vector({-2.0, -2.0}), Vector({3.0, 3.0})));
  ClassReport report =
      classify(proj, OperatorClass::FirmlyNonexpansive, 1, 1000, 1e-8);
  CHECK(report.consistent);
  CHECK(report.pairs_tested == 1000);
  CHECK(report.worst_violation <= 0.0);
  CHECK_FALSE(report.witness.has_value());
}

TEST_CASE("classify: rotations satisfy the (1,0) inequality") {
  Mapping rot =
      Mapping::rotation(Vector({0.0, 0.0}), kQuarterTurn, plane_ball());
  ClassReport report = classify(rot, OperatorClass::GeneralizedHybrid, 1, 1000,
                                1e-8, 1.0, 0.0);
  CHECK(report.consistent);
  CHECK(report.worst_residual <= 1e-12);
}

TEST_CASE("classify: sampled maximization is the authority for reflections") {
  // factor -1 makes S the identity, so every class inequality is tight at 0
  Mapping sr = Mapping::scaled_reflection(Vector({0.0, 0.0}), -1.0,
                                          plane_ball(1.0));
  ClassReport report =
      classify(sr, OperatorClass::Nonspreading, 1, 1000, 1e-8);
  CHECK(report.worst_residual == doctest::Approx(0.0));
  CHECK(report.consistent);

  // the full point reflection is an isometry: nonexpansive, and nonspreading
  // only up to the sampled maximum the oracle reports
  Mapping full = Mapping::scaled_reflection(Vector({0.0, 0.0}), 1.0,
                                            plane_ball(1.0));
  ClassReport nonexp = classify(full, OperatorClass::Nonexpansive, 1, 1000,
                                1e-8);
  CHECK(nonexp.consistent);
  ClassReport nonspread =
      classify(full, OperatorClass::Nonspreading, 1, 1000, 1e-8);
  // brute-force oracle over the same sample set
  Rng rng(1);
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 1000; ++k) {
    Vector x = sample_point(full.domain(), rng);
    Vector y = sample_point(full.domain(), rng);
    worst = std::max(worst,
                     class_residual(full, OperatorClass::Nonspreading, x, y));
  }
  CHECK(nonspread.worst_residual == doctest::Approx(worst));
  CHECK(nonspread.consistent == (worst <= 1e-8));
}

TEST_CASE("classify: expanding maps violate nonexpansiveness with a witness") {
  Mapping doubling = Mapping::affine(2.0 * Eigen::MatrixXd::Identity(2, 2),
                                     Vector({0.0, 0.0}), plane_ball());
  ClassReport report =
      classify(doubling, OperatorClass::Nonexpansive, 1, 500, 1e-8);
  CHECK_FALSE(report.consistent);
  CHECK(report.worst_violation > 0.0);
  REQUIRE(report.witness.has_value());
  // the witness is exact: recompute its residual
  double recomputed =
      class_residual(doubling, OperatorClass::Nonexpansive,
                     report.witness->first, report.witness->second);
  CHECK(recomputed == doctest::Approx(report.worst_residual));
  // ||2x - 2y||^2 - ||x - y||^2 = 3 ||x - y||^2
  Vector dx = report.witness->first - report.witness->second;
  CHECK(recomputed == doctest::Approx(3.0 * inner(dx, dx)));
}

TEST_CASE("classify is deterministic in the seed") {
  Mapping rot = Mapping::rotation(Vector({0.0, 0.0}), 0.4, plane_ball());
  ClassReport a = classify(rot, OperatorClass::Hybrid, 99, 400, 1e-8);
  ClassReport b = classify(rot, OperatorClass::Hybrid, 99, 400, 1e-8);
  CHECK(a.worst_residual == b.worst_residual);
  CHECK(a.consistent == b.consistent);
  ClassReport c = classify(rot, OperatorClass::Hybrid, 100, 400, 1e-8);
  CHECK(c.worst_residual != a.worst_residual);
}

TEST_CASE("quasi-nonexpansive checks") {
  ConvexSet dom = plane_ball();
  Mapping id = Mapping::identity(dom);
  CHECK(quasi_nonexpansive_report(id, Vector({0.3, 0.3}), 1, 500, 1e-8)
            .consistent);

  Mapping rot = Mapping::rotation(Vector({0.0, 0.0}), kQuarterTurn, dom);
  CHECK(quasi_nonexpansive_report(rot, Vector({0.0, 0.0}), 1, 500, 1e-8)
            .consistent);

  Mapping proj = Mapping::projection(
      ConvexSet::box(Vector({-0.5, -0.5}), Vector({0.5, 0.5})), dom);
  CHECK(quasi_nonexpansive_report(proj, Vector({0.25, 0.0}), 1, 500, 1e-8)
            .consistent);

  CHECK_THROWS_AS(quasi_nonexpansive_report(rot, Vector({1.0, 0.0}), 1, 100,
                                            1e-8),
                  ValidationError);
}

TEST_CASE("a sampled generalized-hybrid pass implies the quasi check at a "
          "fixed point") {
  // pairs (p, y) of the class inequality already force ||p - Sy|| <= ||p - y||
  ConvexSet dom = plane_ball();
  Mapping rot = Mapping::rotation(Vector({0.0, 0.0}), 1.1, dom);
  Vector p({0.0, 0.0});
  ClassReport ghyb = classify(rot, OperatorClass::GeneralizedHybrid, 21, 800,
                              1e-8, 1.0, 0.0);
  ClassReport quasi = quasi_nonexpansive_report(rot, p, 21, 800, 1e-8);
  CHECK(ghyb.consistent);
  CHECK(quasi.consistent);
}

TEST_CASE("claimed class is carried by the mapping") {
  Mapping rot = Mapping::rotation(Vector({0.0, 0.0}), 0.2, plane_ball());
  CHECK_FALSE(rot.claimed_class().has_value());
  rot.set_claimed_class(GhybParams{1.0, 0.0});
  REQUIRE(rot.claimed_class().has_value());
  CHECK(rot.claimed_class()->alpha == 1.0);
  CHECK(rot.claimed_class()->beta == 0.0);
}
