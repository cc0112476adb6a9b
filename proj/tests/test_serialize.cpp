#include <doctest.h>

#include <cmath>

#include "epfp/serialize.hpp"
#include "epfp/trace_io.hpp"

using namespace epfp;

namespace {

Problem sample_problem() {
  ConvexSet box = ConvexSet::box(Vector({0.0}), Vector({1.0}));
  Mapping m = Mapping::scaled_reflection(Vector({0.0}), 0.5,
                                         ConvexSet::whole_space(1));
  m.set_claimed_class(GhybParams{1.0, 0.0});
  return Problem{box, m,
                 Bifunction::affine_vi(Eigen::MatrixXd::Identity(1, 1),
                                       Vector({0.0}), box),
                 Vector({0.0}), ConvexSet::singleton(Vector({0.0}))};
}

}  // namespace

TEST_CASE("every set kind round-trips through its JSON form") {
  std::vector<ConvexSet> sets = {
      ConvexSet::whole_space(3),
      ConvexSet::box(Vector({-1.0, 0.0}), Vector({1.0, 2.0})),
      ConvexSet::ball(Vector({0.5, -0.5}), 1.5),
      ConvexSet::halfspace(Vector({1.0, -2.0}), 1.0),
      ConvexSet::hyperplane(Vector({1.0, 1.0}), 1.0),
      ConvexSet::simplex(4, 2.0),
      ConvexSet::singleton(Vector({0.25, -0.75})),
      ConvexSet::intersection(
          {ConvexSet::box(Vector({-1.0}), Vector({1.0})),
           ConvexSet::halfspace(Vector({1.0}), 0.5)},
          500, 1e-11),
  };
  for (const ConvexSet& s : sets) {
    Json j = to_json(s);
    ConvexSet back = set_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
  }
}

TEST_CASE("every mapping kind round-trips through its JSON form") {
  ConvexSet dom = ConvexSet::ball(Vector({0.0, 0.0}), 2.0);
  std::vector<Mapping> maps = {
      Mapping::identity(dom),
      Mapping::projection(ConvexSet::box(Vector({0.0, 0.0}),
                                         Vector({1.0, 1.0})),
                          dom),
      Mapping::rotation(Vector({0.0, 0.0}), 0.75, dom),
      Mapping::scaled_reflection(Vector({0.1, 0.2}), -0.5, dom),
      Mapping::affine((Eigen::MatrixXd(2, 2) << 1.0, 0.25, -0.25, 1.0)
                          .finished(),
                      Vector({0.0, 0.1}), dom),
      Mapping::composite({Mapping::identity(dom),
                          Mapping::rotation(Vector({0.0, 0.0}), 0.3, dom)},
                         dom),
  };
  maps[2].set_claimed_class(GhybParams{1.0, 0.0});
  for (const Mapping& m : maps) {
    Json j = to_json(m);
    Mapping back = mapping_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
  }
}

TEST_CASE("bifunction families round-trip; custom is rejected in spec files") {
  ConvexSet box = ConvexSet::box(Vector({0.0, 0.0}), Vector({1.0, 1.0}));
  std::vector<Bifunction> fs = {
      Bifunction::zero(box),
      Bifunction::affine_vi((Eigen::MatrixXd(2, 2) << 1.0, 0.2, 0.2, 1.0)
                                .finished(),
                            Vector({0.1, -0.1}), box),
      Bifunction::convex_gap(QuadraticForm::norm_square(2), box),
  };
  for (const Bifunction& f : fs) {
    Json j = to_json(f);
    Bifunction back = bifunction_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
  }
  Json custom = Json{{"family", "custom"},
                     {"domain", to_json(box)}};
  CHECK_THROWS_AS(bifunction_from_json(custom), SpecError);
}

TEST_CASE("experiment specs round-trip byte for byte") {
  ExperimentSpec spec{sample_problem()};
  spec.scheme = SchemeKind::ResolventIshikawa;
  spec.schedule.alpha = SequenceSpec::harmonic(0.5, 0.25);
  spec.schedule.beta = SequenceSpec::geometric(0.5, 0.2, 0.9);
  spec.schedule.bounds = ScheduleBounds{0.1, 0.1, 0.9, 0.1};
  spec.stop = StopRule{250, 1e-7};
  spec.x1 = Vector({0.9});
  spec.seed = 42;
  spec.outputs = {"trace-csv", "report-json"};

  Json j = to_json(spec);
  ExperimentSpec back = experiment_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("problem parsing accepts single-letter aliases") {
  Json j = to_json(sample_problem());
  Json aliased;
  aliased["E"] = j["set"];
  aliased["S"] = j["mapping"];
  aliased["f"] = j["bifunction"];
  Problem p = problem_from_json(aliased);
  CHECK(to_json(p)["set"].dump() == j["set"].dump());
  CHECK(to_json(p)["mapping"].dump() == j["mapping"].dump());
}

TEST_CASE("mapping and bifunction domains default to the problem set") {
  Json j;
  j["set"] = to_json(ConvexSet::box(Vector({0.0}), Vector({1.0})));
  j["mapping"] = Json{{"kind", "identity"}};
  j["bifunction"] = Json{{"family", "zero"}};
  Problem p = problem_from_json(j);
  CHECK(p.mapping.domain().kind() == SetKind::Box);
  CHECK(p.bifunction.domain().kind() == SetKind::Box);
}

TEST_CASE("parse errors carry the offending key") {
  CHECK_THROWS_WITH_AS(set_from_json(Json{{"kind", "ball"}}),
                       doctest::Contains("center"), SpecError);
  CHECK_THROWS_WITH_AS(set_from_json(Json{{"kind", "dodecahedron"}}),
                       doctest::Contains("dodecahedron"), SpecError);
  CHECK_THROWS_WITH_AS(parse_json("{ not json"),
                       doctest::Contains("invalid JSON"), SpecError);
  CHECK_THROWS_AS(vector_from_json(Json::array()), SpecError);
  CHECK_THROWS_AS(scheme_from_name("nonsense"), SpecError);
}

TEST_CASE("trace JSON round-trips and CSV is lossless and pinned") {
  Problem p = sample_problem();
  Schedule s;
  s.bounds = ScheduleBounds{0.1, 0.1, 0.9, 0.1};
  RunOptions opt;
  opt.inner.tol = 1e-12;
  Trace t = run(p, SchemeKind::ResolventIshikawa, s, StopRule{40, 1e-8},
                Vector({0.9}), opt);
  REQUIRE(t.status == TerminalStatus::Converged);

  Json j = to_json(t);
  Trace back = trace_from_json(j);
  CHECK(to_json(back).dump() == j.dump());

  std::string csv = trace_to_csv(t);
  CHECK(csv.rfind("n,x_0,u_0,y_0,alpha_n,beta_n,r_n,res_x_Su,res_y_x,res_x_u,"
                  "res_u_Su,dist_q\n",
                  0) == 0);

  // 17 significant digits reparse to the exact double
  for (double v : {0.1, 1.0 / 3.0, 0.825, 1e-300, -2.5e17}) {
    CHECK(std::stod(format_float(v)) == v);
  }
}

TEST_CASE("records must be contiguous from one") {
  Json j;
  j["scheme"] = "mann";
  j["status"] = "converged";
  j["final_x"] = Json::array({0.5});
  Json rec;
  rec["n"] = 2;  // gap
  rec["x"] = Json::array({0.5});
  rec["u"] = Json::array({0.5});
  rec["y"] = Json::array({0.5});
  rec["alpha_n"] = 0.5;
  rec["beta_n"] = 0.5;
  rec["r_n"] = 1.0;
  rec["res_x_Su"] = 0.0;
  rec["res_y_x"] = 0.0;
  rec["res_x_u"] = 0.0;
  rec["res_u_Su"] = 0.0;
  j["records"] = Json::array({rec});
  CHECK_THROWS_WITH_AS(trace_from_json(j), doctest::Contains("contiguous"),
                       SpecError);
}
