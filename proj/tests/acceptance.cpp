// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Usage: epfp_acceptance <cli-binary> <fixtures-dir>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "epfp/classifier.hpp"
#include "epfp/diagnostics.hpp"
#include "epfp/serialize.hpp"
#include "epfp/trace_io.hpp"

using namespace epfp;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << number << ". " << name;
  if (!pass && !detail.empty()) std::cout << " — " << detail;
  std::cout << "\n";
  if (!pass) ++g_failures;
}

Vector random_vector(Rng& rng, int dim, double halfwidth) {
  std::vector<double> c(static_cast<size_t>(dim));
  for (auto& v : c) v = rng.uniform(-halfwidth, halfwidth);
  return Vector(std::move(c));
}

std::vector<ConvexSet> set_catalog() {
  return {
      ConvexSet::whole_space(3),
      ConvexSet::box(Vector({-1.0, 0.0, -2.0}), Vector({1.0, 2.0, -0.5})),
      ConvexSet::ball(Vector({0.5, -0.5, 1.0}), 1.5),
      ConvexSet::halfspace(Vector({1.0, -2.0, 0.5}), 1.0),
      ConvexSet::hyperplane(Vector({1.0, 1.0, 1.0}), 1.0),
      ConvexSet::simplex(3, 1.0),
      ConvexSet::singleton(Vector({0.25, -0.75, 2.0})),
      ConvexSet::intersection(
          {ConvexSet::box(Vector({-1.0, -1.0, -1.0}), Vector({1.0, 1.0, 1.0})),
           ConvexSet::ball(Vector({0.5, 0.0, 0.0}), 1.2)}),
  };
}

Schedule half_schedule() {
  Schedule s;
  s.bounds = ScheduleBounds{0.1, 0.1, 0.9, 0.1};
  return s;
}

RunOptions tight_inner() {
  RunOptions opt;
  opt.inner.tol = 1e-12;
  return opt;
}

Problem rotation_problem() {
  ConvexSet ball = ConvexSet::ball(Vector({0.0, 0.0}), 1.0);
  return Problem{ball,
                 Mapping::rotation(Vector({0.0, 0.0}), std::numbers::pi / 2.0,
                                   ConvexSet::whole_space(2)),
                 Bifunction::zero(ball), Vector({0.0, 0.0}),
                 ConvexSet::singleton(Vector({0.0, 0.0}))};
}

Problem affine_1d_problem() {
  ConvexSet box = ConvexSet::box(Vector({0.0}), Vector({1.0}));
  return Problem{box, Mapping::identity(ConvexSet::whole_space(1)),
                 Bifunction::affine_vi(Eigen::MatrixXd::Identity(1, 1),
                                       Vector({-0.3}), box),
                 Vector({0.3}), ConvexSet::singleton(Vector({0.3}))};
}

Problem combined_1d_problem() {
  ConvexSet box = ConvexSet::box(Vector({0.0}), Vector({1.0}));
  return Problem{box,
                 Mapping::scaled_reflection(Vector({0.0}), 0.5,
                                            ConvexSet::whole_space(1)),
                 Bifunction::affine_vi(Eigen::MatrixXd::Identity(1, 1),
                                       Vector({0.0}), box),
                 Vector({0.0}), ConvexSet::singleton(Vector({0.0}))};
}

// ------------------------------------------------------------------ 1
void criterion_hilbert_identities() {
  Rng rng(101);
  bool pass = true;
  std::string detail;
  for (long k = 0; k < 10000 && pass; ++k) {
    int dim = 1 + static_cast<int>(rng.uniform(0.0, 10.0));
    Vector x = random_vector(rng, dim, 5.0);
    Vector y = random_vector(rng, dim, 5.0);
    double t = rng.uniform(-2.0, 2.0);
    double scale = 1.0 + inner(x, x) + inner(y, y);

    double lhs = inner(combine(t, x, y), combine(t, x, y));
    double rhs = t * inner(x, x) + (1.0 - t) * inner(y, y) -
                 t * (1.0 - t) * inner(x - y, x - y);
    if (std::abs(lhs - rhs) > 1e-8 * scale) {
      pass = false;
      detail = "affine combination expansion failed";
    }
    if (inner(x + y, x + y) >
        inner(x, x) + 2.0 * inner(y, x + y) + 1e-8 * scale) {
      pass = false;
      detail = "sum-norm inequality failed";
    }
    double dl = inner(x - y, x - y);
    double dr = inner(x, x) - inner(y, y) - 2.0 * inner(x - y, y);
    if (std::abs(dl - dr) > 1e-8 * scale) {
      pass = false;
      detail = "difference expansion failed";
    }
  }

  SamplerOptions opt;
  opt.fallback_halfwidth = 4.0;
  for (const ConvexSet& set : set_catalog()) {
    if (!pass) break;
    for (long k = 0; k < 10000; ++k) {
      Vector x = random_vector(rng, set.dim(), 4.0);
      Vector px = set.project(x);
      Vector y = sample_point(set, rng, opt);
      double scale = 1.0 + inner(x, x) + inner(y, y);
      if (inner(x - px, y - px) > 1e-8 * scale) {
        pass = false;
        detail = "projection characterization failed for set kind " +
                 std::to_string(static_cast<int>(set.kind()));
        break;
      }
    }
  }
  report(1, "Hilbert identity suite (10000 instances per set kind, 1e-8)",
         pass, detail);
}

// ------------------------------------------------------------------ 2
void criterion_resolvent_suite() {
  bool pass = true;
  std::string detail;

  ConvexSet box = ConvexSet::box(Vector({-1.0, -1.0}), Vector({1.5, 1.5}));
  Eigen::MatrixXd A(2, 2);
  A << 1.2, 0.3, 0.3, 0.9;
  std::vector<Bifunction> families = {
      Bifunction::zero(box),
      Bifunction::affine_vi(A, Vector({0.2, -0.1}), box),
      Bifunction::convex_gap(QuadraticForm{A, Vector({0.1, 0.0})}, box),
  };
  Rng rng(202);
  for (const Bifunction& f : families) {
    for (long k = 0; k < 1000 && pass; ++k) {
      Vector x = random_vector(rng, 2, 4.0);
      Vector y = random_vector(rng, 2, 4.0);
      ResolventRequest rx{f, box, 1.0, x};
      ResolventRequest ry{f, box, 1.0, y};
      rx.inner.tol = ry.inner.tol = 1e-12;
      Vector tx = solve_resolvent(rx).z;
      Vector ty = solve_resolvent(ry).z;
      if (inner(tx - ty, tx - ty) > inner(tx - ty, x - y) + 1e-8) {
        pass = false;
        detail = "firm nonexpansiveness failed";
      }
    }
  }

  // fixed points of the resolvent at known equilibria, across r
  ConvexSet seg = ConvexSet::box(Vector({0.0}), Vector({1.0}));
  Bifunction f1 = Bifunction::affine_vi(Eigen::MatrixXd::Identity(1, 1),
                                        Vector({-0.3}), seg);
  ConvexSet all = ConvexSet::whole_space(2);
  Bifunction f2 = Bifunction::affine_vi(Eigen::MatrixXd::Identity(2, 2),
                                        Vector({-1.0, 1.0}), all);
  for (double r : {0.1, 1.0, 10.0}) {
    ResolventRequest r1{f1, seg, r, Vector({0.3})};
    r1.inner.tol = 1e-12;
    if (distance(solve_resolvent(r1).z, Vector({0.3})) > 1e-8) {
      pass = false;
      detail = "resolvent moved the 1-D equilibrium at r=" + std::to_string(r);
    }
    ResolventRequest r2{f2, all, r, Vector({1.0, -1.0})};
    if (distance(solve_resolvent(r2).z, Vector({1.0, -1.0})) > 1e-8) {
      pass = false;
      detail = "resolvent moved the 2-D equilibrium at r=" + std::to_string(r);
    }
  }

  // the zero family collapses to the metric projection
  for (const ConvexSet& set : set_catalog()) {
    Bifunction zero = Bifunction::zero(set);
    for (long k = 0; k < 50 && pass; ++k) {
      Vector x = random_vector(rng, set.dim(), 4.0);
      for (double r : {0.1, 1.0, 10.0}) {
        ResolventRequest req{zero, set, r, x};
        if (distance(solve_resolvent(req).z, set.project(x)) > 1e-12) {
          pass = false;
          detail = "zero-family resolvent differs from the projection";
        }
      }
    }
  }
  report(2, "Resolvent suite (firm nonexpansiveness, fixed points, projection "
            "reduction)",
         pass, detail);
}

// ------------------------------------------------------------------ 3
bool trace_satisfies_proof_inequalities(const Trace& t, const Vector& q,
                                        std::string& detail) {
  std::vector<Vector> xs;
  for (const auto& rec : t.records) xs.push_back(rec.x);
  xs.push_back(t.final_x);
  for (size_t k = 0; k < t.records.size(); ++k) {
    const TraceRecord& rec = t.records[k];
    double dn = distance(xs[k], q);
    double dn1 = distance(xs[k + 1], q);
    if (dn1 > dn + 1e-10) {
      detail = "monotone distance decrease failed at n=" + std::to_string(rec.n);
      return false;
    }
    double coeff = rec.alpha * rec.beta * (1.0 - rec.beta);
    if (dn1 * dn1 > dn * dn - coeff * rec.res_x_su * rec.res_x_su + 1e-8) {
      detail = "quantified descent failed at n=" + std::to_string(rec.n);
      return false;
    }
  }
  return true;
}

void criterion_main_scheme_convergence() {
  bool pass = true;
  std::string detail;
  StopRule stop{100000, 1e-6};
  struct Case {
    Problem problem;
    Vector x1;
    const char* name;
  };
  std::vector<Case> cases = {
      {rotation_problem(), Vector({1.0, 0.0}), "rotation/ball"},
      {affine_1d_problem(), Vector({0.9}), "1-D equilibrium"},
      {combined_1d_problem(), Vector({0.9}), "combined 1-D"},
  };
  for (const Case& c : cases) {
    Trace t = run(c.problem, SchemeKind::ResolventIshikawa, half_schedule(),
                  stop, c.x1, tight_inner());
    if (t.status != TerminalStatus::Converged) {
      pass = false;
      detail = std::string(c.name) + ": did not converge";
      break;
    }
    if (distance(t.final_x, *c.problem.known_solution) > 1e-5) {
      pass = false;
      detail = std::string(c.name) + ": final iterate too far from solution";
      break;
    }
    const TraceRecord& last = t.records.back();
    if (last.res_x_su > 1e-6 || last.res_y_x > 1e-6 || last.res_x_u > 1e-6 ||
        last.res_u_su > 1e-6) {
      pass = false;
      detail = std::string(c.name) + ": a residual exceeds 1e-6 at termination";
      break;
    }
    if (!trace_satisfies_proof_inequalities(t, *c.problem.known_solution,
                                            detail)) {
      pass = false;
      detail = std::string(c.name) + ": " + detail;
      break;
    }
  }
  report(3, "Main-scheme convergence suite (three problems, residuals, "
            "monotone descent)",
         pass, detail);
}

// ------------------------------------------------------------------ 4
void criterion_variant_consistency() {
  bool pass = true;
  std::string detail;

  Schedule pinned = half_schedule();
  pinned.alpha = SequenceSpec::constant(1.0);
  StopRule stop{200, 1e-10};
  Trace full = run(rotation_problem(), SchemeKind::ResolventIshikawaFullStep,
                   half_schedule(), stop, Vector({0.6, 0.3}));
  Trace main = run(rotation_problem(), SchemeKind::ResolventIshikawa, pinned,
                   stop, Vector({0.6, 0.3}));
  main.scheme = full.scheme;
  if (trace_to_csv(full) != trace_to_csv(main) ||
      to_json(full).dump() != to_json(main).dump()) {
    pass = false;
    detail = "full-step variant diverged from the pinned-alpha run";
  }

  Problem p = rotation_problem();
  Trace proj = run(p, SchemeKind::ProjectionIshikawa, half_schedule(),
                   StopRule{500, 1e-30}, Vector({1.3, -0.4}));
  if (proj.records.size() != 500) {
    pass = false;
    detail = "projection variant stopped early";
  } else {
    for (const TraceRecord& rec : proj.records) {
      if (distance(rec.u, p.set.project(rec.x)) > 1e-12) {
        pass = false;
        detail = "u_n differs from the metric projection at n=" +
                 std::to_string(rec.n);
        break;
      }
    }
  }
  report(4, "Variant consistency (full-step bitwise equality; projection "
            "variant over 500 steps)",
         pass, detail);
}

// ------------------------------------------------------------------ 5
void criterion_hybrid_path() {
  bool pass = true;
  std::string detail;

  ConvexSet domain = ConvexSet::box(Vector({0.0, 0.0}), Vector({1.0, 1.0}));
  ConvexSet target = ConvexSet::box(Vector({0.2, 0.2}), Vector({0.8, 0.8}));
  Mapping proj = Mapping::projection(target, domain);

  ClassReport hybrid =
      classify(proj, OperatorClass::Hybrid, 31, 2000, 1e-8);
  ClassReport ghyb = classify(proj, OperatorClass::GeneralizedHybrid, 31, 2000,
                              1e-8, 1.5, 0.5);
  if (!hybrid.consistent || !ghyb.consistent) {
    pass = false;
    detail = "the projection mapping failed a sampled hybrid check";
  }
  // identical sample sets: the class residual is exactly twice the
  // (3/2, 1/2) residual, so the worst values match up to that factor
  if (std::abs(hybrid.worst_residual - 2.0 * ghyb.worst_residual) >
      1e-10 * (1.0 + std::abs(hybrid.worst_residual))) {
    pass = false;
    detail = "factor-of-2 residual scaling violated";
  }

  // the main scheme drives this hybrid mapping to the common solution
  Problem p{domain, proj,
            Bifunction::affine_vi(Eigen::MatrixXd::Identity(2, 2),
                                  Vector({-0.5, -0.5}), domain),
            Vector({0.5, 0.5}), ConvexSet::singleton(Vector({0.5, 0.5}))};
  Trace t = run(p, SchemeKind::ResolventIshikawa, half_schedule(),
                StopRule{100000, 1e-6}, Vector({0.9, 0.1}), tight_inner());
  if (t.status != TerminalStatus::Converged ||
      distance(t.final_x, Vector({0.5, 0.5})) > 1e-5) {
    pass = false;
    detail = "main scheme failed on the hybrid mapping problem";
  } else if (!trace_satisfies_proof_inequalities(t, Vector({0.5, 0.5}),
                                                 detail)) {
    pass = false;
  }
  report(5, "Hybrid-mapping path (sampled hybrid check, residual scaling, "
            "main-scheme run)",
         pass, detail);
}

// ------------------------------------------------------------------ 6
void criterion_residual_identities() {
  bool pass = true;
  std::string detail;
  ConvexSet dom = ConvexSet::ball(Vector({0.0, 0.0}), 2.0);
  std::vector<Mapping> catalog = {
      Mapping::projection(ConvexSet::box(Vector({-0.5, -0.5}),
                                         Vector({0.5, 0.5})),
                          dom),
      Mapping::rotation(Vector({0.0, 0.0}), 0.7, dom),
      Mapping::scaled_reflection(Vector({0.1, -0.2}), 0.6, dom),
      Mapping::affine((Eigen::MatrixXd(2, 2) << 0.3, -0.1, 0.2, 0.4).finished(),
                      Vector({0.05, -0.05}), dom),
  };
  Rng rng(606);
  for (long k = 0; k < 10000 && pass; ++k) {
    const Mapping& S = catalog[static_cast<size_t>(rng.uniform(0.0, 4.0))];
    Vector x = sample_point(S.domain(), rng);
    Vector y = sample_point(S.domain(), rng);
    double nonspread = class_residual(S, OperatorClass::Nonspreading, x, y);
    double nonexp = class_residual(S, OperatorClass::Nonexpansive, x, y);
    if (std::abs(generalized_hybrid_residual(S, 2.0, 1.0, x, y) - nonspread) >
        1e-10) {
      pass = false;
      detail = "(2,1) residual differs from the nonspreading residual";
    }
    if (std::abs(generalized_hybrid_residual(S, 1.0, 0.0, x, y) - nonexp) >
        1e-10) {
      pass = false;
      detail = "(1,0) residual differs from the nonexpansive residual";
    }
  }
  report(6, "Residual identities ((2,1) nonspreading, (1,0) nonexpansive, "
            "10000 pairs, 1e-10)",
         pass, detail);
}

// ------------------------------------------------------------------ 7
void criterion_schedule_gate() {
  bool pass = true;
  std::string detail;

  struct Case {
    Schedule schedule;
    std::string sequence;
    std::string must_mention;
  };
  std::vector<Case> cases;
  {
    Schedule s = half_schedule();
    s.alpha = SequenceSpec::harmonic(0.0, 1.0);  // sinks below alpha_low
    cases.push_back({s, "alpha", "alpha_low"});
  }
  {
    Schedule s = half_schedule();
    s.beta = SequenceSpec::constant(1.0);
    cases.push_back({s, "beta", "liminf beta_n(1-beta_n)"});
  }
  {
    Schedule s = half_schedule();
    s.r = SequenceSpec::harmonic(0.0, 1.0);  // r_n = 1/n sinks below r_low
    cases.push_back({s, "r", "liminf r_n"});
  }
  for (const Case& c : cases) {
    try {
      run(rotation_problem(), SchemeKind::ResolventIshikawa, c.schedule,
          StopRule{1000, 1e-6}, Vector({1.0, 0.0}));
      pass = false;
      detail = "schedule with bad " + c.sequence + " was accepted";
    } catch (const ScheduleError& e) {
      if (e.violation.sequence != c.sequence ||
          e.violation.condition.find(c.must_mention) == std::string::npos) {
        pass = false;
        detail = "violation for " + c.sequence + " did not name its condition";
      }
    }
  }
  report(7, "Schedule gate (alpha floor, beta box, r floor rejected by name)",
         pass, detail);
}

// ------------------------------------------------------------------ 8
void criterion_determinism(const std::string& cli, const fs::path& fixtures) {
  bool pass = true;
  std::string detail;

  // in-process: a full standard-suite pass serializes identically twice
  auto render = [&]() {
    std::string blob;
    for (const Problem& p : {rotation_problem(), affine_1d_problem(),
                             combined_1d_problem()}) {
      Vector x1 = p.set.dim() == 2 ? Vector({1.0, 0.0}) : Vector({0.9});
      Trace t = run(p, SchemeKind::ResolventIshikawa, half_schedule(),
                    StopRule{100000, 1e-6}, x1, tight_inner());
      blob += trace_to_csv(t);
      blob += to_json(t).dump();
      blob += to_json(certify(t, p)).dump();
    }
    ClassReport cr = classify(
        Mapping::rotation(Vector({0.0, 0.0}), 0.4,
                          ConvexSet::ball(Vector({0.0, 0.0}), 2.0)),
        OperatorClass::Hybrid, 7, 2000, 1e-8);
    blob += to_json(cr).dump();
    return blob;
  };
  if (render() != render()) {
    pass = false;
    detail = "an in-process rerun changed some serialized output";
  }

  // CLI: the same spec produces byte-identical artifacts
  if (cli.empty() || fixtures.empty()) {
    pass = false;
    detail = "CLI path or fixtures dir not supplied";
  } else {
    fs::path base = fs::temp_directory_path() / "epfp_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    fs::path a = base / "a";
    fs::path b = base / "b";
    std::string spec = (fixtures / "rotation.json").string();
    std::string cmd_a = cli + " run --spec " + spec + " --out " + a.string() +
                        " > /dev/null 2>&1";
    std::string cmd_b = cli + " run --spec " + spec + " --out " + b.string() +
                        " > /dev/null 2>&1";
    if (std::system(cmd_a.c_str()) != 0 || std::system(cmd_b.c_str()) != 0) {
      pass = false;
      detail = "CLI run on the rotation spec did not exit 0";
    } else {
      for (const char* name :
           {"trace.csv", "trace.json", "report.json", "plotdata.csv"}) {
        if (read_file(a / name) != read_file(b / name)) {
          pass = false;
          detail = std::string("CLI artifact differs between runs: ") + name;
        }
      }
    }
  }
  report(8, "Determinism (in-process rerun and repeated CLI runs are "
            "byte-identical)",
         pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  fs::path fixtures = argc > 2 ? fs::path(argv[2]) : fs::path();

  criterion_hilbert_identities();
  criterion_resolvent_suite();
  criterion_main_scheme_convergence();
  criterion_variant_consistency();
  criterion_hybrid_path();
  criterion_residual_identities();
  criterion_schedule_gate();
  criterion_determinism(cli, fixtures);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
