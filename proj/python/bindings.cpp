#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epfp/classifier.hpp"
#include "epfp/diagnostics.hpp"
#include "epfp/serialize.hpp"
#include "epfp/trace_io.hpp"

namespace py = pybind11;
using namespace epfp;

PYBIND11_MODULE(_epfp, m) {
  m.doc() =
      "Equilibrium-problem / fixed-point toolkit: R^n vector kernel, convex "
      "projections, operator-class audits, resolvent solvers, Ishikawa-type "
      "iteration schemes, and convergence certificates.";

  py::register_exception<Error>(m, "Error");
  py::register_exception<SpecError>(m, "SpecError");
  py::register_exception<ScheduleError>(m, "ScheduleError");

  // ----------------------------------------------------------- vectors
  py::class_<Vector>(m, "Vector")
      .def(py::init<std::vector<double>>(), py::arg("coords"))
      .def_property_readonly("coords",
                             [](const Vector& v) { return v.coords(); })
      .def_property_readonly("dim", &Vector::dim)
      .def("__len__", &Vector::dim)
      .def("__getitem__",
           [](const Vector& v, int i) {
             if (i < 0 || i >= v.dim()) throw py::index_error();
             return v[i];
           })
      .def("__eq__", [](const Vector& a, const Vector& b) { return a == b; })
      .def("__repr__", [](const Vector& v) {
        std::string out = "Vector([";
        for (int i = 0; i < v.dim(); ++i) {
          if (i) out += ", ";
          out += format_float(v[i]);
        }
        return out + "])";
      });
  py::implicitly_convertible<py::list, Vector>();
  py::implicitly_convertible<py::tuple, Vector>();

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init([](double abs, double rel) {
             return Tolerance{abs, rel};
           }),
           py::arg("abs") = 1e-9, py::arg("rel") = 0.0)
      .def_readwrite("abs", &Tolerance::abs)
      .def_readwrite("rel", &Tolerance::rel);

  m.def("inner", &inner, py::arg("x"), py::arg("y"));
  m.def("norm", &norm, py::arg("x"));
  m.def("distance",
        static_cast<double (*)(const Vector&, const Vector&)>(&distance),
        py::arg("x"), py::arg("y"));
  m.def("combine", &combine, py::arg("t"), py::arg("x"), py::arg("y"));

  // ----------------------------------------------------------- convex sets
  py::enum_<SetKind>(m, "SetKind")
      .value("WholeSpace", SetKind::WholeSpace)
      .value("Box", SetKind::Box)
      .value("Ball", SetKind::Ball)
      .value("Halfspace", SetKind::Halfspace)
      .value("Hyperplane", SetKind::Hyperplane)
      .value("Simplex", SetKind::Simplex)
      .value("Singleton", SetKind::Singleton)
      .value("Intersection", SetKind::Intersection);

  py::class_<ConvexSet>(m, "ConvexSet")
      .def_static("whole_space", &ConvexSet::whole_space, py::arg("dim"))
      .def_static("box", &ConvexSet::box, py::arg("lower"), py::arg("upper"))
      .def_static("ball", &ConvexSet::ball, py::arg("center"),
                  py::arg("radius"))
      .def_static("halfspace", &ConvexSet::halfspace, py::arg("normal"),
                  py::arg("offset"))
      .def_static("hyperplane", &ConvexSet::hyperplane, py::arg("normal"),
                  py::arg("offset"))
      .def_static("simplex", &ConvexSet::simplex, py::arg("dim"),
                  py::arg("scale"))
      .def_static("singleton", &ConvexSet::singleton, py::arg("point"))
      .def_static("intersection", &ConvexSet::intersection,
                  py::arg("members"),
                  py::arg("inner_cap") = defaults::kIntersectionCap,
                  py::arg("inner_tol") = defaults::kIntersectionTol)
      .def_property_readonly("kind", &ConvexSet::kind)
      .def_property_readonly("dim", &ConvexSet::dim)
      .def("project", &ConvexSet::project, py::arg("x"))
      .def("distance", &ConvexSet::distance, py::arg("x"))
      .def("contains", &ConvexSet::contains, py::arg("x"),
           py::arg("tol") = Tolerance{});

  // ----------------------------------------------------------- mappings
  py::enum_<MappingKind>(m, "MappingKind")
      .value("Identity", MappingKind::Identity)
      .value("Projection", MappingKind::Projection)
      .value("Rotation", MappingKind::Rotation)
      .value("ScaledReflection", MappingKind::ScaledReflection)
      .value("Affine", MappingKind::Affine)
      .value("Composite", MappingKind::Composite);

  py::class_<GhybParams>(m, "GhybParams")
      .def(py::init([](double alpha, double beta) {
             return GhybParams{alpha, beta};
           }),
           py::arg("alpha"), py::arg("beta"))
      .def_readwrite("alpha", &GhybParams::alpha)
      .def_readwrite("beta", &GhybParams::beta);

  py::class_<Mapping>(m, "Mapping")
      .def_static("identity", &Mapping::identity, py::arg("domain"))
      .def_static("projection", &Mapping::projection, py::arg("target"),
                  py::arg("domain"))
      .def_static("rotation", &Mapping::rotation, py::arg("center"),
                  py::arg("angle"), py::arg("domain"))
      .def_static("scaled_reflection", &Mapping::scaled_reflection,
                  py::arg("center"), py::arg("factor"), py::arg("domain"))
      .def_static("affine", &Mapping::affine, py::arg("matrix"),
                  py::arg("offset"), py::arg("domain"))
      .def_static("composite", &Mapping::composite, py::arg("parts"),
                  py::arg("domain"))
      .def_property_readonly("kind", &Mapping::kind)
      .def_property_readonly("domain", &Mapping::domain)
      .def_property("claimed_class", &Mapping::claimed_class,
                    &Mapping::set_claimed_class)
      .def("apply", &Mapping::apply, py::arg("x"));

  m.def("fixed_point_residual", &fixed_point_residual, py::arg("mapping"),
        py::arg("x"));
  m.def("generalized_hybrid_residual", &generalized_hybrid_residual,
        py::arg("mapping"), py::arg("alpha"), py::arg("beta"), py::arg("x"),
        py::arg("y"));

  // ----------------------------------------------------------- classifier
  py::enum_<OperatorClass>(m, "OperatorClass")
      .value("FirmlyNonexpansive", OperatorClass::FirmlyNonexpansive)
      .value("Nonexpansive", OperatorClass::Nonexpansive)
      .value("Nonspreading", OperatorClass::Nonspreading)
      .value("Hybrid", OperatorClass::Hybrid)
      .value("GeneralizedHybrid", OperatorClass::GeneralizedHybrid)
      .value("QuasiNonexpansive", OperatorClass::QuasiNonexpansive);

  py::class_<SamplerOptions>(m, "SamplerOptions")
      .def(py::init([](double fallback_halfwidth, int attempt_cap) {
             return SamplerOptions{fallback_halfwidth, attempt_cap};
           }),
           py::arg("fallback_halfwidth") = 10.0, py::arg("attempt_cap") = 100)
      .def_readwrite("fallback_halfwidth", &SamplerOptions::fallback_halfwidth)
      .def_readwrite("attempt_cap", &SamplerOptions::attempt_cap);

  py::class_<ClassReport>(m, "ClassReport")
      .def_readonly("class_name", &ClassReport::class_name)
      .def_readonly("pairs_tested", &ClassReport::pairs_tested)
      .def_readonly("worst_residual", &ClassReport::worst_residual)
      .def_readonly("worst_violation", &ClassReport::worst_violation)
      .def_readonly("consistent", &ClassReport::consistent)
      .def_readonly("witness", &ClassReport::witness)
      .def("__repr__", [](const ClassReport& r) {
        return "ClassReport(" + r.class_name +
               (r.consistent ? ", consistent)" : ", violated)");
      });

  m.def("class_residual", &class_residual, py::arg("mapping"), py::arg("cls"),
        py::arg("x"), py::arg("y"), py::arg("alpha") = 0.0,
        py::arg("beta") = 0.0);
  m.def("classify", &classify, py::arg("mapping"), py::arg("cls"),
        py::arg("seed"), py::arg("n_pairs"), py::arg("tol"),
        py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
        py::arg("sampler") = SamplerOptions{});
  m.def("quasi_nonexpansive_report", &quasi_nonexpansive_report,
        py::arg("mapping"), py::arg("fixed_point"), py::arg("seed"),
        py::arg("n_points"), py::arg("tol"),
        py::arg("sampler") = SamplerOptions{});

  // ----------------------------------------------------------- bifunctions
  py::enum_<BifunctionFamily>(m, "BifunctionFamily")
      .value("Zero", BifunctionFamily::Zero)
      .value("AffineVI", BifunctionFamily::AffineVI)
      .value("ConvexGap", BifunctionFamily::ConvexGap)
      .value("Custom", BifunctionFamily::Custom);

  py::class_<QuadraticForm>(m, "QuadraticForm")
      .def(py::init([](Eigen::MatrixXd Q, Vector c) {
             return QuadraticForm{std::move(Q), std::move(c)};
           }),
           py::arg("Q"), py::arg("c"))
      .def_static("norm_square", &QuadraticForm::norm_square, py::arg("dim"))
      .def("eval", &QuadraticForm::eval, py::arg("x"))
      .def("gradient", &QuadraticForm::gradient, py::arg("x"))
      .def("smoothness", &QuadraticForm::smoothness);

  py::class_<Bifunction>(m, "Bifunction")
      .def_static("zero", &Bifunction::zero, py::arg("domain"))
      .def_static("affine_vi", &Bifunction::affine_vi, py::arg("matrix"),
                  py::arg("offset"), py::arg("domain"))
      .def_static("convex_gap", &Bifunction::convex_gap, py::arg("g"),
                  py::arg("domain"))
      .def_static("custom", &Bifunction::custom, py::arg("evaluate"),
                  py::arg("domain"))
      .def_property_readonly("family", &Bifunction::family)
      .def_property_readonly("domain", &Bifunction::domain)
      .def("eval", &Bifunction::eval, py::arg("x"), py::arg("y"));

  py::class_<AxiomCheck>(m, "AxiomCheck")
      .def_readonly("axiom", &AxiomCheck::axiom)
      .def_readonly("pass_", &AxiomCheck::pass)
      .def_readonly("worst", &AxiomCheck::worst)
      .def_readonly("witness", &AxiomCheck::witness);

  py::class_<AxiomReport>(m, "AxiomReport")
      .def_readonly("checks", &AxiomReport::checks)
      .def_readonly("all_pass", &AxiomReport::all_pass)
      .def_readonly("samples", &AxiomReport::samples);

  m.def("check_axioms", &check_axioms, py::arg("bifunction"), py::arg("seed"),
        py::arg("n_samples"),
        py::arg("t_grid") = std::vector<double>{0.5, 0.1, 0.01, 0.001},
        py::arg("tol") = 1e-10, py::arg("sampler") = SamplerOptions{});

  // ----------------------------------------------------------- resolvent
  py::enum_<ResolventStrategy>(m, "ResolventStrategy")
      .value("Auto", ResolventStrategy::Auto)
      .value("ClosedFormLinear", ResolventStrategy::ClosedFormLinear)
      .value("ProjectedFixedPoint", ResolventStrategy::ProjectedFixedPoint)
      .value("ProxGradient", ResolventStrategy::ProxGradient);

  py::class_<ResolventResult>(m, "ResolventResult")
      .def_readonly("z", &ResolventResult::z)
      .def_readonly("achieved_residual", &ResolventResult::achieved_residual)
      .def_readonly("inner_iterations", &ResolventResult::inner_iterations)
      .def_readonly("strategy_used", &ResolventResult::strategy_used)
      .def_readonly("converged", &ResolventResult::converged);

  m.def(
      "resolvent",
      [](const Bifunction& f, const ConvexSet& set, double r, const Vector& x,
         ResolventStrategy strategy, std::optional<double> step, long cap,
         double tol, std::optional<Vector> inner_start, long verify_samples,
         std::uint64_t verify_seed) {
        ResolventRequest req{f, set, r, x, strategy};
        req.inner.step = step;
        req.inner.cap = cap;
        req.inner.tol = tol;
        req.inner_start = std::move(inner_start);
        req.verify.n_samples = verify_samples;
        req.verify.seed = verify_seed;
        return resolvent(req);
      },
      py::arg("bifunction"), py::arg("set"), py::arg("r"), py::arg("x"),
      py::arg("strategy") = ResolventStrategy::Auto,
      py::arg("step") = std::nullopt, py::arg("cap") = defaults::kInnerCap,
      py::arg("tol") = defaults::kInnerTol,
      py::arg("inner_start") = std::nullopt, py::arg("verify_samples") = 256,
      py::arg("verify_seed") = 0);

  m.def("resolvent_residual", &resolvent_residual, py::arg("bifunction"),
        py::arg("set"), py::arg("r"), py::arg("x"), py::arg("z"),
        py::arg("seed"), py::arg("n_samples"),
        py::arg("sampler") = SamplerOptions{});
  m.def("ep_membership", &ep_membership, py::arg("bifunction"), py::arg("set"),
        py::arg("z"), py::arg("seed"), py::arg("n_samples"), py::arg("tol"),
        py::arg("sampler") = SamplerOptions{});

  // ----------------------------------------------------------- schedules
  py::enum_<SchemeKind>(m, "SchemeKind")
      .value("Mann", SchemeKind::Mann)
      .value("Ishikawa", SchemeKind::Ishikawa)
      .value("TadaTakahashi", SchemeKind::TadaTakahashi)
      .value("ResolventIshikawa", SchemeKind::ResolventIshikawa)
      .value("ProjectionIshikawa", SchemeKind::ProjectionIshikawa)
      .value("ResolventIshikawaFullStep",
             SchemeKind::ResolventIshikawaFullStep);

  py::class_<SequenceSpec>(m, "SequenceSpec")
      .def_static("constant", &SequenceSpec::constant, py::arg("value"))
      .def_static("harmonic", &SequenceSpec::harmonic, py::arg("base"),
                  py::arg("coeff"))
      .def_static("geometric", &SequenceSpec::geometric, py::arg("base"),
                  py::arg("coeff"), py::arg("ratio"))
      .def("eval", &SequenceSpec::eval, py::arg("n"));

  py::class_<ScheduleBounds>(m, "ScheduleBounds")
      .def(py::init([](double alpha_low, double beta_low, double beta_high,
                       double r_low) {
             return ScheduleBounds{alpha_low, beta_low, beta_high, r_low};
           }),
           py::arg("alpha_low") = 0.01, py::arg("beta_low") = 0.01,
           py::arg("beta_high") = 0.99, py::arg("r_low") = 1e-6)
      .def_readwrite("alpha_low", &ScheduleBounds::alpha_low)
      .def_readwrite("beta_low", &ScheduleBounds::beta_low)
      .def_readwrite("beta_high", &ScheduleBounds::beta_high)
      .def_readwrite("r_low", &ScheduleBounds::r_low);

  py::class_<Schedule>(m, "Schedule")
      .def(py::init([](SequenceSpec alpha, SequenceSpec beta, SequenceSpec r,
                       ScheduleBounds bounds) {
             return Schedule{alpha, beta, r, bounds};
           }),
           py::arg("alpha") = SequenceSpec::constant(0.5),
           py::arg("beta") = SequenceSpec::constant(0.5),
           py::arg("r") = SequenceSpec::constant(1.0),
           py::arg("bounds") = ScheduleBounds{})
      .def_readwrite("alpha", &Schedule::alpha)
      .def_readwrite("beta", &Schedule::beta)
      .def_readwrite("r", &Schedule::r)
      .def_readwrite("bounds", &Schedule::bounds);

  py::class_<ScheduleViolation>(m, "ScheduleViolation")
      .def_readonly("sequence", &ScheduleViolation::sequence)
      .def_readonly("index", &ScheduleViolation::index)
      .def_readonly("value", &ScheduleViolation::value)
      .def_readonly("condition", &ScheduleViolation::condition);

  m.def("find_schedule_violation", &find_schedule_violation,
        py::arg("schedule"), py::arg("horizon"),
        py::arg("scheme") = SchemeKind::ResolventIshikawa);
  m.def(
      "validate_schedule",
      [](const Schedule& s, long horizon, SchemeKind scheme) {
        ValidatedSchedule v = validate_schedule(s, horizon, scheme);
        return v.advisories();
      },
      "Validates and returns any advisories; raises ScheduleError on "
      "violation.",
      py::arg("schedule"), py::arg("horizon"),
      py::arg("scheme") = SchemeKind::ResolventIshikawa);

  // ----------------------------------------------------------- schemes
  py::class_<Problem>(m, "Problem")
      .def(py::init([](ConvexSet set, Mapping mapping, Bifunction bifunction,
                       std::optional<Vector> known_solution,
                       std::optional<ConvexSet> known_solution_set) {
             return Problem{std::move(set), std::move(mapping),
                            std::move(bifunction), std::move(known_solution),
                            std::move(known_solution_set)};
           }),
           py::arg("set"), py::arg("mapping"), py::arg("bifunction"),
           py::arg("known_solution") = std::nullopt,
           py::arg("known_solution_set") = std::nullopt)
      .def_readonly("set", &Problem::set)
      .def_readonly("mapping", &Problem::mapping)
      .def_readonly("bifunction", &Problem::bifunction)
      .def_readonly("known_solution", &Problem::known_solution)
      .def_readonly("known_solution_set", &Problem::known_solution_set);

  py::class_<StopRule>(m, "StopRule")
      .def(py::init([](long max_iter, double residual_tol) {
             return StopRule{max_iter, residual_tol};
           }),
           py::arg("max_iter") = 1000, py::arg("residual_tol") = 1e-6)
      .def_readwrite("max_iter", &StopRule::max_iter)
      .def_readwrite("residual_tol", &StopRule::residual_tol);

  py::enum_<TerminalStatus>(m, "TerminalStatus")
      .value("Converged", TerminalStatus::Converged)
      .value("MaxIter", TerminalStatus::MaxIter)
      .value("InnerSolverFailure", TerminalStatus::InnerSolverFailure);

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("n", &TraceRecord::n)
      .def_readonly("x", &TraceRecord::x)
      .def_readonly("u", &TraceRecord::u)
      .def_readonly("y", &TraceRecord::y)
      .def_readonly("alpha", &TraceRecord::alpha)
      .def_readonly("beta", &TraceRecord::beta)
      .def_readonly("r", &TraceRecord::r)
      .def_readonly("res_x_su", &TraceRecord::res_x_su)
      .def_readonly("res_y_x", &TraceRecord::res_y_x)
      .def_readonly("res_x_u", &TraceRecord::res_x_u)
      .def_readonly("res_u_su", &TraceRecord::res_u_su)
      .def_readonly("dist_q", &TraceRecord::dist_q);

  py::class_<Trace>(m, "Trace")
      .def_readonly("scheme", &Trace::scheme)
      .def_readonly("records", &Trace::records)
      .def_readonly("final_x", &Trace::final_x)
      .def_readonly("status", &Trace::status)
      .def_readonly("failure_detail", &Trace::failure_detail)
      .def("__len__", [](const Trace& t) { return t.records.size(); });

  m.def(
      "run",
      [](const Problem& p, SchemeKind scheme, const Schedule& schedule,
         const StopRule& stop, const Vector& x1, double inner_tol,
         long inner_cap, std::uint64_t seed) {
        RunOptions opt;
        opt.inner.tol = inner_tol;
        opt.inner.cap = inner_cap;
        opt.seed = seed;
        return run(p, scheme, schedule, stop, x1, opt);
      },
      py::arg("problem"), py::arg("scheme"), py::arg("schedule"),
      py::arg("stop"), py::arg("x1"),
      py::arg("inner_tol") = defaults::kInnerTol,
      py::arg("inner_cap") = defaults::kInnerCap, py::arg("seed") = 0);

  py::class_<CompareRow>(m, "CompareRow")
      .def_readonly("scheme", &CompareRow::scheme)
      .def_readonly("ran", &CompareRow::ran)
      .def_readonly("status", &CompareRow::status)
      .def_readonly("iterations", &CompareRow::iterations)
      .def_readonly("final_res_x_su", &CompareRow::final_res_x_su)
      .def_readonly("final_res_y_x", &CompareRow::final_res_y_x)
      .def_readonly("final_res_x_u", &CompareRow::final_res_x_u)
      .def_readonly("final_res_u_su", &CompareRow::final_res_u_su)
      .def_readonly("final_dist", &CompareRow::final_dist)
      .def_readonly("error", &CompareRow::error);

  m.def(
      "compare",
      [](const Problem& p, const std::vector<SchemeKind>& schemes,
         const Schedule& schedule, const StopRule& stop, const Vector& x1,
         double inner_tol, std::uint64_t seed) {
        RunOptions opt;
        opt.inner.tol = inner_tol;
        opt.seed = seed;
        return compare(p, schemes, schedule, stop, x1, opt);
      },
      py::arg("problem"), py::arg("schemes"), py::arg("schedule"),
      py::arg("stop"), py::arg("x1"),
      py::arg("inner_tol") = defaults::kInnerTol, py::arg("seed") = 0);

  // ----------------------------------------------------------- diagnostics
  py::class_<CheckEntry>(m, "CheckEntry")
      .def_readonly("name", &CheckEntry::name)
      .def_readonly("pass_", &CheckEntry::pass)
      .def_readonly("worst_index", &CheckEntry::worst_index)
      .def_readonly("worst_margin", &CheckEntry::worst_margin)
      .def_readonly("tol", &CheckEntry::tol)
      .def_readonly("detail", &CheckEntry::detail);

  py::class_<CertificateReport>(m, "CertificateReport")
      .def_readonly("checks", &CertificateReport::checks)
      .def_readonly("verdict", &CertificateReport::verdict);

  py::class_<CertifyOptions>(m, "CertifyOptions")
      .def(py::init<>())
      .def_readwrite("fejer_tol", &CertifyOptions::fejer_tol)
      .def_readwrite("descent_tol", &CertifyOptions::descent_tol)
      .def_readwrite("contraction_tol", &CertifyOptions::contraction_tol)
      .def_readwrite("residual_tol", &CertifyOptions::residual_tol)
      .def_readwrite("residual_window", &CertifyOptions::residual_window)
      .def_readwrite("limit_tol", &CertifyOptions::limit_tol)
      .def_readwrite("tail_fraction", &CertifyOptions::tail_fraction)
      .def_readwrite("cluster_radius", &CertifyOptions::cluster_radius)
      .def_readwrite("projection_tol", &CertifyOptions::projection_tol)
      .def_readwrite("limit_point_tol", &CertifyOptions::limit_point_tol)
      .def_readwrite("seed", &CertifyOptions::seed)
      .def_readwrite("membership_samples", &CertifyOptions::membership_samples);

  m.def("fejer_check", &fejer_check, py::arg("trace"), py::arg("q"),
        py::arg("tol"));
  m.def("descent_check", &descent_check, py::arg("trace"), py::arg("q"),
        py::arg("tol"));
  m.def("resolvent_contraction_check", &resolvent_contraction_check,
        py::arg("trace"), py::arg("q"), py::arg("tol"));
  m.def("residual_decay", &residual_decay, py::arg("trace"), py::arg("tol"),
        py::arg("window"));
  m.def("limit_existence_check", &limit_existence_check, py::arg("trace"),
        py::arg("q"), py::arg("tail_fraction"), py::arg("tol"));
  m.def("accumulation_points", &accumulation_points, py::arg("trace"),
        py::arg("cluster_radius") = 1e-3, py::arg("tail_fraction") = 0.2);
  m.def("certify", &certify, py::arg("trace"), py::arg("problem"),
        py::arg("options") = CertifyOptions{});

  // ----------------------------------------------------------- serialization
  m.def("trace_to_csv", &trace_to_csv, py::arg("trace"));
  m.def("trace_to_plotdata_csv", &trace_to_plotdata_csv, py::arg("trace"));
  m.def(
      "trace_to_json",
      [](const Trace& t) { return to_json(t).dump(2); },
      py::arg("trace"));
  m.def(
      "trace_from_json",
      [](const std::string& text) { return trace_from_json(parse_json(text)); },
      py::arg("text"));
  m.def(
      "problem_to_json",
      [](const Problem& p) { return to_json(p).dump(2); },
      py::arg("problem"));
  m.def(
      "problem_from_json",
      [](const std::string& text) {
        return problem_from_json(parse_json(text));
      },
      py::arg("text"));
}
