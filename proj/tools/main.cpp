#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "epfp/classifier.hpp"
#include "epfp/diagnostics.hpp"
#include "epfp/serialize.hpp"
#include "epfp/trace_io.hpp"

namespace fs = std::filesystem;
using epfp::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSpecError = 1;
constexpr int kExitMaxIter = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitViolation = 4;

void emit_error(const std::string& kind, const std::string& message,
                const Json& extra = Json::object()) {
  Json j;
  j["error"] = message;
  j["kind"] = kind;
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    j[it.key()] = it.value();
  }
  std::cerr << j.dump() << "\n";
}

Json load_spec(const std::string& path) {
  return epfp::parse_json(epfp::read_file(path));
}

std::vector<double> parse_coords(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    out.push_back(std::stod(token));
  }
  return out;
}

struct CommonFlags {
  std::string spec_path;
  std::string out_dir;
  std::optional<long> seed;
  std::optional<long> max_iter;
  std::optional<double> tol;
  std::string format;
};

void write_run_outputs(const epfp::ExperimentSpec& spec,
                       const epfp::Trace& trace, const fs::path& out_dir) {
  std::vector<std::string> outputs = spec.outputs;
  fs::create_directories(out_dir);
  for (const std::string& o : outputs) {
    if (o == "trace-csv") {
      epfp::write_file_atomic(out_dir / "trace.csv",
                              epfp::trace_to_csv(trace));
    } else if (o == "trace-json") {
      epfp::write_file_atomic(out_dir / "trace.json",
                              epfp::to_json(trace).dump(2) + "\n");
    } else if (o == "plotdata-csv") {
      epfp::write_file_atomic(out_dir / "plotdata.csv",
                              epfp::trace_to_plotdata_csv(trace));
    } else if (o == "report-json") {
      epfp::CertifyOptions copt;
      copt.seed = spec.seed;
      copt.limit_point_tol = 10.0 * spec.stop.residual_tol;
      epfp::CertificateReport report =
          epfp::certify(trace, spec.problem, copt);
      epfp::write_file_atomic(out_dir / "report.json",
                              epfp::to_json(report).dump(2) + "\n");
    }
  }
}

int cmd_run(const CommonFlags& flags) {
  epfp::ExperimentSpec spec = epfp::experiment_from_json(load_spec(flags.spec_path));
  if (flags.seed) spec.seed = static_cast<std::uint64_t>(*flags.seed);
  if (flags.max_iter) spec.stop.max_iter = *flags.max_iter;
  if (flags.tol) spec.stop.residual_tol = *flags.tol;
  if (!flags.format.empty()) spec.outputs = {"trace-" + flags.format};

  epfp::RunOptions opt;
  opt.seed = spec.seed;
  epfp::Trace trace = epfp::run(spec.problem, spec.scheme, spec.schedule,
                                spec.stop, spec.x1, opt);
  write_run_outputs(spec, trace, flags.out_dir);

  switch (trace.status) {
    case epfp::TerminalStatus::Converged:
      return kExitOk;
    case epfp::TerminalStatus::MaxIter:
      emit_error("max_iter", "run stopped at the iteration cap");
      return kExitMaxIter;
    case epfp::TerminalStatus::InnerSolverFailure:
      emit_error("solver", trace.failure_detail);
      return kExitSolverFailure;
  }
  return kExitOk;
}

int cmd_compare(const CommonFlags& flags) {
  epfp::CompareSpec spec = epfp::compare_from_json(load_spec(flags.spec_path));
  if (flags.seed) spec.seed = static_cast<std::uint64_t>(*flags.seed);
  if (flags.max_iter) spec.stop.max_iter = *flags.max_iter;
  if (flags.tol) spec.stop.residual_tol = *flags.tol;

  epfp::RunOptions opt;
  opt.seed = spec.seed;
  std::vector<epfp::CompareRow> rows = epfp::compare(
      spec.problem, spec.schemes, spec.schedule, spec.stop, spec.x1, opt);
  std::vector<std::optional<epfp::Trace>> traces = epfp::compare_traces(
      spec.problem, spec.schemes, spec.schedule, spec.stop, spec.x1, opt);

  fs::path out_dir(flags.out_dir);
  fs::create_directories(out_dir);
  epfp::write_file_atomic(out_dir / "comparison.csv",
                          epfp::compare_to_csv(rows));
  epfp::write_file_atomic(out_dir / "comparison.json",
                          epfp::to_json(rows).dump(2) + "\n");
  for (size_t i = 0; i < traces.size(); ++i) {
    if (!traces[i]) continue;
    std::string name = "trace_" + epfp::scheme_name(spec.schemes[i]) + ".csv";
    epfp::write_file_atomic(out_dir / name, epfp::trace_to_csv(*traces[i]));
  }
  std::cout << epfp::to_json(rows).dump(2) << "\n";
  return kExitOk;
}

int cmd_check_mapping(const CommonFlags& flags) {
  epfp::MappingCheckSpec spec =
      epfp::mapping_check_from_json(load_spec(flags.spec_path));
  if (flags.seed) spec.seed = static_cast<std::uint64_t>(*flags.seed);
  if (flags.tol) spec.tol = *flags.tol;

  Json reports = Json::array();
  bool all_consistent = true;
  for (const auto& entry : spec.classes) {
    epfp::ClassReport report =
        entry.cls == epfp::OperatorClass::QuasiNonexpansive
            ? epfp::quasi_nonexpansive_report(spec.mapping, *entry.fixed_point,
                                              spec.seed, spec.n_pairs,
                                              spec.tol, spec.sampler)
            : epfp::classify(spec.mapping, entry.cls, spec.seed, spec.n_pairs,
                             spec.tol, entry.alpha, entry.beta, spec.sampler);
    all_consistent = all_consistent && report.consistent;
    reports.push_back(epfp::to_json(report));
  }
  std::cout << reports.dump(2) << "\n";
  return all_consistent ? kExitOk : kExitViolation;
}

int cmd_check_bifunction(const CommonFlags& flags) {
  epfp::BifunctionCheckSpec spec =
      epfp::bifunction_check_from_json(load_spec(flags.spec_path));
  if (flags.seed) spec.seed = static_cast<std::uint64_t>(*flags.seed);
  if (flags.tol) spec.tol = *flags.tol;

  epfp::AxiomReport report = epfp::check_axioms(
      spec.bifunction, spec.seed, spec.n_samples, spec.t_grid, spec.tol,
      spec.sampler);
  std::cout << epfp::to_json(report).dump(2) << "\n";
  return report.all_pass ? kExitOk : kExitViolation;
}

int cmd_resolvent(const CommonFlags& flags, std::optional<double> r_flag,
                  const std::string& x_flag) {
  epfp::ResolventSpec spec =
      epfp::resolvent_spec_from_json(load_spec(flags.spec_path));
  if (r_flag) spec.r = *r_flag;
  if (!x_flag.empty()) spec.x = epfp::Vector(parse_coords(x_flag));
  if (flags.seed) spec.verify.seed = static_cast<std::uint64_t>(*flags.seed);

  epfp::ResolventRequest req{spec.bifunction, spec.set, spec.r, spec.x,
                             spec.strategy, spec.inner, std::nullopt,
                             spec.verify};
  epfp::ResolventResult result = epfp::resolvent(req);
  std::cout << epfp::to_json(result).dump(2) << "\n";
  if (!result.converged) {
    emit_error("solver", "resolvent inner solver exhausted its cap");
    return kExitSolverFailure;
  }
  return kExitOk;
}

int cmd_certify(const CommonFlags& flags, const std::string& trace_path) {
  epfp::CertifySpec spec =
      epfp::certify_spec_from_json(load_spec(flags.spec_path));
  if (flags.seed) {
    spec.options.seed = static_cast<std::uint64_t>(*flags.seed);
  }
  epfp::Trace trace =
      epfp::trace_from_json(epfp::parse_json(epfp::read_file(trace_path)));
  epfp::CertificateReport report =
      epfp::certify(trace, spec.problem, spec.options);
  std::string rendered = epfp::to_json(report).dump(2) + "\n";
  if (!flags.out_dir.empty()) {
    fs::path out(flags.out_dir);
    fs::create_directories(out.parent_path().empty() ? "." : out.parent_path());
    epfp::write_file_atomic(out, rendered);
  }
  std::cout << rendered;
  return report.verdict ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "epfp - equilibrium-problem / fixed-point iteration toolkit: runs "
      "resolvent-based Ishikawa-type schemes on R^n problems, audits mapping "
      "and bifunction classes, and certifies convergence traces"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::optional<double> r_flag;
  std::string x_flag;
  std::string trace_path;

  auto add_common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--spec", flags.spec_path, "spec file (JSON)")->required();
    if (with_out) sub->add_option("--out", flags.out_dir, "output directory");
    sub->add_option("--seed", flags.seed, "override the spec seed");
    sub->add_option("--max-iter", flags.max_iter, "override stop.max_iter");
    sub->add_option("--tol", flags.tol, "override the tolerance");
    sub->add_option("--format", flags.format, "trace output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* run = app.add_subcommand("run", "run one scheme from a spec file");
  add_common(run, true);
  run->get_option("--out")->required();

  CLI::App* cmp = app.add_subcommand("compare", "run several schemes and tabulate");
  add_common(cmp, true);
  cmp->get_option("--out")->required();

  CLI::App* chk_map =
      app.add_subcommand("check-mapping", "sampled operator-class audit");
  add_common(chk_map, false);

  CLI::App* chk_bif =
      app.add_subcommand("check-bifunction", "sampled bifunction-axiom audit");
  add_common(chk_bif, false);

  CLI::App* res = app.add_subcommand("resolvent", "apply the resolvent once");
  add_common(res, false);
  res->add_option("--r", r_flag, "resolvent parameter r > 0");
  res->add_option("--x", x_flag, "input point, comma-separated coordinates");

  CLI::App* cert =
      app.add_subcommand("certify", "apply the diagnostics suite to a trace");
  add_common(cert, true);
  cert->add_option("--trace", trace_path, "trace file (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(flags);
    if (cmp->parsed()) return cmd_compare(flags);
    if (chk_map->parsed()) return cmd_check_mapping(flags);
    if (chk_bif->parsed()) return cmd_check_bifunction(flags);
    if (res->parsed()) return cmd_resolvent(flags, r_flag, x_flag);
    if (cert->parsed()) return cmd_certify(flags, trace_path);
  } catch (const epfp::ScheduleError& e) {
    emit_error("schedule", e.what(),
               Json{{"sequence", e.violation.sequence},
                    {"index", e.violation.index},
                    {"condition", e.violation.condition}});
    return kExitSpecError;
  } catch (const epfp::SolverError& e) {
    emit_error("solver", e.what());
    return kExitSolverFailure;
  } catch (const epfp::ProjectionError& e) {
    emit_error("solver", e.what());
    return kExitSolverFailure;
  } catch (const epfp::SpecError& e) {
    emit_error("spec", e.what());
    return kExitSpecError;
  } catch (const epfp::Error& e) {
    emit_error("spec", e.what());
    return kExitSpecError;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kExitSpecError;
  }
  return kExitSpecError;
}
