#include "epfp/scheme.hpp"

#include <cmath>

namespace epfp {

std::string terminal_status_name(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::Converged: return "converged";
    case TerminalStatus::MaxIter: return "max_iter";
    case TerminalStatus::InnerSolverFailure: return "inner_solver_failure";
  }
  return "unknown";
}

TerminalStatus terminal_status_from_name(const std::string& name) {
  for (TerminalStatus s : {TerminalStatus::Converged, TerminalStatus::MaxIter,
                           TerminalStatus::InnerSolverFailure}) {
    if (terminal_status_name(s) == name) return s;
  }
  throw SpecError("unknown terminal status: " + name);
}

void certify_known_solution(const Problem& p, const RunOptions& opt) {
  if (!p.known_solution) return;
  const Vector& q = *p.known_solution;
  double fp = fixed_point_residual(p.mapping, q);
  if (fp > opt.certify_tol) {
    throw ValidationError(
        "known_solution is not a fixed point of the mapping (residual " +
        std::to_string(fp) + ")");
  }
  if (!ep_membership(p.bifunction, p.set, q, opt.seed, opt.certify_samples,
                     opt.certify_tol)) {
    throw ValidationError(
        "known_solution fails sampled equilibrium membership");
  }
}

namespace {

struct StepOutcome {
  TraceRecord record;
  Vector x_next;
};

// The resolvent_ishikawa family shares one stepper so that the pinned
// variants (projection / full-step) reproduce it bit for bit.
StepOutcome ishikawa_resolvent_step(const Problem& p, const Vector& x, long n,
                                    double alpha, double beta, double r,
                                    const RunOptions& opt) {
  ResolventRequest req{p.bifunction, p.set, r, x};
  req.inner = opt.inner;
  ResolventResult res = solve_resolvent(req);
  if (!res.converged) {
    throw SolverError("resolvent did not converge at n=" + std::to_string(n) +
                      " (inner iterations " +
                      std::to_string(res.inner_iterations) + ")");
  }
  Vector u = res.z;
  Vector su = p.mapping.apply(u);
  Vector y = combine(beta, su, x);
  Vector sy = p.mapping.apply(y);
  Vector x_next = combine(alpha, sy, x);

  TraceRecord rec;
  rec.n = n;
  rec.x = x;
  rec.u = u;
  rec.y = y;
  rec.alpha = alpha;
  rec.beta = beta;
  rec.r = r;
  rec.res_x_su = distance(x, su);
  rec.res_y_x = distance(y, x);
  rec.res_x_u = distance(x, u);
  rec.res_u_su = distance(u, su);
  return {std::move(rec), std::move(x_next)};
}

StepOutcome mann_step(const Problem& p, const Vector& x, long n,
                      double alpha) {
  Vector sx = p.mapping.apply(x);
  Vector x_next = combine(alpha, x, sx);  // alpha x + (1-alpha) Sx

  TraceRecord rec;
  rec.n = n;
  rec.x = x;
  rec.u = x;
  rec.y = x;
  rec.alpha = alpha;
  rec.beta = 0.0;
  rec.r = 0.0;
  rec.res_x_su = distance(x, sx);
  rec.res_y_x = 0.0;
  rec.res_x_u = 0.0;
  rec.res_u_su = rec.res_x_su;
  return {std::move(rec), std::move(x_next)};
}

StepOutcome ishikawa_step(const Problem& p, const Vector& x, long n,
                          double alpha, double beta) {
  Vector sx = p.mapping.apply(x);
  Vector y = combine(beta, x, sx);  // beta x + (1-beta) Sx
  Vector sy = p.mapping.apply(y);
  Vector x_next = combine(alpha, x, sy);

  TraceRecord rec;
  rec.n = n;
  rec.x = x;
  rec.u = x;
  rec.y = y;
  rec.alpha = alpha;
  rec.beta = beta;
  rec.r = 0.0;
  rec.res_x_su = distance(x, sx);
  rec.res_y_x = distance(y, x);
  rec.res_x_u = 0.0;
  rec.res_u_su = rec.res_x_su;
  return {std::move(rec), std::move(x_next)};
}

StepOutcome tada_takahashi_step(const Problem& p, const Vector& x, long n,
                                double alpha, double r,
                                const RunOptions& opt) {
  ResolventRequest req{p.bifunction, p.set, r, x};
  req.inner = opt.inner;
  ResolventResult res = solve_resolvent(req);
  if (!res.converged) {
    throw SolverError("resolvent did not converge at n=" + std::to_string(n) +
                      " (inner iterations " +
                      std::to_string(res.inner_iterations) + ")");
  }
  Vector u = res.z;
  Vector su = p.mapping.apply(u);
  Vector x_next = combine(alpha, x, su);  // alpha x + (1-alpha) S u

  TraceRecord rec;
  rec.n = n;
  rec.x = x;
  rec.u = u;
  rec.y = u;
  rec.alpha = alpha;
  rec.beta = 0.0;
  rec.r = r;
  rec.res_x_su = distance(x, su);
  rec.res_y_x = distance(u, x);
  rec.res_x_u = distance(x, u);
  rec.res_u_su = distance(u, su);
  return {std::move(rec), std::move(x_next)};
}

}  // namespace

Trace run(const Problem& p, SchemeKind scheme, const Schedule& schedule,
          const StopRule& stop, const Vector& x1, const RunOptions& opt) {
  if (stop.max_iter < 1) throw ValidationError("run: max_iter must be >= 1");
  if (!(stop.residual_tol > 0.0)) {
    throw ValidationError("run: residual_tol must be > 0");
  }
  if (x1.dim() != p.set.dim()) {
    throw DimensionError("run: x1/problem dimension mismatch");
  }

  // scheme-pinned substitutions
  Problem problem = p;
  Schedule effective = schedule;
  if (scheme == SchemeKind::ProjectionIshikawa) {
    if (p.bifunction.family() != BifunctionFamily::Zero) {
      throw ValidationError(
          "projection_ishikawa requires the zero bifunction (its resolvent "
          "is the metric projection)");
    }
    effective.r = SequenceSpec::constant(1.0);
  }
  if (scheme == SchemeKind::ResolventIshikawaFullStep) {
    effective.alpha = SequenceSpec::constant(1.0);
  }

  ValidatedSchedule validated =
      validate_schedule(effective, stop.max_iter, scheme);
  certify_known_solution(problem, opt);

  Trace trace;
  trace.scheme = scheme;
  trace.final_x = x1;

  Vector x = x1;
  for (long n = 1; n <= stop.max_iter; ++n) {
    double alpha = validated.schedule().alpha.eval(n);
    double beta = validated.schedule().beta.eval(n);
    double r = validated.schedule().r.eval(n);

    StepOutcome out;
    try {
      out = [&]() -> StepOutcome {
        switch (scheme) {
          case SchemeKind::Mann:
            return mann_step(problem, x, n, alpha);
          case SchemeKind::Ishikawa:
            return ishikawa_step(problem, x, n, alpha, beta);
          case SchemeKind::TadaTakahashi:
            return tada_takahashi_step(problem, x, n, alpha, r, opt);
          case SchemeKind::ResolventIshikawa:
          case SchemeKind::ProjectionIshikawa:
          case SchemeKind::ResolventIshikawaFullStep:
            return ishikawa_resolvent_step(problem, x, n, alpha, beta, r,
                                           opt);
        }
        throw ValidationError("run: unknown scheme");
      }();
    } catch (const SolverError& e) {
      trace.status = TerminalStatus::InnerSolverFailure;
      trace.failure_detail = e.what();
      return trace;
    } catch (const ProjectionError& e) {
      trace.status = TerminalStatus::InnerSolverFailure;
      trace.failure_detail = e.what();
      return trace;
    }

    if (problem.known_solution) {
      out.record.dist_q = distance(out.record.x, *problem.known_solution);
    }
    trace.records.push_back(out.record);
    x = out.x_next;
    trace.final_x = x;

    if (std::max(out.record.res_x_su, out.record.res_x_u) <=
        stop.residual_tol) {
      trace.status = TerminalStatus::Converged;
      return trace;
    }
  }
  trace.status = TerminalStatus::MaxIter;
  return trace;
}

std::vector<std::optional<Trace>> compare_traces(
    const Problem& p, const std::vector<SchemeKind>& schemes,
    const Schedule& schedule, const StopRule& stop, const Vector& x1,
    const RunOptions& opt) {
  std::vector<std::optional<Trace>> traces;
  traces.reserve(schemes.size());
  for (SchemeKind scheme : schemes) {
    try {
      traces.push_back(run(p, scheme, schedule, stop, x1, opt));
    } catch (const Error&) {
      traces.push_back(std::nullopt);
    }
  }
  return traces;
}

std::vector<CompareRow> compare(const Problem& p,
                                const std::vector<SchemeKind>& schemes,
                                const Schedule& schedule, const StopRule& stop,
                                const Vector& x1, const RunOptions& opt) {
  std::vector<CompareRow> rows;
  rows.reserve(schemes.size());
  for (SchemeKind scheme : schemes) {
    CompareRow row;
    row.scheme = scheme;
    try {
      Trace t = run(p, scheme, schedule, stop, x1, opt);
      row.ran = true;
      row.status = t.status;
      row.iterations = static_cast<long>(t.records.size());
      if (!t.records.empty()) {
        const TraceRecord& last = t.records.back();
        row.final_res_x_su = last.res_x_su;
        row.final_res_y_x = last.res_y_x;
        row.final_res_x_u = last.res_x_u;
        row.final_res_u_su = last.res_u_su;
      }
      if (p.known_solution) {
        row.final_dist = distance(t.final_x, *p.known_solution);
      }
      if (t.status == TerminalStatus::InnerSolverFailure) {
        row.error = t.failure_detail;
      }
    } catch (const Error& e) {
      row.ran = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace epfp
