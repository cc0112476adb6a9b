#include "epfp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epfp {

namespace {

std::vector<Vector> iterate_series(const Trace& trace) {
  std::vector<Vector> xs;
  xs.reserve(trace.records.size() + 1);
  for (const auto& rec : trace.records) xs.push_back(rec.x);
  xs.push_back(trace.final_x);
  return xs;
}

CheckEntry make_entry(std::string name, double worst, long worst_index,
                      double tol) {
  CheckEntry e;
  e.name = std::move(name);
  e.worst_margin = worst;
  e.worst_index = worst_index;
  e.tol = tol;
  e.pass = worst <= tol;
  return e;
}

}  // namespace

CheckEntry fejer_check(const Trace& trace, const Vector& q, double tol) {
  std::vector<Vector> xs = iterate_series(trace);
  double worst = -std::numeric_limits<double>::infinity();
  long worst_index = -1;
  for (size_t k = 0; k + 1 < xs.size(); ++k) {
    double margin = distance(xs[k + 1], q) - distance(xs[k], q);
    if (margin > worst) {
      worst = margin;
      worst_index = static_cast<long>(k + 1);
    }
  }
  return make_entry("fejer_monotone", worst, worst_index, tol);
}

CheckEntry descent_check(const Trace& trace, const Vector& q, double tol) {
  std::vector<Vector> xs = iterate_series(trace);
  double worst = -std::numeric_limits<double>::infinity();
  long worst_index = -1;
  for (size_t k = 0; k < trace.records.size(); ++k) {
    const TraceRecord& rec = trace.records[k];
    double dn = distance(xs[k], q);
    double dn1 = distance(xs[k + 1], q);
    double coeff = rec.alpha * rec.beta * (1.0 - rec.beta);
    double margin =
        dn1 * dn1 - (dn * dn - coeff * rec.res_x_su * rec.res_x_su);
    if (margin > worst) {
      worst = margin;
      worst_index = rec.n;
    }
  }
  return make_entry("quantified_descent", worst, worst_index, tol);
}

CheckEntry resolvent_contraction_check(const Trace& trace, const Vector& q,
                                       double tol) {
  double worst = -std::numeric_limits<double>::infinity();
  long worst_index = -1;
  for (const auto& rec : trace.records) {
    double margin = distance(rec.u, q) - distance(rec.x, q);
    if (margin > worst) {
      worst = margin;
      worst_index = rec.n;
    }
  }
  return make_entry("resolvent_contraction", worst, worst_index, tol);
}

CheckEntry residual_decay(const Trace& trace, double tol, long window) {
  if (trace.records.empty()) {
    throw ValidationError("residual_decay: trace is empty");
  }
  long n = static_cast<long>(trace.records.size());
  long start = std::max<long>(0, n - std::max<long>(window, 1));
  const char* names[4] = {"res_x_su", "res_y_x", "res_x_u", "res_u_su"};
  double worst = -std::numeric_limits<double>::infinity();
  long worst_index = -1;
  std::string worst_series;
  for (int s = 0; s < 4; ++s) {
    double best = std::numeric_limits<double>::infinity();
    long best_index = -1;
    for (long k = start; k < n; ++k) {
      const TraceRecord& rec = trace.records[static_cast<size_t>(k)];
      double v = s == 0   ? rec.res_x_su
                 : s == 1 ? rec.res_y_x
                 : s == 2 ? rec.res_x_u
                          : rec.res_u_su;
      if (v < best) {
        best = v;
        best_index = rec.n;
      }
    }
    // margin: minimum of the series over the window, compared against tol
    if (best > worst) {
      worst = best;
      worst_index = best_index;
      worst_series = names[s];
    }
  }
  CheckEntry e = make_entry("residual_decay", worst, worst_index, tol);
  e.detail = "slowest series: " + worst_series;
  return e;
}

CheckEntry limit_existence_check(const Trace& trace, const Vector& q,
                                 double tail_fraction, double tol) {
  std::vector<Vector> xs = iterate_series(trace);
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw ValidationError("limit_existence_check: tail_fraction in (0, 1]");
  }
  size_t count = std::max<size_t>(
      2, static_cast<size_t>(std::ceil(tail_fraction * xs.size())));
  size_t start = xs.size() > count ? xs.size() - count : 0;
  double variation = 0.0;
  for (size_t k = start; k + 1 < xs.size(); ++k) {
    variation += std::abs(distance(xs[k + 1], q) - distance(xs[k], q));
  }
  CheckEntry e = make_entry("limit_existence", variation,
                            static_cast<long>(start + 1), tol);
  e.detail = "total variation of ||x_n - q|| over the tail";
  return e;
}

ProjectionSeries projection_series(const Trace& trace, const ConvexSet& sol,
                                   bool over_u, long window) {
  ProjectionSeries series;
  if (over_u) {
    for (const auto& rec : trace.records) {
      series.points.push_back(sol.project(rec.u));
    }
  } else {
    for (const Vector& x : iterate_series(trace)) {
      series.points.push_back(sol.project(x));
    }
  }
  if (series.points.empty()) {
    throw ValidationError("projection_series: trace is empty");
  }
  for (size_t k = 0; k + 1 < series.points.size(); ++k) {
    series.gaps.push_back(distance(series.points[k + 1], series.points[k]));
  }
  size_t wstart = series.gaps.size() > static_cast<size_t>(window)
                      ? series.gaps.size() - static_cast<size_t>(window)
                      : 0;
  series.tail_gap = 0.0;
  for (size_t k = wstart; k < series.gaps.size(); ++k) {
    series.tail_gap = std::max(series.tail_gap, series.gaps[k]);
  }
  const Vector& last_source =
      over_u ? trace.records.back().u : trace.final_x;
  series.nearest_consistency =
      distance(last_source, series.points.back()) - sol.distance(last_source);
  return series;
}

CheckEntry projection_series_check(const ProjectionSeries& series,
                                   double tol) {
  double worst = std::max(series.tail_gap, series.nearest_consistency);
  CheckEntry e = make_entry("projection_series", worst, -1, tol);
  e.detail = "max of final-window gap and nearest-point consistency";
  return e;
}

std::vector<Vector> accumulation_points(const Trace& trace,
                                        double cluster_radius,
                                        double tail_fraction) {
  if (!(cluster_radius > 0.0)) {
    throw ValidationError("accumulation_points: cluster_radius must be > 0");
  }
  std::vector<Vector> xs = iterate_series(trace);
  size_t count = std::max<size_t>(
      2, static_cast<size_t>(std::ceil(tail_fraction * xs.size())));
  size_t start = xs.size() > count ? xs.size() - count : 0;
  std::vector<Vector> centers;
  for (size_t k = start; k < xs.size(); ++k) {
    bool assigned = false;
    for (const Vector& c : centers) {
      if (distance(xs[k], c) <= cluster_radius) {
        assigned = true;
        break;
      }
    }
    if (!assigned) centers.push_back(xs[k]);
  }
  return centers;
}

CertificateReport certify(const Trace& trace, const Problem& problem,
                          const CertifyOptions& opt) {
  CertificateReport report;
  auto add = [&](CheckEntry e) {
    report.verdict = report.verdict && e.pass;
    report.checks.push_back(std::move(e));
  };

  const bool resolvent_family =
      trace.scheme == SchemeKind::ResolventIshikawa ||
      trace.scheme == SchemeKind::ProjectionIshikawa ||
      trace.scheme == SchemeKind::ResolventIshikawaFullStep;

  if (problem.known_solution) {
    const Vector& q = *problem.known_solution;
    add(fejer_check(trace, q, opt.fejer_tol));
    if (resolvent_family) {
      add(descent_check(trace, q, opt.descent_tol));
    }
    add(resolvent_contraction_check(trace, q, opt.contraction_tol));
    add(limit_existence_check(trace, q, opt.tail_fraction, opt.limit_tol));
  }

  add(residual_decay(trace, opt.residual_tol, opt.residual_window));

  std::vector<Vector> clusters =
      accumulation_points(trace, opt.cluster_radius, opt.tail_fraction);
  {
    CheckEntry e;
    e.name = "single_accumulation_point";
    e.tol = 0.0;
    e.worst_margin = static_cast<double>(clusters.size()) - 1.0;
    e.pass = clusters.size() == 1;
    e.detail = std::to_string(clusters.size()) + " cluster(s)";
    add(e);
  }

  // certify the final iterate as a common element, at the stated tolerance;
  // norm convergence here is the finite-dimensional specialization
  {
    CheckEntry e;
    e.name = "limit_point_certification";
    e.tol = opt.limit_point_tol;
    try {
      double fp = fixed_point_residual(problem.mapping, trace.final_x);
      Vector member = problem.set.project(trace.final_x);
      bool ep = ep_membership(problem.bifunction, problem.set, member,
                              opt.seed, opt.membership_samples,
                              opt.limit_point_tol);
      e.worst_margin = fp;
      e.pass = fp <= opt.limit_point_tol && ep;
      e.detail = ep ? "sampled equilibrium membership holds"
                    : "sampled equilibrium membership fails";
    } catch (const Error& err) {
      e.pass = false;
      e.worst_margin = std::numeric_limits<double>::infinity();
      e.detail = err.what();
    }
    add(e);
  }

  if (problem.known_solution_set) {
    ProjectionSeries series =
        projection_series(trace, *problem.known_solution_set, false,
                          opt.residual_window);
    add(projection_series_check(series, opt.projection_tol));
    if (problem.known_solution_set->kind() == SetKind::Singleton &&
        clusters.size() == 1) {
      CheckEntry e;
      e.name = "projection_accumulation_agreement";
      e.tol = 1e-4;
      e.worst_margin = distance(series.points.back(), clusters.front());
      e.pass = e.worst_margin <= e.tol;
      add(e);
    }
  }

  return report;
}

}  // namespace epfp
