#pragma once

#include <string>
#include <vector>

#include "epfp/scheme.hpp"

namespace epfp {

/// One named inequality check over a finite trace. worst_margin is the
/// largest LHS - RHS excess observed (negative values mean slack); the check
/// passes iff worst_margin <= tol. All asymptotic statements are rendered as
/// finite-tail criteria and reported as such, never as proofs.
struct CheckEntry {
  std::string name;
  bool pass = true;
  long worst_index = -1;
  double worst_margin = 0.0;
  double tol = 0.0;
  std::string detail;
};

struct CertificateReport {
  std::vector<CheckEntry> checks;
  bool verdict = true;  // pass iff every check passes
};

/// ||x_{n+1} - q|| <= ||x_n - q|| + tol across the recorded run (final
/// iterate included). q must be a certified common solution.
CheckEntry fejer_check(const Trace& trace, const Vector& q, double tol);

/// Quantified descent ||x_{n+1}-q||^2 <= ||x_n-q||^2
///   - alpha_n beta_n (1-beta_n) ||x_n - S u_n||^2 + tol.
CheckEntry descent_check(const Trace& trace, const Vector& q, double tol);

/// ||u_n - q|| <= ||x_n - q|| + tol (the resolvent does not expand distances
/// to solutions).
CheckEntry resolvent_contraction_check(const Trace& trace, const Vector& q,
                                       double tol);

/// Each residual series must dip to tol somewhere in its last `window`
/// records.
CheckEntry residual_decay(const Trace& trace, double tol, long window);

/// Total variation of ||x_n - q|| over the final tail_fraction of the trace
/// must not exceed tol (finite surrogate for existence of the limit).
CheckEntry limit_existence_check(const Trace& trace, const Vector& q,
                                 double tail_fraction, double tol);

/// Projections of the iterates onto a candidate solution set.
struct ProjectionSeries {
  std::vector<Vector> points;   // p_n = project(sol, x_n), final iterate last
  std::vector<double> gaps;     // ||p_{n+1} - p_n||
  double tail_gap = 0.0;        // max gap over the final window
  /// ||x_N - p_N|| minus the set's own distance at x_N; checks that the
  /// projection really is the nearest point (two independent routes).
  double nearest_consistency = 0.0;
};

ProjectionSeries projection_series(const Trace& trace, const ConvexSet& sol,
                                   bool over_u = false, long window = 10);

CheckEntry projection_series_check(const ProjectionSeries& series, double tol);

/// Greedy clustering of the trace tail (records plus final iterate); a
/// convergent run yields exactly one cluster center.
std::vector<Vector> accumulation_points(const Trace& trace,
                                        double cluster_radius = 1e-3,
                                        double tail_fraction = 0.2);

struct CertifyOptions {
  double fejer_tol = 1e-8;
  double descent_tol = 1e-8;
  double contraction_tol = 1e-8;
  double residual_tol = 1e-6;
  long residual_window = 10;
  double limit_tol = 1e-5;
  double tail_fraction = 0.2;
  double cluster_radius = 1e-3;
  double projection_tol = 1e-6;
  /// Tolerance for certifying the final iterate as a common element
  /// (typically 10x the run's residual_tol).
  double limit_point_tol = 1e-5;
  std::uint64_t seed = 0;
  long membership_samples = 256;
};

/// Runs every applicable check for the trace against the problem's declared
/// knowledge and aggregates the verdict.
CertificateReport certify(const Trace& trace, const Problem& problem,
                          const CertifyOptions& opt = CertifyOptions{});

}  // namespace epfp
