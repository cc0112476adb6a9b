#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epfp/bifunction.hpp"
#include "epfp/convex_set.hpp"
#include "epfp/mapping.hpp"
#include "epfp/resolvent.hpp"
#include "epfp/schedule.hpp"
#include "epfp/vector.hpp"

namespace epfp {

/// One common-element problem instance: find a point of F(S) that also solves
/// the equilibrium problem of f over E.
struct Problem {
  ConvexSet set;          // E
  Mapping mapping;        // S
  Bifunction bifunction;  // f
  /// Known member of F(S) ∩ EP(f), used by diagnostics; certified on use.
  std::optional<Vector> known_solution;
  /// The solution set itself when it has a computable projection.
  std::optional<ConvexSet> known_solution_set;
};

struct StopRule {
  long max_iter = 1000;
  /// Applied to max(||x_n - S u_n||, ||x_n - u_n||).
  double residual_tol = 1e-6;
};

struct TraceRecord {
  long n = 0;
  Vector x, u, y;
  double alpha = 0.0, beta = 0.0, r = 0.0;
  double res_x_su = 0.0;  // ||x_n - S u_n||
  double res_y_x = 0.0;   // ||y_n - x_n||
  double res_x_u = 0.0;   // ||x_n - u_n||
  double res_u_su = 0.0;  // ||u_n - S u_n||
  std::optional<double> dist_q;  // ||x_n - q|| when a known solution exists
};

enum class TerminalStatus { Converged, MaxIter, InnerSolverFailure };

std::string terminal_status_name(TerminalStatus s);
TerminalStatus terminal_status_from_name(const std::string& name);

struct Trace {
  SchemeKind scheme = SchemeKind::ResolventIshikawa;
  std::vector<TraceRecord> records;  // contiguous from n = 1
  Vector final_x;                    // iterate after the last recorded step
  TerminalStatus status = TerminalStatus::MaxIter;
  std::string failure_detail;        // set on InnerSolverFailure
};

struct RunOptions {
  InnerParams inner{};          // resolvent inner-solver knobs
  std::uint64_t seed = 0;       // feeds known-solution certification sampling
  long certify_samples = 256;
  double certify_tol = 1e-8;
};

/// Checks the problem invariants that are checkable: a declared known
/// solution must be a fixed point of S and pass sampled EP membership.
void certify_known_solution(const Problem& p, const RunOptions& opt);

/// Runs one scheme from x1 until the stop rule fires. The schedule is
/// validated for the scheme over max_iter terms before the first step.
Trace run(const Problem& p, SchemeKind scheme, const Schedule& schedule,
          const StopRule& stop, const Vector& x1,
          const RunOptions& opt = RunOptions{});

struct CompareRow {
  SchemeKind scheme = SchemeKind::ResolventIshikawa;
  bool ran = false;             // false when setup failed (see error)
  TerminalStatus status = TerminalStatus::MaxIter;
  long iterations = 0;
  double final_res_x_su = 0.0;
  double final_res_y_x = 0.0;
  double final_res_x_u = 0.0;
  double final_res_u_su = 0.0;
  std::optional<double> final_dist;  // distance of final iterate to q
  std::string error;
};

/// One run per scheme with shared start and schedule; per-scheme failures are
/// collected in the row rather than thrown.
std::vector<CompareRow> compare(const Problem& p,
                                const std::vector<SchemeKind>& schemes,
                                const Schedule& schedule, const StopRule& stop,
                                const Vector& x1,
                                const RunOptions& opt = RunOptions{});

/// The traces behind a compare table, keyed like its rows.
std::vector<std::optional<Trace>> compare_traces(
    const Problem& p, const std::vector<SchemeKind>& schemes,
    const Schedule& schedule, const StopRule& stop, const Vector& x1,
    const RunOptions& opt = RunOptions{});

}  // namespace epfp
