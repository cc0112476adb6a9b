#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epfp/errors.hpp"

namespace epfp {

/// Iteration schemes runnable by the engine. The resolvent_ishikawa family
/// interleaves the equilibrium resolvent with two-level averaging of S;
/// projection_ishikawa is its zero-bifunction specialization (the resolvent
/// collapses to the metric projection, r_n forced to 1) and
/// resolvent_ishikawa_full_step pins alpha_n = 1 so the outer update applies
/// S directly to the averaged point.
enum class SchemeKind {
  Mann,
  Ishikawa,
  TadaTakahashi,
  ResolventIshikawa,
  ProjectionIshikawa,
  ResolventIshikawaFullStep,
};

std::string scheme_name(SchemeKind k);
SchemeKind scheme_from_name(const std::string& name);

/// Scalar sequence n -> value, n >= 1.
struct SequenceSpec {
  enum class Kind { Constant, Harmonic, Geometric };
  Kind kind = Kind::Constant;
  double base = 0.0;   // Constant: the value; otherwise additive base a
  double coeff = 0.0;  // b in a + b/n or a + b*ratio^n
  double ratio = 0.0;  // Geometric only

  double eval(long n) const;

  static SequenceSpec constant(double value);
  static SequenceSpec harmonic(double base, double coeff);
  static SequenceSpec geometric(double base, double coeff, double ratio);
};

struct ScheduleBounds {
  double alpha_low = 0.01;
  double beta_low = 0.01;
  double beta_high = 0.99;
  double r_low = 1e-6;
};

struct Schedule {
  SequenceSpec alpha = SequenceSpec::constant(0.5);
  SequenceSpec beta = SequenceSpec::constant(0.5);
  SequenceSpec r = SequenceSpec::constant(1.0);
  ScheduleBounds bounds{};
};

struct ScheduleViolation {
  std::string sequence;   // "alpha" | "beta" | "r" | "bounds"
  long index = 0;         // first offending n (0 for bounds violations)
  double value = 0.0;
  std::string condition;  // the hypothesis that failed
};

struct ScheduleError : Error {
  ScheduleError(const std::string& msg, ScheduleViolation v)
      : Error(msg), violation(std::move(v)) {}
  ScheduleViolation violation;
};

/// A schedule whose first `horizon` terms passed the scheme's hypotheses.
class ValidatedSchedule {
 public:
  const Schedule& schedule() const { return schedule_; }
  long horizon() const { return horizon_; }
  SchemeKind scheme() const { return scheme_; }
  /// Finite-horizon heuristics that could not be decided (advisory only).
  const std::vector<std::string>& advisories() const { return advisories_; }

 private:
  friend ValidatedSchedule validate_schedule(const Schedule&, long,
                                             SchemeKind);
  ValidatedSchedule(Schedule s, long horizon, SchemeKind scheme,
                    std::vector<std::string> advisories)
      : schedule_(std::move(s)),
        horizon_(horizon),
        scheme_(scheme),
        advisories_(std::move(advisories)) {}
  Schedule schedule_;
  long horizon_;
  SchemeKind scheme_;
  std::vector<std::string> advisories_;
};

/// Evaluates the first `horizon` terms against the scheme's hypotheses and
/// throws ScheduleError naming the violated condition and the offending index.
ValidatedSchedule validate_schedule(
    const Schedule& s, long horizon,
    SchemeKind scheme = SchemeKind::ResolventIshikawa);

/// Non-throwing form; nullopt means the schedule passed.
std::optional<ScheduleViolation> find_schedule_violation(
    const Schedule& s, long horizon,
    SchemeKind scheme = SchemeKind::ResolventIshikawa);

}  // namespace epfp
