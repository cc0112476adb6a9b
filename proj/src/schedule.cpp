#include "epfp/schedule.hpp"

#include <cmath>

namespace epfp {

std::string scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::Mann: return "mann";
    case SchemeKind::Ishikawa: return "ishikawa";
    case SchemeKind::TadaTakahashi: return "tada_takahashi";
    case SchemeKind::ResolventIshikawa: return "resolvent_ishikawa";
    case SchemeKind::ProjectionIshikawa: return "projection_ishikawa";
    case SchemeKind::ResolventIshikawaFullStep:
      return "resolvent_ishikawa_full_step";
  }
  return "unknown";
}

SchemeKind scheme_from_name(const std::string& name) {
  for (SchemeKind k :
       {SchemeKind::Mann, SchemeKind::Ishikawa, SchemeKind::TadaTakahashi,
        SchemeKind::ResolventIshikawa, SchemeKind::ProjectionIshikawa,
        SchemeKind::ResolventIshikawaFullStep}) {
    if (scheme_name(k) == name) return k;
  }
  throw SpecError("unknown scheme: " + name);
}

double SequenceSpec::eval(long n) const {
  switch (kind) {
    case Kind::Constant:
      return base;
    case Kind::Harmonic:
      return base + coeff / static_cast<double>(n);
    case Kind::Geometric:
      return base + coeff * std::pow(ratio, static_cast<double>(n));
  }
  return base;
}

SequenceSpec SequenceSpec::constant(double value) {
  return SequenceSpec{Kind::Constant, value, 0.0, 0.0};
}

SequenceSpec SequenceSpec::harmonic(double base, double coeff) {
  return SequenceSpec{Kind::Harmonic, base, coeff, 0.0};
}

SequenceSpec SequenceSpec::geometric(double base, double coeff, double ratio) {
  return SequenceSpec{Kind::Geometric, base, coeff, ratio};
}

namespace {

std::optional<ScheduleViolation> check_bounds(const ScheduleBounds& b,
                                              SchemeKind scheme) {
  const bool needs_alpha_floor = scheme != SchemeKind::Mann &&
                                 scheme != SchemeKind::Ishikawa;
  if (needs_alpha_floor && !(b.alpha_low > 0.0 && b.alpha_low <= 1.0)) {
    return ScheduleViolation{"bounds", 0, b.alpha_low,
                             "requires 0 < alpha_low <= 1"};
  }
  const bool uses_beta = scheme == SchemeKind::Ishikawa ||
                         scheme == SchemeKind::ResolventIshikawa ||
                         scheme == SchemeKind::ProjectionIshikawa ||
                         scheme == SchemeKind::ResolventIshikawaFullStep;
  if (uses_beta && scheme != SchemeKind::Ishikawa &&
      !(0.0 < b.beta_low && b.beta_low <= b.beta_high && b.beta_high < 1.0)) {
    return ScheduleViolation{
        "bounds", 0, b.beta_low,
        "requires 0 < beta_low <= beta_high < 1 so that "
        "liminf beta_n(1-beta_n) > 0"};
  }
  const bool uses_r = scheme == SchemeKind::TadaTakahashi ||
                      scheme == SchemeKind::ResolventIshikawa ||
                      scheme == SchemeKind::ResolventIshikawaFullStep;
  if (uses_r && !(b.r_low > 0.0)) {
    return ScheduleViolation{"bounds", 0, b.r_low,
                             "requires r_low > 0 so that liminf r_n > 0"};
  }
  return std::nullopt;
}

}  // namespace

std::optional<ScheduleViolation> find_schedule_violation(const Schedule& s,
                                                         long horizon,
                                                         SchemeKind scheme) {
  if (horizon < 1) {
    return ScheduleViolation{"bounds", 0, static_cast<double>(horizon),
                             "validation horizon must be >= 1"};
  }
  if (auto v = check_bounds(s.bounds, scheme)) return v;

  for (long n = 1; n <= horizon; ++n) {
    double a = s.alpha.eval(n);
    double b = s.beta.eval(n);
    double r = s.r.eval(n);
    switch (scheme) {
      case SchemeKind::Mann:
        if (!(a >= 0.0 && a <= 1.0)) {
          return ScheduleViolation{"alpha", n, a,
                                   "mann requires 0 <= alpha_n <= 1"};
        }
        break;
      case SchemeKind::Ishikawa:
        if (!(b >= 0.0 && b <= a && a <= 1.0)) {
          return ScheduleViolation{
              "beta", n, b, "ishikawa requires 0 <= beta_n <= alpha_n <= 1"};
        }
        break;
      case SchemeKind::TadaTakahashi:
        if (!(a >= s.bounds.alpha_low && a < 1.0)) {
          return ScheduleViolation{
              "alpha", n, a,
              "tada_takahashi requires alpha_n in [a, b] with 0 < a <= b < 1"};
        }
        if (!(r >= s.bounds.r_low)) {
          return ScheduleViolation{
              "r", n, r, "requires r_n >= r_low > 0 so that liminf r_n > 0"};
        }
        break;
      case SchemeKind::ResolventIshikawa:
      case SchemeKind::ProjectionIshikawa:
      case SchemeKind::ResolventIshikawaFullStep:
        if (!(a >= s.bounds.alpha_low && a <= 1.0)) {
          return ScheduleViolation{
              "alpha", n, a,
              "requires 0 < alpha_low <= alpha_n <= 1 for all n"};
        }
        if (!(b >= s.bounds.beta_low && b <= s.bounds.beta_high)) {
          return ScheduleViolation{
              "beta", n, b,
              "requires beta_n in [beta_low, beta_high] within (0,1) so that "
              "liminf beta_n(1-beta_n) > 0"};
        }
        if (scheme != SchemeKind::ProjectionIshikawa &&
            !(r >= s.bounds.r_low)) {
          return ScheduleViolation{
              "r", n, r, "requires r_n >= r_low > 0 so that liminf r_n > 0"};
        }
        break;
    }
  }
  return std::nullopt;
}

ValidatedSchedule validate_schedule(const Schedule& s, long horizon,
                                    SchemeKind scheme) {
  if (auto v = find_schedule_violation(s, horizon, scheme)) {
    throw ScheduleError("schedule rejected: sequence '" + v->sequence +
                            "' at n=" + std::to_string(v->index) + " (value " +
                            std::to_string(v->value) + "): " + v->condition,
                        *v);
  }

  std::vector<std::string> advisories;
  if (scheme == SchemeKind::Ishikawa) {
    // classic conditions beta_n -> 1 and sum (1-alpha_n)(1-beta_n) = inf are
    // not finitely decidable; report heuristics only
    bool nondecreasing = true;
    double partial_sum = 0.0;
    double prev = s.beta.eval(1);
    for (long n = 1; n <= horizon; ++n) {
      double a = s.alpha.eval(n);
      double b = s.beta.eval(n);
      nondecreasing = nondecreasing && b >= prev - 1e-15;
      prev = b;
      partial_sum += (1.0 - a) * (1.0 - b);
    }
    if (!nondecreasing || s.beta.eval(horizon) < 0.9) {
      advisories.push_back(
          "ishikawa: beta_n does not approach 1 monotonically over the "
          "horizon; the classic convergence condition is unverified");
    }
    if (partial_sum < 1.0) {
      advisories.push_back(
          "ishikawa: partial sums of (1-alpha_n)(1-beta_n) grew to " +
          std::to_string(partial_sum) +
          " over the horizon; divergence of the series is unverified");
    }
  }
  return ValidatedSchedule(s, horizon, scheme, std::move(advisories));
}

}  // namespace epfp
