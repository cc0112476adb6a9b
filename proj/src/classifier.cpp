#include "epfp/classifier.hpp"

#include <limits>

namespace epfp {

std::string operator_class_name(OperatorClass c) {
  switch (c) {
    case OperatorClass::FirmlyNonexpansive: return "firmly-nonexpansive";
    case OperatorClass::Nonexpansive: return "nonexpansive";
    case OperatorClass::Nonspreading: return "nonspreading";
    case OperatorClass::Hybrid: return "hybrid";
    case OperatorClass::GeneralizedHybrid: return "generalized-hybrid";
    case OperatorClass::QuasiNonexpansive: return "quasi-nonexpansive";
  }
  return "unknown";
}

double class_residual(const Mapping& S, OperatorClass cls, const Vector& x,
                      const Vector& y, double alpha, double beta) {
  Vector sx = S.apply(x);
  Vector sy = S.apply(y);
  double sxsy = inner(sx - sy, sx - sy);
  double xy = inner(x - y, x - y);
  double sxy = inner(sx - y, sx - y);
  double xsy = inner(x - sy, x - sy);
  switch (cls) {
    case OperatorClass::FirmlyNonexpansive:
      return sxsy - inner(x - y, sx - sy);
    case OperatorClass::Nonexpansive:
      return sxsy - xy;
    case OperatorClass::Nonspreading:
      return 2.0 * sxsy - sxy - xsy;
    case OperatorClass::Hybrid:
      return 3.0 * sxsy - xy - sxy - xsy;
    case OperatorClass::GeneralizedHybrid:
      return alpha * sxsy + (1.0 - alpha) * xsy - beta * sxy -
             (1.0 - beta) * xy;
    case OperatorClass::QuasiNonexpansive:
      // treats x as the declared fixed point p
      return norm(x - sy) - norm(x - y);
  }
  throw ValidationError("class_residual: unknown operator class");
}

namespace {

ClassReport run_pair_check(const Mapping& S, OperatorClass cls,
                           std::uint64_t seed, long n_pairs, double tol,
                           double alpha, double beta,
                           const SamplerOptions& sampler,
                           const std::optional<Vector>& fixed_first) {
  if (n_pairs < 1) {
    throw ValidationError("classify: n_pairs must be >= 1");
  }
  Rng rng(seed);
  ClassReport report;
  report.class_name = operator_class_name(cls);
  report.pairs_tested = n_pairs;
  double worst = -std::numeric_limits<double>::infinity();
  std::pair<Vector, Vector> worst_pair;
  for (long k = 0; k < n_pairs; ++k) {
    Vector x = fixed_first ? *fixed_first : sample_point(S.domain(), rng, sampler);
    Vector y = sample_point(S.domain(), rng, sampler);
    double res = class_residual(S, cls, x, y, alpha, beta);
    if (res > worst) {
      worst = res;
      worst_pair = {x, y};
    }
  }
  report.worst_residual = worst;
  report.worst_violation = worst - tol;
  report.consistent = worst <= tol;
  if (!report.consistent) report.witness = worst_pair;
  return report;
}

}  // namespace

ClassReport classify(const Mapping& S, OperatorClass cls, std::uint64_t seed,
                     long n_pairs, double tol, double alpha, double beta,
                     const SamplerOptions& sampler) {
  if (cls == OperatorClass::QuasiNonexpansive) {
    throw ValidationError(
        "classify: quasi-nonexpansive needs a fixed point; use "
        "quasi_nonexpansive_report");
  }
  return run_pair_check(S, cls, seed, n_pairs, tol, alpha, beta, sampler,
                        std::nullopt);
}

ClassReport quasi_nonexpansive_report(const Mapping& S, const Vector& p,
                                      std::uint64_t seed, long n_points,
                                      double tol,
                                      const SamplerOptions& sampler) {
  if (fixed_point_residual(S, p) > tol) {
    throw ValidationError(
        "quasi_nonexpansive_report: p is not a fixed point within tol");
  }
  return run_pair_check(S, OperatorClass::QuasiNonexpansive, seed, n_points,
                        tol, 0.0, 0.0, sampler, p);
}

}  // namespace epfp
