#include "epfp/resolvent.hpp"

#include <cmath>
#include <limits>

namespace epfp {

namespace {

Eigen::Map<const Eigen::VectorXd> as_eigen(const Vector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.coords().data(), v.dim());
}

Vector from_eigen(const Eigen::VectorXd& v) {
  return Vector(std::vector<double>(v.data(), v.data() + v.size()));
}

double operator_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

// Direct solve of (rA + I) z = x - r b. Nonsingular for every PSD A; a
// singular system therefore signals a non-PSD matrix and is reported as such.
Vector closed_form_linear(const Eigen::MatrixXd& A, const Vector& b, double r,
                          const Vector& x) {
  Eigen::MatrixXd lhs =
      r * A + Eigen::MatrixXd::Identity(A.rows(), A.cols());
  Eigen::VectorXd rhs = as_eigen(x) - r * as_eigen(b);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
  if (!lu.isInvertible()) {
    throw SolverError(
        "resolvent: rA + I is singular; the matrix cannot be positive "
        "semidefinite");
  }
  return from_eigen(lu.solve(rhs));
}

struct InnerOutcome {
  Vector z;
  long iterations;
  bool converged;
};

// z <- P_E(z - step * F(z)) until the step length drops below tol.
InnerOutcome projected_fixed_point(
    const ConvexSet& E, const Vector& start, double step, long cap, double tol,
    const std::function<Vector(const Vector&)>& field) {
  Vector z = start;
  for (long k = 1; k <= cap; ++k) {
    Vector zn = E.project(z - step * field(z));
    double delta = distance(zn, z);
    z = zn;
    if (delta <= tol) return {z, k, true};
  }
  return {z, cap, false};
}

}  // namespace

ResolventResult solve_resolvent(const ResolventRequest& req) {
  if (!(req.r > 0.0)) throw ValidationError("resolvent: r must be > 0");
  if (req.x.dim() != req.set.dim()) {
    throw DimensionError("resolvent: x/set dimension mismatch");
  }
  if (req.f.domain().dim() != req.set.dim()) {
    throw DimensionError("resolvent: bifunction/set dimension mismatch");
  }

  const bool whole_space = req.set.kind() == SetKind::WholeSpace;
  ResolventStrategy strategy = req.strategy;
  if (strategy == ResolventStrategy::Auto) {
    switch (req.f.family()) {
      case BifunctionFamily::Zero:
        strategy = ResolventStrategy::ClosedFormLinear;
        break;
      case BifunctionFamily::AffineVI:
        strategy = whole_space ? ResolventStrategy::ClosedFormLinear
                               : ResolventStrategy::ProjectedFixedPoint;
        break;
      case BifunctionFamily::ConvexGap:
        strategy = whole_space ? ResolventStrategy::ClosedFormLinear
                               : ResolventStrategy::ProxGradient;
        break;
      case BifunctionFamily::Custom:
        throw ValidationError(
            "resolvent: custom bifunctions are verification-only and cannot "
            "be solved");
    }
  }

  ResolventResult result;
  result.strategy_used = strategy;
  result.achieved_residual = std::numeric_limits<double>::quiet_NaN();

  const double inv_r = 1.0 / req.r;
  Vector start = req.inner_start ? *req.inner_start : req.set.project(req.x);

  switch (req.f.family()) {
    case BifunctionFamily::Zero: {
      if (strategy != ResolventStrategy::ClosedFormLinear) {
        throw ValidationError(
            "resolvent: the zero bifunction admits only the closed form "
            "(metric projection)");
      }
      result.z = req.set.project(req.x);
      result.inner_iterations = 0;
      return result;
    }
    case BifunctionFamily::AffineVI: {
      const auto& d = std::get<AffineVIData>(req.f.data());
      if (strategy == ResolventStrategy::ClosedFormLinear) {
        if (!whole_space) {
          throw ValidationError(
              "resolvent: the linear closed form requires the whole space");
        }
        result.z = closed_form_linear(d.matrix, d.offset, req.r, req.x);
        result.inner_iterations = 0;
        return result;
      }
      if (strategy != ResolventStrategy::ProjectedFixedPoint) {
        throw ValidationError(
            "resolvent: affine bifunctions take ClosedFormLinear or "
            "ProjectedFixedPoint");
      }
      // F(z) = Az + b + (z - x)/r is (1/r)-strongly monotone and
      // (||A|| + 1/r)-Lipschitz; steps in (0, 2 mu / L^2) contract.
      double mu = inv_r;
      double L = operator_norm(d.matrix) + inv_r;
      double step = req.inner.step.value_or(mu / (L * L));
      if (!(step > 0.0) || step >= 2.0 * mu / (L * L)) {
        throw ValidationError(
            "resolvent: step outside the contraction window (0, 2mu/L^2)");
      }
      auto field = [&](const Vector& z) {
        Eigen::VectorXd v = d.matrix * as_eigen(z) + as_eigen(d.offset) +
                            inv_r * (as_eigen(z) - as_eigen(req.x));
        return from_eigen(v);
      };
      auto out = projected_fixed_point(req.set, start, step, req.inner.cap,
                                       req.inner.tol, field);
      result.z = out.z;
      result.inner_iterations = out.iterations;
      result.converged = out.converged;
      return result;
    }
    case BifunctionFamily::ConvexGap: {
      const auto& d = std::get<ConvexGapData>(req.f.data());
      if (strategy == ResolventStrategy::ClosedFormLinear) {
        if (!whole_space) {
          throw ValidationError(
              "resolvent: the linear closed form requires the whole space");
        }
        // minimizing g(z) + ||z - x||^2 / (2r) has gradient Qz + c + (z-x)/r
        Eigen::MatrixXd sym = 0.5 * (d.g.Q + d.g.Q.transpose());
        result.z = closed_form_linear(sym, d.g.c, req.r, req.x);
        result.inner_iterations = 0;
        return result;
      }
      if (strategy != ResolventStrategy::ProxGradient) {
        throw ValidationError(
            "resolvent: convex-gap bifunctions take ProxGradient or the "
            "whole-space closed form");
      }
      double step = req.inner.step.value_or(1.0 / (d.g.smoothness() + inv_r));
      if (!(step > 0.0)) {
        throw ValidationError("resolvent: step must be positive");
      }
      auto field = [&](const Vector& z) {
        return d.g.gradient(z) + inv_r * (z - req.x);
      };
      auto out = projected_fixed_point(req.set, start, step, req.inner.cap,
                                       req.inner.tol, field);
      result.z = out.z;
      result.inner_iterations = out.iterations;
      result.converged = out.converged;
      return result;
    }
    case BifunctionFamily::Custom:
      throw ValidationError(
          "resolvent: custom bifunctions are verification-only and cannot be "
          "solved");
  }
  throw ValidationError("resolvent: unknown bifunction family");
}

ResolventResult resolvent(const ResolventRequest& req) {
  ResolventResult result = solve_resolvent(req);
  result.achieved_residual =
      resolvent_residual(req.f, req.set, req.r, req.x, result.z,
                         req.verify.seed, req.verify.n_samples,
                         req.verify.sampler);
  return result;
}

double resolvent_residual(const Bifunction& f, const ConvexSet& E, double r,
                          const Vector& x, const Vector& z, std::uint64_t seed,
                          long n_samples, const SamplerOptions& sampler) {
  if (!(r > 0.0)) throw ValidationError("resolvent_residual: r must be > 0");
  if (n_samples < 1) {
    throw ValidationError("resolvent_residual: n_samples must be >= 1");
  }
  Rng rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (long k = 0; k < n_samples; ++k) {
    Vector y = sample_point(E, rng, sampler);
    double v = f.eval(z, y) + (1.0 / r) * inner(y - z, z - x);
    worst = std::min(worst, v);
  }
  return worst;
}

bool ep_membership(const Bifunction& f, const ConvexSet& E, const Vector& z,
                   std::uint64_t seed, long n_samples, double tol,
                   const SamplerOptions& sampler) {
  if (!E.contains(z, Tolerance{defaults::kDomainTol, 0.0})) {
    throw DomainError("ep_membership: z lies outside E");
  }
  Rng rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (long k = 0; k < n_samples; ++k) {
    Vector y = sample_point(E, rng, sampler);
    worst = std::min(worst, f.eval(z, y));
  }
  return worst >= -tol;
}

}  // namespace epfp
