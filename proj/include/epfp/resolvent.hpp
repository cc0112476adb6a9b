#pragma once

#include <cstdint>
#include <optional>

#include "epfp/bifunction.hpp"
#include "epfp/convex_set.hpp"
#include "epfp/rng.hpp"
#include "epfp/vector.hpp"

namespace epfp {

enum class ResolventStrategy {
  Auto,
  ClosedFormLinear,
  ProjectedFixedPoint,
  ProxGradient,
};

namespace defaults {
inline constexpr long kInnerCap = 100000;
inline constexpr double kInnerTol = 1e-10;
inline constexpr long kVerifySamples = 256;
}  // namespace defaults

struct InnerParams {
  /// Step size; when unset, the guaranteed-contraction default is used
  /// (mu / L^2 for the projected fixed point, 1 / (L_g + 1/r) for the
  /// proximal gradient).
  std::optional<double> step;
  long cap = defaults::kInnerCap;
  double tol = defaults::kInnerTol;  // on step length
};

struct VerifyParams {
  long n_samples = defaults::kVerifySamples;
  std::uint64_t seed = 0;
  SamplerOptions sampler{};
};

/// One application of the resolvent T_r at x: find z in E with
/// f(z, y) + (1/r) <y - z, z - x> >= 0 for all y in E.
struct ResolventRequest {
  Bifunction f;
  ConvexSet set;  // E
  double r = 1.0;
  Vector x;
  ResolventStrategy strategy = ResolventStrategy::Auto;
  InnerParams inner{};
  std::optional<Vector> inner_start;  // default: project(E, x)
  VerifyParams verify{};
};

struct ResolventResult {
  Vector z;
  /// Sampled min over y in E of f(z, y) + (1/r) <y - z, z - x>; a certified
  /// solution stays above -tol.
  double achieved_residual = 0.0;
  long inner_iterations = 0;
  ResolventStrategy strategy_used = ResolventStrategy::Auto;
  bool converged = true;
};

/// Solves the resolvent inclusion and verifies the sampled residual.
/// A cap-exhausted inner solve returns the last iterate with converged=false.
ResolventResult resolvent(const ResolventRequest& req);

/// Same solve without the sampled verification pass (achieved_residual NaN);
/// used by iteration engines that track their own residuals.
ResolventResult solve_resolvent(const ResolventRequest& req);

/// min over n sampled y in E of f(z, y) + (1/r) <y - z, z - x>.
double resolvent_residual(const Bifunction& f, const ConvexSet& E, double r,
                          const Vector& x, const Vector& z, std::uint64_t seed,
                          long n_samples,
                          const SamplerOptions& sampler = SamplerOptions{});

/// True iff min sampled f(z, y) >= -tol over y in E, i.e. z solves the
/// equilibrium problem up to the sampled certificate.
bool ep_membership(const Bifunction& f, const ConvexSet& E, const Vector& z,
                   std::uint64_t seed, long n_samples, double tol,
                   const SamplerOptions& sampler = SamplerOptions{});

}  // namespace epfp
