#include "epfp/rng.hpp"

#include <cmath>
#include <numbers>

namespace epfp {

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return mag * std::cos(2.0 * std::numbers::pi * u2);
}

Vector sample_in_box(Rng& rng, const Vector& lower, const Vector& upper) {
  require_same_dim(lower, upper, "sample_in_box");
  std::vector<double> out(static_cast<size_t>(lower.dim()));
  for (int i = 0; i < lower.dim(); ++i) {
    out[static_cast<size_t>(i)] = rng.uniform(lower[i], upper[i]);
  }
  return Vector(std::move(out));
}

namespace {

Vector fallback_box_sample(int dim, Rng& rng, const SamplerOptions& opt) {
  std::vector<double> out(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    out[static_cast<size_t>(i)] =
        rng.uniform(-opt.fallback_halfwidth, opt.fallback_halfwidth);
  }
  return Vector(std::move(out));
}

// Uniform in the ball: gaussian direction scaled by u^(1/n) * radius.
Vector sample_ball(const BallData& b, Rng& rng) {
  int n = b.center.dim();
  std::vector<double> dir(static_cast<size_t>(n));
  double nrm = 0.0;
  do {
    nrm = 0.0;
    for (int i = 0; i < n; ++i) {
      dir[static_cast<size_t>(i)] = rng.gaussian();
      nrm += dir[static_cast<size_t>(i)] * dir[static_cast<size_t>(i)];
    }
    nrm = std::sqrt(nrm);
  } while (nrm == 0.0);
  double radius =
      b.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] =
        b.center[i] + radius * dir[static_cast<size_t>(i)] / nrm;
  }
  return Vector(std::move(out));
}

}  // namespace

Vector sample_point(const ConvexSet& E, Rng& rng, const SamplerOptions& opt) {
  switch (E.kind()) {
    case SetKind::WholeSpace:
      return fallback_box_sample(E.dim(), rng, opt);
    case SetKind::Box:
      return sample_in_box(rng, std::get<BoxData>(E.data()).lower,
                           std::get<BoxData>(E.data()).upper);
    case SetKind::Ball:
      return sample_ball(std::get<BallData>(E.data()), rng);
    case SetKind::Singleton:
      return std::get<SingletonData>(E.data()).point;
    case SetKind::Hyperplane:
    case SetKind::Simplex:
      // zero-volume: rejection cannot terminate; project a box draw instead
      {
        auto b = E.bounds();
        Vector draw = b ? sample_in_box(rng, b->first, b->second)
                        : fallback_box_sample(E.dim(), rng, opt);
        return E.project(draw);
      }
    case SetKind::Halfspace:
    case SetKind::Intersection: {
      auto b = E.bounds();
      Tolerance tol{1e-12, 0.0};
      for (int attempt = 0; attempt < opt.attempt_cap; ++attempt) {
        Vector draw = b ? sample_in_box(rng, b->first, b->second)
                        : fallback_box_sample(E.dim(), rng, opt);
        if (E.contains(draw, tol)) return draw;
      }
      if (E.kind() == SetKind::Intersection) {
        // thin intersections may have negligible volume; fall back to Dykstra
        Vector draw = b ? sample_in_box(rng, b->first, b->second)
                        : fallback_box_sample(E.dim(), rng, opt);
        return E.project(draw);
      }
      throw SamplerError(
          "sample_point: no feasible draw within the attempt cap");
    }
  }
  throw ValidationError("sample_point: unknown set kind");
}

}  // namespace epfp
