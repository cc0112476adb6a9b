#include "epfp/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace epfp {

namespace {

double sq(double v) { return v * v; }

Vector clamp_to_box(const BoxData& b, const Vector& x) {
  std::vector<double> out(static_cast<size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i) {
    out[static_cast<size_t>(i)] = std::min(std::max(x[i], b.lower[i]), b.upper[i]);
  }
  return Vector(std::move(out));
}

Vector project_ball(const BallData& b, const Vector& x) {
  Vector d = x - b.center;
  double n = norm(d);
  if (n <= b.radius) return x;
  return b.center + (b.radius / n) * d;
}

Vector project_halfspace(const HalfspaceData& h, const Vector& x) {
  double excess = inner(h.normal, x) - h.offset;
  if (excess <= 0.0) return x;
  return x - (excess / inner(h.normal, h.normal)) * h.normal;
}

Vector project_hyperplane(const HyperplaneData& h, const Vector& x) {
  double excess = inner(h.normal, x) - h.offset;
  return x - (excess / inner(h.normal, h.normal)) * h.normal;
}

// Exact sort-and-threshold projection onto {x >= 0, sum x = scale}.
Vector project_simplex(const SimplexData& s, const Vector& x) {
  std::vector<double> u(x.coords());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  int support = 0;
  for (int k = 0; k < static_cast<int>(u.size()); ++k) {
    cumulative += u[static_cast<size_t>(k)];
    double candidate = (cumulative - s.scale) / static_cast<double>(k + 1);
    if (u[static_cast<size_t>(k)] - candidate > 0.0) {
      theta = candidate;
      support = k + 1;
    }
  }
  (void)support;
  std::vector<double> out(static_cast<size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i) {
    out[static_cast<size_t>(i)] = std::max(x[i] - theta, 0.0);
  }
  return Vector(std::move(out));
}

// Dykstra's alternating projections with per-member correction terms;
// converges to the exact metric projection onto the intersection.
Vector project_intersection(const IntersectionData& I, const Vector& x) {
  Vector z = x;
  std::vector<Vector> corrections(I.members.size(), Vector::zeros(x.dim()));
  double delta = std::numeric_limits<double>::infinity();
  for (long cycle = 1; cycle <= I.inner_cap; ++cycle) {
    Vector cycle_start = z;
    for (size_t i = 0; i < I.members.size(); ++i) {
      Vector w = z + corrections[i];
      Vector zn = I.members[i].project(w);
      corrections[i] = w - zn;
      z = zn;
    }
    delta = distance(z, cycle_start);
    if (delta <= I.inner_tol) return z;
  }
  throw ProjectionError(
      "Intersection projection: Dykstra did not reach tolerance " +
          std::to_string(I.inner_tol) + " within " +
          std::to_string(I.inner_cap) + " cycles (last cycle delta " +
          std::to_string(delta) + ")",
      z, delta, I.inner_cap);
}

double box_distance(const BoxData& b, const Vector& x) {
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i) {
    s += sq(std::max({b.lower[i] - x[i], 0.0, x[i] - b.upper[i]}));
  }
  return std::sqrt(s);
}

}  // namespace

ConvexSet::ConvexSet(Data data)
    : data_(std::make_shared<const Data>(std::move(data))) {}

ConvexSet ConvexSet::whole_space(int dim) {
  if (dim < 1) throw ValidationError("whole_space: dimension must be >= 1");
  return ConvexSet(WholeSpaceData{dim});
}

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  require_same_dim(lower, upper, "box");
  for (int i = 0; i < lower.dim(); ++i) {
    if (lower[i] > upper[i]) {
      throw ValidationError("box: requires lower <= upper componentwise");
    }
  }
  return ConvexSet(BoxData{std::move(lower), std::move(upper)});
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (!(radius > 0.0)) throw ValidationError("ball: radius must be > 0");
  return ConvexSet(BallData{std::move(center), radius});
}

ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
  if (norm(normal) == 0.0) throw ValidationError("halfspace: normal must be nonzero");
  return ConvexSet(HalfspaceData{std::move(normal), offset});
}

ConvexSet ConvexSet::hyperplane(Vector normal, double offset) {
  if (norm(normal) == 0.0) throw ValidationError("hyperplane: normal must be nonzero");
  return ConvexSet(HyperplaneData{std::move(normal), offset});
}

ConvexSet ConvexSet::simplex(int dim, double scale) {
  if (dim < 1) throw ValidationError("simplex: dimension must be >= 1");
  if (!(scale > 0.0)) throw ValidationError("simplex: scale must be > 0");
  return ConvexSet(SimplexData{dim, scale});
}

ConvexSet ConvexSet::singleton(Vector point) {
  return ConvexSet(SingletonData{std::move(point)});
}

ConvexSet ConvexSet::intersection(std::vector<ConvexSet> members,
                                  long inner_cap, double inner_tol) {
  if (members.empty()) {
    throw ValidationError("intersection: needs at least one member");
  }
  int d = members.front().dim();
  for (const auto& m : members) {
    if (m.dim() != d) {
      throw DimensionError("intersection: members have mixed dimensions");
    }
  }
  if (inner_cap < 1) throw ValidationError("intersection: inner_cap must be >= 1");
  if (!(inner_tol > 0.0)) throw ValidationError("intersection: inner_tol must be > 0");
  return ConvexSet(IntersectionData{std::move(members), inner_cap, inner_tol});
}

SetKind ConvexSet::kind() const {
  return static_cast<SetKind>(data_->index());
}

int ConvexSet::dim() const {
  return std::visit(
      [](const auto& d) -> int {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, WholeSpaceData>) return d.dim;
        else if constexpr (std::is_same_v<T, BoxData>) return d.lower.dim();
        else if constexpr (std::is_same_v<T, BallData>) return d.center.dim();
        else if constexpr (std::is_same_v<T, HalfspaceData>) return d.normal.dim();
        else if constexpr (std::is_same_v<T, HyperplaneData>) return d.normal.dim();
        else if constexpr (std::is_same_v<T, SimplexData>) return d.dim;
        else if constexpr (std::is_same_v<T, SingletonData>) return d.point.dim();
        else return d.members.front().dim();
      },
      *data_);
}

Vector ConvexSet::project(const Vector& x) const {
  if (x.dim() != dim()) throw DimensionError("project: dimension mismatch");
  return std::visit(
      [&](const auto& d) -> Vector {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, WholeSpaceData>) return x;
        else if constexpr (std::is_same_v<T, BoxData>) return clamp_to_box(d, x);
        else if constexpr (std::is_same_v<T, BallData>) return project_ball(d, x);
        else if constexpr (std::is_same_v<T, HalfspaceData>) return project_halfspace(d, x);
        else if constexpr (std::is_same_v<T, HyperplaneData>) return project_hyperplane(d, x);
        else if constexpr (std::is_same_v<T, SimplexData>) return project_simplex(d, x);
        else if constexpr (std::is_same_v<T, SingletonData>) return d.point;
        else return project_intersection(d, x);
      },
      *data_);
}

double ConvexSet::distance(const Vector& x) const {
  if (x.dim() != dim()) throw DimensionError("distance: dimension mismatch");
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, WholeSpaceData>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, BoxData>) {
          return box_distance(d, x);
        } else if constexpr (std::is_same_v<T, BallData>) {
          return std::max(0.0, norm(x - d.center) - d.radius);
        } else if constexpr (std::is_same_v<T, HalfspaceData>) {
          return std::max(0.0, inner(d.normal, x) - d.offset) / norm(d.normal);
        } else if constexpr (std::is_same_v<T, HyperplaneData>) {
          return std::abs(inner(d.normal, x) - d.offset) / norm(d.normal);
        } else if constexpr (std::is_same_v<T, SingletonData>) {
          return epfp::distance(x, d.point);
        } else {
          return epfp::distance(x, project(x));
        }
      },
      *data_);
}

bool ConvexSet::contains(const Vector& x, const Tolerance& tol) const {
  return distance(x) <= tol.abs;
}

std::optional<std::pair<Vector, Vector>> ConvexSet::bounds() const {
  return std::visit(
      [&](const auto& d) -> std::optional<std::pair<Vector, Vector>> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BoxData>) {
          return std::make_pair(d.lower, d.upper);
        } else if constexpr (std::is_same_v<T, BallData>) {
          std::vector<double> lo(static_cast<size_t>(d.center.dim()));
          std::vector<double> hi(static_cast<size_t>(d.center.dim()));
          for (int i = 0; i < d.center.dim(); ++i) {
            lo[static_cast<size_t>(i)] = d.center[i] - d.radius;
            hi[static_cast<size_t>(i)] = d.center[i] + d.radius;
          }
          return std::make_pair(Vector(std::move(lo)), Vector(std::move(hi)));
        } else if constexpr (std::is_same_v<T, SimplexData>) {
          return std::make_pair(Vector::zeros(d.dim),
                                Vector(std::vector<double>(
                                    static_cast<size_t>(d.dim), d.scale)));
        } else if constexpr (std::is_same_v<T, SingletonData>) {
          return std::make_pair(d.point, d.point);
        } else if constexpr (std::is_same_v<T, IntersectionData>) {
          // tightest box over members that expose one
          std::optional<std::pair<Vector, Vector>> acc;
          for (const auto& m : d.members) {
            auto b = m.bounds();
            if (!b) continue;
            if (!acc) {
              acc = b;
              continue;
            }
            for (int i = 0; i < acc->first.dim(); ++i) {
              acc->first[i] = std::max(acc->first[i], b->first[i]);
              acc->second[i] = std::min(acc->second[i], b->second[i]);
            }
          }
          return acc;
        } else {
          return std::nullopt;
        }
      },
      *data_);
}

bool ConvexSet::zero_volume() const {
  switch (kind()) {
    case SetKind::Hyperplane:
    case SetKind::Simplex:
    case SetKind::Singleton:
      return true;
    default:
      return false;
  }
}

}  // namespace epfp
