#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "epfp/vector.hpp"

namespace epfp {

class ConvexSet;

enum class SetKind {
  WholeSpace,
  Box,
  Ball,
  Halfspace,
  Hyperplane,
  Simplex,
  Singleton,
  Intersection,
};

struct WholeSpaceData {
  int dim;
};

struct BoxData {
  Vector lower;
  Vector upper;
};

struct BallData {
  Vector center;
  double radius;
};

/// { x : <normal, x> <= offset }
struct HalfspaceData {
  Vector normal;
  double offset;
};

/// { x : <normal, x> = offset }
struct HyperplaneData {
  Vector normal;
  double offset;
};

/// { x : x >= 0, sum_i x_i = scale }
struct SimplexData {
  int dim;
  double scale;
};

struct SingletonData {
  Vector point;
};

struct IntersectionData {
  std::vector<ConvexSet> members;
  long inner_cap;
  double inner_tol;
};

/// Thrown when the alternating-projection scheme for Intersection sets runs
/// out of cycles. Carries the last iterate and the residual it reached.
struct ProjectionError : Error {
  ProjectionError(const std::string& msg, Vector last, double residual,
                  long cycles)
      : Error(msg),
        last_iterate(std::move(last)),
        achieved_residual(residual),
        cycles_used(cycles) {}
  Vector last_iterate;
  double achieved_residual;
  long cycles_used;
};

namespace defaults {
inline constexpr long kIntersectionCap = 10000;
inline constexpr double kIntersectionTol = 1e-12;
}  // namespace defaults

/// Nonempty closed convex subset of R^n with a metric projection. Projections
/// are closed-form for every kind except Intersection, which runs Dykstra's
/// alternating scheme.
class ConvexSet {
 public:
  static ConvexSet whole_space(int dim);
  static ConvexSet box(Vector lower, Vector upper);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet halfspace(Vector normal, double offset);
  static ConvexSet hyperplane(Vector normal, double offset);
  static ConvexSet simplex(int dim, double scale);
  static ConvexSet singleton(Vector point);
  static ConvexSet intersection(std::vector<ConvexSet> members,
                                long inner_cap = defaults::kIntersectionCap,
                                double inner_tol = defaults::kIntersectionTol);

  SetKind kind() const;
  int dim() const;

  /// Nearest point of the set. Satisfies <x - z, y - z> <= 0 for all set
  /// members y. Throws ProjectionError if Dykstra does not reach its inner
  /// tolerance within the cap.
  Vector project(const Vector& x) const;

  /// Distance to the set; closed-form where one exists, via project otherwise.
  double distance(const Vector& x) const;

  /// distance(x) <= tol.abs.
  bool contains(const Vector& x, const Tolerance& tol = Tolerance{}) const;

  /// Axis-aligned bounds (lower, upper) when the set is bounded.
  std::optional<std::pair<Vector, Vector>> bounds() const;

  /// True for kinds of zero volume in the ambient space (Hyperplane,
  /// Singleton, Simplex); samplers must project instead of rejecting.
  bool zero_volume() const;

  using Data = std::variant<WholeSpaceData, BoxData, BallData, HalfspaceData,
                            HyperplaneData, SimplexData, SingletonData,
                            IntersectionData>;
  const Data& data() const { return *data_; }

 private:
  explicit ConvexSet(Data data);
  // shared_ptr keeps the recursive Intersection payload cheap to copy; sets
  // are immutable after construction.
  std::shared_ptr<const Data> data_;
};

}  // namespace epfp
