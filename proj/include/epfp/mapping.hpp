#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "epfp/convex_set.hpp"
#include "epfp/vector.hpp"

namespace epfp {

class Mapping;

enum class MappingKind {
  Identity,
  Projection,
  Rotation,
  ScaledReflection,
  Affine,
  Composite,
};

struct IdentityData {};

struct ProjectionData {
  ConvexSet target;
};

/// Plane rotation about a center; ambient dimension must be 2.
struct RotationData {
  Vector center;
  double angle;
};

/// S x = center - factor * (x - center): reflect through the center, then
/// scale by factor in [-1, 1]. factor = 1 is the point reflection, factor = -1
/// the identity; |factor| <= 1 keeps the center a fixed point.
struct ScaledReflectionData {
  Vector center;
  double factor;
};

struct AffineData {
  Eigen::MatrixXd matrix;
  Vector offset;
};

/// Parts are applied in list order (first element first).
struct CompositeData {
  std::vector<Mapping> parts;
};

/// Declared (alpha, beta) class of a mapping: alpha ||Sx - Sy||^2 +
/// (1 - alpha) ||x - Sy||^2 <= beta ||Sx - y||^2 + (1 - beta) ||x - y||^2.
struct GhybParams {
  double alpha;
  double beta;
};

/// An operator S from its domain into R^n, drawn from a closed catalog so
/// that evaluation stays exact and serializable.
class Mapping {
 public:
  static Mapping identity(ConvexSet domain);
  static Mapping projection(ConvexSet target, ConvexSet domain);
  static Mapping rotation(Vector center, double angle, ConvexSet domain);
  static Mapping scaled_reflection(Vector center, double factor,
                                   ConvexSet domain);
  static Mapping affine(Eigen::MatrixXd matrix, Vector offset,
                        ConvexSet domain);
  static Mapping composite(std::vector<Mapping> parts, ConvexSet domain);

  /// Evaluates S x. The point must lie in the domain within the containment
  /// slack; the result is always finite.
  Vector apply(const Vector& x) const;

  MappingKind kind() const;
  const ConvexSet& domain() const;
  const std::optional<GhybParams>& claimed_class() const { return claimed_; }
  void set_claimed_class(GhybParams p) { claimed_ = p; }

  using Data = std::variant<IdentityData, ProjectionData, RotationData,
                            ScaledReflectionData, AffineData, CompositeData>;
  const Data& data() const { return *data_; }

 private:
  Mapping(Data data, ConvexSet domain);
  std::shared_ptr<const Data> data_;
  std::shared_ptr<const ConvexSet> domain_;
  std::optional<GhybParams> claimed_;
};

/// ||Sx - x||.
double fixed_point_residual(const Mapping& S, const Vector& x);

/// [alpha ||Sx-Sy||^2 + (1-alpha) ||x-Sy||^2]
///   - [beta ||Sx-y||^2 + (1-beta) ||x-y||^2];
/// nonpositive exactly when the defining inequality holds at (x, y).
double generalized_hybrid_residual(const Mapping& S, double alpha, double beta,
                                   const Vector& x, const Vector& y);

}  // namespace epfp
