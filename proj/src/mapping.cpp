#include "epfp/mapping.hpp"

#include <cmath>

namespace epfp {

namespace {

Vector rotate(const RotationData& r, const Vector& x) {
  double c = std::cos(r.angle);
  double s = std::sin(r.angle);
  double dx = x[0] - r.center[0];
  double dy = x[1] - r.center[1];
  return Vector({r.center[0] + c * dx - s * dy, r.center[1] + s * dx + c * dy});
}

Vector apply_affine(const AffineData& a, const Vector& x) {
  Eigen::Map<const Eigen::VectorXd> xv(x.coords().data(), x.dim());
  Eigen::VectorXd out = a.matrix * xv;
  std::vector<double> coords(out.data(), out.data() + out.size());
  return Vector(std::move(coords)) + a.offset;
}

}  // namespace

Mapping::Mapping(Data data, ConvexSet domain)
    : data_(std::make_shared<const Data>(std::move(data))),
      domain_(std::make_shared<const ConvexSet>(std::move(domain))) {}

Mapping Mapping::identity(ConvexSet domain) {
  return Mapping(IdentityData{}, std::move(domain));
}

Mapping Mapping::projection(ConvexSet target, ConvexSet domain) {
  if (target.dim() != domain.dim()) {
    throw DimensionError("projection mapping: target/domain dimension mismatch");
  }
  return Mapping(ProjectionData{std::move(target)}, std::move(domain));
}

Mapping Mapping::rotation(Vector center, double angle, ConvexSet domain) {
  if (center.dim() != 2 || domain.dim() != 2) {
    throw ValidationError("rotation mapping: requires ambient dimension 2");
  }
  return Mapping(RotationData{std::move(center), angle}, std::move(domain));
}

Mapping Mapping::scaled_reflection(Vector center, double factor,
                                   ConvexSet domain) {
  if (center.dim() != domain.dim()) {
    throw DimensionError("scaled_reflection: center/domain dimension mismatch");
  }
  if (std::abs(factor) > 1.0) {
    throw ValidationError("scaled_reflection: factor must lie in [-1, 1]");
  }
  return Mapping(ScaledReflectionData{std::move(center), factor},
                 std::move(domain));
}

Mapping Mapping::affine(Eigen::MatrixXd matrix, Vector offset,
                        ConvexSet domain) {
  if (matrix.cols() != domain.dim() ||
      matrix.rows() != static_cast<Eigen::Index>(offset.dim())) {
    throw DimensionError("affine mapping: matrix/offset/domain shape mismatch");
  }
  if (!matrix.allFinite()) {
    throw ValidationError("affine mapping: matrix must be finite");
  }
  return Mapping(AffineData{std::move(matrix), std::move(offset)},
                 std::move(domain));
}

Mapping Mapping::composite(std::vector<Mapping> parts, ConvexSet domain) {
  if (parts.empty()) {
    throw ValidationError("composite mapping: needs at least one part");
  }
  return Mapping(CompositeData{std::move(parts)}, std::move(domain));
}

MappingKind Mapping::kind() const {
  return static_cast<MappingKind>(data_->index());
}

const ConvexSet& Mapping::domain() const { return *domain_; }

Vector Mapping::apply(const Vector& x) const {
  if (x.dim() != domain_->dim()) {
    throw DimensionError("Mapping::apply: dimension mismatch");
  }
  if (!domain_->contains(x, Tolerance{defaults::kDomainTol, 0.0})) {
    throw DomainError("Mapping::apply: point lies outside the mapping domain");
  }
  return std::visit(
      [&](const auto& d) -> Vector {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, IdentityData>) {
          return x;
        } else if constexpr (std::is_same_v<T, ProjectionData>) {
          return d.target.project(x);
        } else if constexpr (std::is_same_v<T, RotationData>) {
          return rotate(d, x);
        } else if constexpr (std::is_same_v<T, ScaledReflectionData>) {
          return d.center - d.factor * (x - d.center);
        } else if constexpr (std::is_same_v<T, AffineData>) {
          return apply_affine(d, x);
        } else {
          Vector v = x;
          for (const auto& part : d.parts) v = part.apply(v);
          return v;
        }
      },
      *data_);
}

double fixed_point_residual(const Mapping& S, const Vector& x) {
  return norm(S.apply(x) - x);
}

double generalized_hybrid_residual(const Mapping& S, double alpha, double beta,
                                   const Vector& x, const Vector& y) {
  Vector sx = S.apply(x);
  Vector sy = S.apply(y);
  double sxsy = inner(sx - sy, sx - sy);
  double xsy = inner(x - sy, x - sy);
  double sxy = inner(sx - y, sx - y);
  double xy = inner(x - y, x - y);
  return alpha * sxsy + (1.0 - alpha) * xsy - beta * sxy - (1.0 - beta) * xy;
}

}  // namespace epfp
