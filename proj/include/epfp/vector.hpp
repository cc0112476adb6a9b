#pragma once

#include <vector>

#include "epfp/errors.hpp"

namespace epfp {

/// Point of the ambient space R^n. Coordinates are always finite; the
/// dimension is fixed at construction and is at least 1.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> coords);

  static Vector zeros(int dim);
  static Vector unit(int dim, int axis);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return coords_[static_cast<size_t>(i)]; }
  const std::vector<double>& coords() const { return coords_; }

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> coords_;
};

Vector operator+(const Vector& x, const Vector& y);
Vector operator-(const Vector& x, const Vector& y);
Vector operator*(double t, const Vector& x);

/// Dot product sum_i x_i y_i.
double inner(const Vector& x, const Vector& y);

/// Induced norm sqrt(inner(x, x)).
double norm(const Vector& x);

/// norm(x - y).
double distance(const Vector& x, const Vector& y);

/// Affine combination t*x + (1-t)*y, defined for any real t.
Vector combine(double t, const Vector& x, const Vector& y);

/// Absolute/relative tolerance pair used by containment and stopping rules.
struct Tolerance {
  double abs = 1e-9;
  double rel = 0.0;
};

namespace defaults {
/// Containment slack applied when checking that a point lies in a mapping or
/// bifunction domain.
inline constexpr double kDomainTol = 1e-8;
}  // namespace defaults

void require_same_dim(const Vector& x, const Vector& y, const char* where);

}  // namespace epfp
