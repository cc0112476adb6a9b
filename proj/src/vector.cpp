#include "epfp/vector.hpp"

#include <cmath>
#include <string>

namespace epfp {

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw ValidationError("Vector: dimension must be >= 1");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw ValidationError("Vector: coordinates must be finite");
    }
  }
}

Vector Vector::zeros(int dim) {
  if (dim < 1) throw ValidationError("Vector::zeros: dimension must be >= 1");
  return Vector(std::vector<double>(static_cast<size_t>(dim), 0.0));
}

Vector Vector::unit(int dim, int axis) {
  Vector e = zeros(dim);
  if (axis < 0 || axis >= dim) {
    throw ValidationError("Vector::unit: axis out of range");
  }
  e[axis] = 1.0;
  return e;
}

void require_same_dim(const Vector& x, const Vector& y, const char* where) {
  if (x.dim() != y.dim()) {
    throw DimensionError(std::string(where) + ": dimension mismatch (" +
                         std::to_string(x.dim()) + " vs " +
                         std::to_string(y.dim()) + ")");
  }
}

Vector operator+(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "operator+");
  std::vector<double> out(static_cast<size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i) out[static_cast<size_t>(i)] = x[i] + y[i];
  return Vector(std::move(out));
}

Vector operator-(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "operator-");
  std::vector<double> out(static_cast<size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i) out[static_cast<size_t>(i)] = x[i] - y[i];
  return Vector(std::move(out));
}

Vector operator*(double t, const Vector& x) {
  std::vector<double> out(static_cast<size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i) out[static_cast<size_t>(i)] = t * x[i];
  return Vector(std::move(out));
}

double inner(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "inner");
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i) s += x[i] * y[i];
  return s;
}

double norm(const Vector& x) { return std::sqrt(inner(x, x)); }

double distance(const Vector& x, const Vector& y) { return norm(x - y); }

Vector combine(double t, const Vector& x, const Vector& y) {
  require_same_dim(x, y, "combine");
  std::vector<double> out(static_cast<size_t>(x.dim()));
  for (int i = 0; i < x.dim(); ++i) {
    out[static_cast<size_t>(i)] = t * x[i] + (1.0 - t) * y[i];
  }
  return Vector(std::move(out));
}

}  // namespace epfp
