#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "epfp/convex_set.hpp"
#include "epfp/rng.hpp"
#include "epfp/vector.hpp"

namespace epfp {

/// g(x) = 0.5 <Qx, x> + <c, x>; convex when Q is positive semidefinite.
struct QuadraticForm {
  Eigen::MatrixXd Q;
  Vector c;

  double eval(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  /// Lipschitz constant of the gradient (largest singular value of Q).
  double smoothness() const;

  static QuadraticForm norm_square(int dim);  // 0.5 ||x||^2
};

enum class BifunctionFamily { Zero, AffineVI, ConvexGap, Custom };

struct ZeroData {};

/// f(x, y) = <Ax + b, y - x>; monotone when A is positive semidefinite.
struct AffineVIData {
  Eigen::MatrixXd matrix;
  Vector offset;
};

/// f(x, y) = g(y) - g(x); monotone by construction (f(x,y) + f(y,x) = 0).
struct ConvexGapData {
  QuadraticForm g;
};

/// Black-box evaluator; usable for evaluation and audits only, never solving.
struct CustomData {
  std::function<double(const Vector&, const Vector&)> evaluate;
};

/// f : E x E -> R with a declared structural family.
class Bifunction {
 public:
  static Bifunction zero(ConvexSet domain);
  static Bifunction affine_vi(Eigen::MatrixXd matrix, Vector offset,
                              ConvexSet domain);
  static Bifunction convex_gap(QuadraticForm g, ConvexSet domain);
  static Bifunction custom(
      std::function<double(const Vector&, const Vector&)> evaluate,
      ConvexSet domain);

  double eval(const Vector& x, const Vector& y) const;

  BifunctionFamily family() const;
  const ConvexSet& domain() const;

  using Data = std::variant<ZeroData, AffineVIData, ConvexGapData, CustomData>;
  const Data& data() const { return *data_; }

 private:
  Bifunction(Data data, ConvexSet domain);
  std::shared_ptr<const Data> data_;
  std::shared_ptr<const ConvexSet> domain_;
};

struct AxiomCheck {
  std::string axiom;  // diagonal_zero | monotone | hemicontinuous_in_first |
                      // convex_in_second
  bool pass = true;
  double worst = 0.0;  // largest violation observed (negative = slack)
  std::vector<Vector> witness;  // points realizing the worst violation
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass = true;
  long samples = 0;
};

/// Sampled audit of the bifunction axioms: f vanishes on the diagonal,
/// monotonicity f(x,y) + f(y,x) <= 0, upper hemicontinuity along segments in
/// the first argument (checked at the smallest t of the grid), and midpoint
/// convexity in the second argument. Deterministic in the seed.
AxiomReport check_axioms(const Bifunction& f, std::uint64_t seed,
                         long n_samples,
                         const std::vector<double>& t_grid = {0.5, 0.1, 0.01,
                                                              0.001},
                         double tol = 1e-10,
                         const SamplerOptions& sampler = SamplerOptions{});

}  // namespace epfp
