#include "epfp/bifunction.hpp"

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

}  // namespace

double QuadraticForm::eval(const Vector& x) const {
  Eigen::VectorXd xv = as_eigen(x);
  return 0.5 * xv.dot(Q * xv) + as_eigen(c).dot(xv);
}

Vector QuadraticForm::gradient(const Vector& x) const {
  // symmetrized gradient so non-symmetric Q inputs still match eval
  Eigen::VectorXd xv = as_eigen(x);
  Eigen::VectorXd g = 0.5 * (Q + Q.transpose()) * xv + as_eigen(c);
  return from_eigen(g);
}

double QuadraticForm::smoothness() const {
  Eigen::MatrixXd sym = 0.5 * (Q + Q.transpose());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sym);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

QuadraticForm QuadraticForm::norm_square(int dim) {
  return QuadraticForm{Eigen::MatrixXd::Identity(dim, dim),
                       Vector::zeros(dim)};
}

Bifunction::Bifunction(Data data, ConvexSet domain)
    : data_(std::make_shared<const Data>(std::move(data))),
      domain_(std::make_shared<const ConvexSet>(std::move(domain))) {}

Bifunction Bifunction::zero(ConvexSet domain) {
  return Bifunction(ZeroData{}, std::move(domain));
}

Bifunction Bifunction::affine_vi(Eigen::MatrixXd matrix, Vector offset,
                                 ConvexSet domain) {
  if (matrix.rows() != matrix.cols() ||
      matrix.rows() != static_cast<Eigen::Index>(domain.dim()) ||
      offset.dim() != domain.dim()) {
    throw DimensionError("affine_vi: matrix/offset/domain shape mismatch");
  }
  if (!matrix.allFinite()) {
    throw ValidationError("affine_vi: matrix must be finite");
  }
  return Bifunction(AffineVIData{std::move(matrix), std::move(offset)},
                    std::move(domain));
}

Bifunction Bifunction::convex_gap(QuadraticForm g, ConvexSet domain) {
  if (g.Q.rows() != g.Q.cols() ||
      g.Q.rows() != static_cast<Eigen::Index>(domain.dim()) ||
      g.c.dim() != domain.dim()) {
    throw DimensionError("convex_gap: form/domain shape mismatch");
  }
  if (!g.Q.allFinite()) {
    throw ValidationError("convex_gap: matrix must be finite");
  }
  return Bifunction(ConvexGapData{std::move(g)}, std::move(domain));
}

Bifunction Bifunction::custom(
    std::function<double(const Vector&, const Vector&)> evaluate,
    ConvexSet domain) {
  if (!evaluate) throw ValidationError("custom bifunction: empty evaluator");
  return Bifunction(CustomData{std::move(evaluate)}, std::move(domain));
}

BifunctionFamily Bifunction::family() const {
  return static_cast<BifunctionFamily>(data_->index());
}

const ConvexSet& Bifunction::domain() const { return *domain_; }

double Bifunction::eval(const Vector& x, const Vector& y) const {
  if (x.dim() != domain_->dim() || y.dim() != domain_->dim()) {
    throw DimensionError("Bifunction::eval: dimension mismatch");
  }
  Tolerance tol{defaults::kDomainTol, 0.0};
  if (!domain_->contains(x, tol) || !domain_->contains(y, tol)) {
    throw DomainError("Bifunction::eval: point lies outside the domain");
  }
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZeroData>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, AffineVIData>) {
          Eigen::VectorXd field = d.matrix * as_eigen(x) + as_eigen(d.offset);
          return field.dot(as_eigen(y) - as_eigen(x));
        } else if constexpr (std::is_same_v<T, ConvexGapData>) {
          return d.g.eval(y) - d.g.eval(x);
        } else {
          double v = d.evaluate(x, y);
          if (!std::isfinite(v)) {
            throw ValidationError("custom bifunction returned non-finite value");
          }
          return v;
        }
      },
      *data_);
}

AxiomReport check_axioms(const Bifunction& f, std::uint64_t seed,
                         long n_samples, const std::vector<double>& t_grid,
                         double tol, const SamplerOptions& sampler) {
  if (n_samples < 1) throw ValidationError("check_axioms: n_samples must be >= 1");
  if (t_grid.empty()) throw ValidationError("check_axioms: t_grid must be nonempty");
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || t_grid[i] > 1.0 ||
        (i + 1 < t_grid.size() && t_grid[i + 1] >= t_grid[i])) {
      throw ValidationError(
          "check_axioms: t_grid must decrease within (0, 1] toward 0");
    }
  }

  Rng rng(seed);
  AxiomCheck diag{"diagonal_zero"};
  AxiomCheck mono{"monotone"};
  AxiomCheck hemi{"hemicontinuous_in_first"};
  AxiomCheck conv{"convex_in_second"};
  diag.worst = mono.worst = hemi.worst = conv.worst =
      -std::numeric_limits<double>::infinity();

  auto update = [](AxiomCheck& c, double violation, std::vector<Vector> pts) {
    if (violation > c.worst) {
      c.worst = violation;
      c.witness = std::move(pts);
    }
  };

  const ConvexSet& E = f.domain();
  for (long k = 0; k < n_samples; ++k) {
    Vector x = sample_point(E, rng, sampler);
    Vector y = sample_point(E, rng, sampler);
    Vector z = sample_point(E, rng, sampler);

    update(diag, std::abs(f.eval(x, x)), {x});
    update(mono, f.eval(x, y) + f.eval(y, x), {x, y});

    // f(tz + (1-t)x, y) <= f(x, y) + tol, asserted at the smallest t
    double base = f.eval(x, y);
    double at_smallest = f.eval(combine(t_grid.back(), z, x), y);
    update(hemi, at_smallest - base, {x, y, z});

    // midpoint convexity in the second argument
    Vector mid = combine(0.5, y, z);
    update(conv, f.eval(x, mid) - 0.5 * (f.eval(x, y) + f.eval(x, z)),
           {x, y, z});
  }

  AxiomReport report;
  report.samples = n_samples;
  for (AxiomCheck* c : {&diag, &mono, &hemi, &conv}) {
    c->pass = c->worst <= tol;
    if (c->pass) c->witness.clear();
    report.all_pass = report.all_pass && c->pass;
    report.checks.push_back(*c);
  }
  return report;
}

}  // namespace epfp
