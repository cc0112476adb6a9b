#include "epfp/serialize.hpp"

#include <optional>

namespace epfp {

namespace {

const Json& require(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) {
    throw SpecError(ctx + ": missing key '" + key + "'");
  }
  return j.at(key);
}

const Json* find(const Json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) return nullptr;
  for (const char* k : keys) {
    if (j.contains(k)) return &j.at(k);
  }
  return nullptr;
}

double as_double(const Json& j, const std::string& ctx) {
  if (!j.is_number()) throw SpecError(ctx + ": expected a number");
  return j.get<double>();
}

long as_long(const Json& j, const std::string& ctx) {
  if (!j.is_number_integer()) throw SpecError(ctx + ": expected an integer");
  return j.get<long>();
}

std::string as_string(const Json& j, const std::string& ctx) {
  if (!j.is_string()) throw SpecError(ctx + ": expected a string");
  return j.get<std::string>();
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) {
    throw SpecError(ctx + ": expected a nonempty array of rows");
  }
  Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw SpecError(ctx + ": ragged matrix rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = as_double(row.at(static_cast<size_t>(k)), ctx);
    }
  }
  return m;
}

SamplerOptions sampler_from_json(const Json& j) {
  SamplerOptions opt;
  if (j.contains("fallback_halfwidth")) {
    opt.fallback_halfwidth =
        as_double(j.at("fallback_halfwidth"), "sampler.fallback_halfwidth");
  }
  if (j.contains("attempt_cap")) {
    opt.attempt_cap =
        static_cast<int>(as_long(j.at("attempt_cap"), "sampler.attempt_cap"));
  }
  return opt;
}

InnerParams inner_from_json(const Json& j) {
  InnerParams inner;
  if (j.contains("step")) inner.step = as_double(j.at("step"), "inner.step");
  if (j.contains("cap")) inner.cap = as_long(j.at("cap"), "inner.cap");
  if (j.contains("tol")) inner.tol = as_double(j.at("tol"), "inner.tol");
  return inner;
}

VerifyParams verify_from_json(const Json& j) {
  VerifyParams v;
  if (j.contains("n_samples")) {
    v.n_samples = as_long(j.at("n_samples"), "verify.n_samples");
  }
  if (j.contains("seed")) {
    v.seed = static_cast<std::uint64_t>(as_long(j.at("seed"), "verify.seed"));
  }
  if (j.contains("sampler")) v.sampler = sampler_from_json(j.at("sampler"));
  return v;
}

ResolventStrategy strategy_from_name(const std::string& name) {
  if (name == "auto") return ResolventStrategy::Auto;
  if (name == "closed_form_linear") return ResolventStrategy::ClosedFormLinear;
  if (name == "projected_fixed_point") {
    return ResolventStrategy::ProjectedFixedPoint;
  }
  if (name == "prox_gradient") return ResolventStrategy::ProxGradient;
  throw SpecError("unknown resolvent strategy: " + name);
}

std::string strategy_name(ResolventStrategy s) {
  switch (s) {
    case ResolventStrategy::Auto: return "auto";
    case ResolventStrategy::ClosedFormLinear: return "closed_form_linear";
    case ResolventStrategy::ProjectedFixedPoint:
      return "projected_fixed_point";
    case ResolventStrategy::ProxGradient: return "prox_gradient";
  }
  return "unknown";
}

OperatorClass class_from_name(const std::string& name) {
  for (OperatorClass c :
       {OperatorClass::FirmlyNonexpansive, OperatorClass::Nonexpansive,
        OperatorClass::Nonspreading, OperatorClass::Hybrid,
        OperatorClass::GeneralizedHybrid, OperatorClass::QuasiNonexpansive}) {
    if (operator_class_name(c) == name) return c;
  }
  throw SpecError("unknown operator class: " + name);
}

Mapping mapping_from_json_impl(const Json& j,
                               const std::optional<ConvexSet>& fallback);
Bifunction bifunction_from_json_impl(const Json& j,
                                     const std::optional<ConvexSet>& fallback);

ConvexSet domain_for(const Json& j, const std::optional<ConvexSet>& fallback,
                     const std::string& ctx) {
  if (j.contains("domain")) return set_from_json(j.at("domain"));
  if (fallback) return *fallback;
  throw SpecError(ctx + ": missing key 'domain'");
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const Vector& v) { return Json(v.coords()); }

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw SpecError("vector: expected a nonempty array of numbers");
  }
  std::vector<double> coords;
  coords.reserve(j.size());
  for (const auto& c : j) coords.push_back(as_double(c, "vector"));
  try {
    return Vector(std::move(coords));
  } catch (const ValidationError& e) {
    throw SpecError(std::string("vector: ") + e.what());
  }
}

Json to_json(const ConvexSet& s) {
  Json j;
  switch (s.kind()) {
    case SetKind::WholeSpace:
      j["kind"] = "whole_space";
      j["dim"] = std::get<WholeSpaceData>(s.data()).dim;
      break;
    case SetKind::Box: {
      const auto& d = std::get<BoxData>(s.data());
      j["kind"] = "box";
      j["lower"] = to_json(d.lower);
      j["upper"] = to_json(d.upper);
      break;
    }
    case SetKind::Ball: {
      const auto& d = std::get<BallData>(s.data());
      j["kind"] = "ball";
      j["center"] = to_json(d.center);
      j["radius"] = d.radius;
      break;
    }
    case SetKind::Halfspace: {
      const auto& d = std::get<HalfspaceData>(s.data());
      j["kind"] = "halfspace";
      j["normal"] = to_json(d.normal);
      j["offset"] = d.offset;
      break;
    }
    case SetKind::Hyperplane: {
      const auto& d = std::get<HyperplaneData>(s.data());
      j["kind"] = "hyperplane";
      j["normal"] = to_json(d.normal);
      j["offset"] = d.offset;
      break;
    }
    case SetKind::Simplex: {
      const auto& d = std::get<SimplexData>(s.data());
      j["kind"] = "simplex";
      j["dim"] = d.dim;
      j["scale"] = d.scale;
      break;
    }
    case SetKind::Singleton: {
      const auto& d = std::get<SingletonData>(s.data());
      j["kind"] = "singleton";
      j["point"] = to_json(d.point);
      break;
    }
    case SetKind::Intersection: {
      const auto& d = std::get<IntersectionData>(s.data());
      j["kind"] = "intersection";
      Json members = Json::array();
      for (const auto& m : d.members) members.push_back(to_json(m));
      j["members"] = std::move(members);
      j["inner_cap"] = d.inner_cap;
      j["inner_tol"] = d.inner_tol;
      break;
    }
  }
  return j;
}

ConvexSet set_from_json(const Json& j) {
  std::string kind = as_string(require(j, "kind", "set"), "set.kind");
  try {
    if (kind == "whole_space") {
      return ConvexSet::whole_space(
          static_cast<int>(as_long(require(j, "dim", "set"), "set.dim")));
    }
    if (kind == "box") {
      return ConvexSet::box(vector_from_json(require(j, "lower", "set")),
                            vector_from_json(require(j, "upper", "set")));
    }
    if (kind == "ball") {
      return ConvexSet::ball(
          vector_from_json(require(j, "center", "set")),
          as_double(require(j, "radius", "set"), "set.radius"));
    }
    if (kind == "halfspace") {
      return ConvexSet::halfspace(
          vector_from_json(require(j, "normal", "set")),
          as_double(require(j, "offset", "set"), "set.offset"));
    }
    if (kind == "hyperplane") {
      return ConvexSet::hyperplane(
          vector_from_json(require(j, "normal", "set")),
          as_double(require(j, "offset", "set"), "set.offset"));
    }
    if (kind == "simplex") {
      return ConvexSet::simplex(
          static_cast<int>(as_long(require(j, "dim", "set"), "set.dim")),
          as_double(require(j, "scale", "set"), "set.scale"));
    }
    if (kind == "singleton") {
      return ConvexSet::singleton(vector_from_json(require(j, "point", "set")));
    }
    if (kind == "intersection") {
      const Json& members = require(j, "members", "set");
      if (!members.is_array() || members.empty()) {
        throw SpecError("set.members: expected a nonempty array");
      }
      std::vector<ConvexSet> sets;
      for (const auto& m : members) sets.push_back(set_from_json(m));
      long cap = j.contains("inner_cap")
                     ? as_long(j.at("inner_cap"), "set.inner_cap")
                     : defaults::kIntersectionCap;
      double tol = j.contains("inner_tol")
                       ? as_double(j.at("inner_tol"), "set.inner_tol")
                       : defaults::kIntersectionTol;
      return ConvexSet::intersection(std::move(sets), cap, tol);
    }
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(std::string("set: ") + e.what());
  }
  throw SpecError("unknown set kind: " + kind);
}

Json to_json(const Mapping& m) {
  Json j;
  switch (m.kind()) {
    case MappingKind::Identity:
      j["kind"] = "identity";
      break;
    case MappingKind::Projection:
      j["kind"] = "projection";
      j["target"] = to_json(std::get<ProjectionData>(m.data()).target);
      break;
    case MappingKind::Rotation: {
      const auto& d = std::get<RotationData>(m.data());
      j["kind"] = "rotation";
      j["center"] = to_json(d.center);
      j["angle"] = d.angle;
      break;
    }
    case MappingKind::ScaledReflection: {
      const auto& d = std::get<ScaledReflectionData>(m.data());
      j["kind"] = "scaled_reflection";
      j["center"] = to_json(d.center);
      j["factor"] = d.factor;
      break;
    }
    case MappingKind::Affine: {
      const auto& d = std::get<AffineData>(m.data());
      j["kind"] = "affine";
      j["matrix"] = matrix_to_json(d.matrix);
      j["offset"] = to_json(d.offset);
      break;
    }
    case MappingKind::Composite: {
      Json parts = Json::array();
      for (const auto& p : std::get<CompositeData>(m.data()).parts) {
        parts.push_back(to_json(p));
      }
      j["kind"] = "composite";
      j["parts"] = std::move(parts);
      break;
    }
  }
  j["domain"] = to_json(m.domain());
  if (m.claimed_class()) {
    j["claimed_class"] = Json{{"alpha", m.claimed_class()->alpha},
                              {"beta", m.claimed_class()->beta}};
  }
  return j;
}

namespace {

Mapping mapping_from_json_impl(const Json& j,
                               const std::optional<ConvexSet>& fallback) {
  std::string kind = as_string(require(j, "kind", "mapping"), "mapping.kind");
  ConvexSet domain = domain_for(j, fallback, "mapping");
  try {
    Mapping m = [&]() -> Mapping {
      if (kind == "identity") return Mapping::identity(domain);
      if (kind == "projection") {
        return Mapping::projection(
            set_from_json(require(j, "target", "mapping")), domain);
      }
      if (kind == "rotation") {
        return Mapping::rotation(
            vector_from_json(require(j, "center", "mapping")),
            as_double(require(j, "angle", "mapping"), "mapping.angle"),
            domain);
      }
      if (kind == "scaled_reflection") {
        return Mapping::scaled_reflection(
            vector_from_json(require(j, "center", "mapping")),
            as_double(require(j, "factor", "mapping"), "mapping.factor"),
            domain);
      }
      if (kind == "affine") {
        return Mapping::affine(
            matrix_from_json(require(j, "matrix", "mapping"),
                             "mapping.matrix"),
            vector_from_json(require(j, "offset", "mapping")), domain);
      }
      if (kind == "composite") {
        const Json& parts = require(j, "parts", "mapping");
        if (!parts.is_array() || parts.empty()) {
          throw SpecError("mapping.parts: expected a nonempty array");
        }
        std::vector<Mapping> inner;
        for (const auto& p : parts) {
          inner.push_back(mapping_from_json_impl(p, domain));
        }
        return Mapping::composite(std::move(inner), domain);
      }
      throw SpecError("unknown mapping kind: " + kind);
    }();
    if (j.contains("claimed_class")) {
      const Json& c = j.at("claimed_class");
      m.set_claimed_class(GhybParams{
          as_double(require(c, "alpha", "claimed_class"), "claimed_class"),
          as_double(require(c, "beta", "claimed_class"), "claimed_class")});
    }
    return m;
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(std::string("mapping: ") + e.what());
  }
}

Bifunction bifunction_from_json_impl(
    const Json& j, const std::optional<ConvexSet>& fallback) {
  std::string family =
      as_string(require(j, "family", "bifunction"), "bifunction.family");
  ConvexSet domain = domain_for(j, fallback, "bifunction");
  try {
    if (family == "zero") return Bifunction::zero(domain);
    if (family == "affine_vi") {
      return Bifunction::affine_vi(
          matrix_from_json(require(j, "matrix", "bifunction"),
                           "bifunction.matrix"),
          vector_from_json(require(j, "offset", "bifunction")), domain);
    }
    if (family == "convex_gap") {
      const Json& g = require(j, "g", "bifunction");
      std::string gkind = as_string(require(g, "kind", "bifunction.g"),
                                    "bifunction.g.kind");
      if (gkind == "norm_square") {
        return Bifunction::convex_gap(QuadraticForm::norm_square(domain.dim()),
                                      domain);
      }
      if (gkind == "quadratic") {
        QuadraticForm form{
            matrix_from_json(require(g, "matrix", "bifunction.g"),
                             "bifunction.g.matrix"),
            g.contains("offset") ? vector_from_json(g.at("offset"))
                                 : Vector::zeros(domain.dim())};
        return Bifunction::convex_gap(std::move(form), domain);
      }
      throw SpecError("unknown convex-gap function kind: " + gkind);
    }
    if (family == "custom") {
      throw SpecError(
          "bifunction: custom evaluators cannot be expressed in spec files");
    }
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(std::string("bifunction: ") + e.what());
  }
  throw SpecError("unknown bifunction family: " + family);
}

}  // namespace

Mapping mapping_from_json(const Json& j) {
  return mapping_from_json_impl(j, std::nullopt);
}

Bifunction bifunction_from_json(const Json& j) {
  return bifunction_from_json_impl(j, std::nullopt);
}

Json to_json(const Bifunction& f) {
  Json j;
  switch (f.family()) {
    case BifunctionFamily::Zero:
      j["family"] = "zero";
      break;
    case BifunctionFamily::AffineVI: {
      const auto& d = std::get<AffineVIData>(f.data());
      j["family"] = "affine_vi";
      j["matrix"] = matrix_to_json(d.matrix);
      j["offset"] = to_json(d.offset);
      break;
    }
    case BifunctionFamily::ConvexGap: {
      const auto& d = std::get<ConvexGapData>(f.data());
      j["family"] = "convex_gap";
      j["g"] = Json{{"kind", "quadratic"},
                    {"matrix", matrix_to_json(d.g.Q)},
                    {"offset", to_json(d.g.c)}};
      break;
    }
    case BifunctionFamily::Custom:
      j["family"] = "custom";
      break;
  }
  j["domain"] = to_json(f.domain());
  return j;
}

namespace {

SequenceSpec sequence_from_json(const Json& j, const std::string& ctx) {
  std::string kind = as_string(require(j, "kind", ctx), ctx + ".kind");
  if (kind == "constant") {
    return SequenceSpec::constant(as_double(require(j, "value", ctx), ctx));
  }
  if (kind == "harmonic") {
    return SequenceSpec::harmonic(as_double(require(j, "base", ctx), ctx),
                                  as_double(require(j, "coeff", ctx), ctx));
  }
  if (kind == "geometric") {
    return SequenceSpec::geometric(as_double(require(j, "base", ctx), ctx),
                                   as_double(require(j, "coeff", ctx), ctx),
                                   as_double(require(j, "ratio", ctx), ctx));
  }
  throw SpecError(ctx + ": unknown sequence kind: " + kind);
}

Json sequence_to_json(const SequenceSpec& s) {
  switch (s.kind) {
    case SequenceSpec::Kind::Constant:
      return Json{{"kind", "constant"}, {"value", s.base}};
    case SequenceSpec::Kind::Harmonic:
      return Json{{"kind", "harmonic"}, {"base", s.base}, {"coeff", s.coeff}};
    case SequenceSpec::Kind::Geometric:
      return Json{{"kind", "geometric"},
                  {"base", s.base},
                  {"coeff", s.coeff},
                  {"ratio", s.ratio}};
  }
  throw ValidationError("sequence_to_json: unknown kind");
}

}  // namespace

Json to_json(const Schedule& s) {
  Json j;
  j["alpha"] = sequence_to_json(s.alpha);
  j["beta"] = sequence_to_json(s.beta);
  j["r"] = sequence_to_json(s.r);
  j["bounds"] = Json{{"alpha_low", s.bounds.alpha_low},
                     {"beta_low", s.bounds.beta_low},
                     {"beta_high", s.bounds.beta_high},
                     {"r_low", s.bounds.r_low}};
  return j;
}

Schedule schedule_from_json(const Json& j) {
  Schedule s;
  s.alpha = sequence_from_json(require(j, "alpha", "schedule"), "schedule.alpha");
  s.beta = sequence_from_json(require(j, "beta", "schedule"), "schedule.beta");
  s.r = sequence_from_json(require(j, "r", "schedule"), "schedule.r");
  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    if (b.contains("alpha_low")) {
      s.bounds.alpha_low = as_double(b.at("alpha_low"), "bounds.alpha_low");
    }
    if (b.contains("beta_low")) {
      s.bounds.beta_low = as_double(b.at("beta_low"), "bounds.beta_low");
    }
    if (b.contains("beta_high")) {
      s.bounds.beta_high = as_double(b.at("beta_high"), "bounds.beta_high");
    }
    if (b.contains("r_low")) {
      s.bounds.r_low = as_double(b.at("r_low"), "bounds.r_low");
    }
  }
  return s;
}

Json to_json(const StopRule& s) {
  return Json{{"max_iter", s.max_iter}, {"residual_tol", s.residual_tol}};
}

StopRule stop_from_json(const Json& j) {
  StopRule s;
  s.max_iter = as_long(require(j, "max_iter", "stop"), "stop.max_iter");
  s.residual_tol =
      as_double(require(j, "residual_tol", "stop"), "stop.residual_tol");
  return s;
}

Json to_json(const Problem& p) {
  Json j;
  j["set"] = to_json(p.set);
  j["mapping"] = to_json(p.mapping);
  j["bifunction"] = to_json(p.bifunction);
  if (p.known_solution) j["known_solution"] = to_json(*p.known_solution);
  if (p.known_solution_set) {
    j["known_solution_set"] = to_json(*p.known_solution_set);
  }
  return j;
}

Problem problem_from_json(const Json& j) {
  const Json* set_j = find(j, {"set", "E"});
  if (!set_j) throw SpecError("problem: missing key 'set'");
  ConvexSet set = set_from_json(*set_j);

  const Json* map_j = find(j, {"mapping", "S"});
  if (!map_j) throw SpecError("problem: missing key 'mapping'");
  Mapping mapping = mapping_from_json_impl(*map_j, set);

  const Json* bif_j = find(j, {"bifunction", "f"});
  if (!bif_j) throw SpecError("problem: missing key 'bifunction'");
  Bifunction bifunction = bifunction_from_json_impl(*bif_j, set);

  Problem p{std::move(set), std::move(mapping), std::move(bifunction),
            std::nullopt, std::nullopt};
  if (j.contains("known_solution")) {
    p.known_solution = vector_from_json(j.at("known_solution"));
  }
  if (j.contains("known_solution_set")) {
    p.known_solution_set = set_from_json(j.at("known_solution_set"));
  }
  return p;
}

Json to_json(const ExperimentSpec& s) {
  Json j;
  j["problem"] = to_json(s.problem);
  j["scheme"] = scheme_name(s.scheme);
  j["schedule"] = to_json(s.schedule);
  j["stop"] = to_json(s.stop);
  j["x1"] = to_json(s.x1);
  j["seed"] = s.seed;
  j["outputs"] = s.outputs;
  return j;
}

ExperimentSpec experiment_from_json(const Json& j) {
  ExperimentSpec spec{problem_from_json(require(j, "problem", "experiment"))};
  spec.scheme = scheme_from_name(
      as_string(require(j, "scheme", "experiment"), "experiment.scheme"));
  spec.schedule = schedule_from_json(require(j, "schedule", "experiment"));
  spec.stop = stop_from_json(require(j, "stop", "experiment"));
  spec.x1 = vector_from_json(require(j, "x1", "experiment"));
  if (j.contains("seed")) {
    spec.seed =
        static_cast<std::uint64_t>(as_long(j.at("seed"), "experiment.seed"));
  }
  if (j.contains("outputs")) {
    for (const auto& o : j.at("outputs")) {
      spec.outputs.push_back(as_string(o, "experiment.outputs"));
    }
  } else {
    spec.outputs = {"trace-csv"};
  }
  for (const auto& o : spec.outputs) {
    if (o != "trace-csv" && o != "trace-json" && o != "report-json" &&
        o != "plotdata-csv") {
      throw SpecError("experiment.outputs: unknown output '" + o + "'");
    }
  }
  return spec;
}

CompareSpec compare_from_json(const Json& j) {
  CompareSpec spec{problem_from_json(require(j, "problem", "compare"))};
  const Json& schemes = require(j, "schemes", "compare");
  if (!schemes.is_array() || schemes.empty()) {
    throw SpecError("compare.schemes: expected a nonempty array");
  }
  for (const auto& s : schemes) {
    spec.schemes.push_back(scheme_from_name(as_string(s, "compare.schemes")));
  }
  spec.schedule = schedule_from_json(require(j, "schedule", "compare"));
  spec.stop = stop_from_json(require(j, "stop", "compare"));
  spec.x1 = vector_from_json(require(j, "x1", "compare"));
  if (j.contains("seed")) {
    spec.seed =
        static_cast<std::uint64_t>(as_long(j.at("seed"), "compare.seed"));
  }
  return spec;
}

MappingCheckSpec mapping_check_from_json(const Json& j) {
  MappingCheckSpec spec{mapping_from_json(require(j, "mapping", "check")), {}};
  const Json& classes = require(j, "classes", "check");
  if (!classes.is_array() || classes.empty()) {
    throw SpecError("check.classes: expected a nonempty array");
  }
  for (const auto& c : classes) {
    MappingCheckSpec::Entry entry{
        class_from_name(as_string(require(c, "class", "check.classes"),
                                  "check.classes.class")),
        0.0, 0.0, std::nullopt};
    if (entry.cls == OperatorClass::GeneralizedHybrid) {
      entry.alpha = as_double(require(c, "alpha", "check.classes"),
                              "check.classes.alpha");
      entry.beta =
          as_double(require(c, "beta", "check.classes"), "check.classes.beta");
    }
    if (entry.cls == OperatorClass::QuasiNonexpansive) {
      entry.fixed_point =
          vector_from_json(require(c, "fixed_point", "check.classes"));
    }
    spec.classes.push_back(entry);
  }
  if (j.contains("seed")) {
    spec.seed = static_cast<std::uint64_t>(as_long(j.at("seed"), "check.seed"));
  }
  if (j.contains("n_pairs")) {
    spec.n_pairs = as_long(j.at("n_pairs"), "check.n_pairs");
  }
  if (j.contains("tol")) spec.tol = as_double(j.at("tol"), "check.tol");
  if (j.contains("sampler")) spec.sampler = sampler_from_json(j.at("sampler"));
  return spec;
}

BifunctionCheckSpec bifunction_check_from_json(const Json& j) {
  BifunctionCheckSpec spec{
      bifunction_from_json(require(j, "bifunction", "check"))};
  if (j.contains("seed")) {
    spec.seed = static_cast<std::uint64_t>(as_long(j.at("seed"), "check.seed"));
  }
  if (j.contains("n_samples")) {
    spec.n_samples = as_long(j.at("n_samples"), "check.n_samples");
  }
  if (j.contains("t_grid")) {
    spec.t_grid.clear();
    for (const auto& t : j.at("t_grid")) {
      spec.t_grid.push_back(as_double(t, "check.t_grid"));
    }
  }
  if (j.contains("tol")) spec.tol = as_double(j.at("tol"), "check.tol");
  if (j.contains("sampler")) spec.sampler = sampler_from_json(j.at("sampler"));
  return spec;
}

ResolventSpec resolvent_spec_from_json(const Json& j) {
  const Json* bif_j = find(j, {"bifunction", "f"});
  if (!bif_j) throw SpecError("resolvent: missing key 'bifunction'");
  const Json* set_j = find(j, {"set", "E"});
  if (!set_j) throw SpecError("resolvent: missing key 'set'");
  ConvexSet set = set_from_json(*set_j);
  ResolventSpec spec{bifunction_from_json_impl(*bif_j, set), set, 1.0,
                     Vector::zeros(set.dim())};
  if (const Json* r = find(j, {"r"})) {
    spec.r = as_double(*r, "resolvent.r");
  }
  if (const Json* x = find(j, {"x"})) {
    spec.x = vector_from_json(*x);
  }
  if (j.contains("strategy")) {
    spec.strategy =
        strategy_from_name(as_string(j.at("strategy"), "resolvent.strategy"));
  }
  if (j.contains("inner")) spec.inner = inner_from_json(j.at("inner"));
  if (j.contains("verify")) spec.verify = verify_from_json(j.at("verify"));
  return spec;
}

CertifySpec certify_spec_from_json(const Json& j) {
  CertifySpec spec{problem_from_json(require(j, "problem", "certify")), {}};
  if (j.contains("options")) {
    const Json& o = j.at("options");
    auto maybe = [&](const char* key, double& out) {
      if (o.contains(key)) out = as_double(o.at(key), std::string("certify.") + key);
    };
    maybe("fejer_tol", spec.options.fejer_tol);
    maybe("descent_tol", spec.options.descent_tol);
    maybe("contraction_tol", spec.options.contraction_tol);
    maybe("residual_tol", spec.options.residual_tol);
    maybe("limit_tol", spec.options.limit_tol);
    maybe("tail_fraction", spec.options.tail_fraction);
    maybe("cluster_radius", spec.options.cluster_radius);
    maybe("projection_tol", spec.options.projection_tol);
    maybe("limit_point_tol", spec.options.limit_point_tol);
    if (o.contains("residual_window")) {
      spec.options.residual_window =
          as_long(o.at("residual_window"), "certify.residual_window");
    }
    if (o.contains("seed")) {
      spec.options.seed =
          static_cast<std::uint64_t>(as_long(o.at("seed"), "certify.seed"));
    }
    if (o.contains("membership_samples")) {
      spec.options.membership_samples =
          as_long(o.at("membership_samples"), "certify.membership_samples");
    }
  }
  return spec;
}

Json to_json(const ClassReport& r) {
  Json j;
  j["class_name"] = r.class_name;
  j["pairs_tested"] = r.pairs_tested;
  j["worst_residual"] = r.worst_residual;
  j["worst_violation"] = r.worst_violation;
  j["verdict"] = r.consistent ? "consistent" : "violated";
  if (r.witness) {
    j["witness"] = Json{{"x", to_json(r.witness->first)},
                        {"y", to_json(r.witness->second)}};
  }
  return j;
}

Json to_json(const AxiomReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["axiom"] = c.axiom;
    e["pass"] = c.pass;
    e["worst"] = c.worst;
    if (!c.witness.empty()) {
      Json pts = Json::array();
      for (const auto& p : c.witness) pts.push_back(to_json(p));
      e["witness"] = std::move(pts);
    }
    checks.push_back(std::move(e));
  }
  return Json{
      {"checks", std::move(checks)}, {"all_pass", r.all_pass},
      {"samples", r.samples}};
}

Json to_json(const ResolventResult& r) {
  Json j;
  j["z"] = to_json(r.z);
  j["achieved_residual"] = r.achieved_residual;
  j["inner_iterations"] = r.inner_iterations;
  j["strategy"] = strategy_name(r.strategy_used);
  j["converged"] = r.converged;
  return j;
}

Json to_json(const CertificateReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["worst_index"] = c.worst_index;
    e["worst_margin"] = c.worst_margin;
    e["tol"] = c.tol;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  return Json{{"checks", std::move(checks)}, {"verdict", r.verdict}};
}

Json to_json(const Trace& t) {
  Json records = Json::array();
  for (const auto& rec : t.records) {
    Json r;
    r["n"] = rec.n;
    r["x"] = to_json(rec.x);
    r["u"] = to_json(rec.u);
    r["y"] = to_json(rec.y);
    r["alpha_n"] = rec.alpha;
    r["beta_n"] = rec.beta;
    r["r_n"] = rec.r;
    r["res_x_Su"] = rec.res_x_su;
    r["res_y_x"] = rec.res_y_x;
    r["res_x_u"] = rec.res_x_u;
    r["res_u_Su"] = rec.res_u_su;
    if (rec.dist_q) r["dist_q"] = *rec.dist_q;
    records.push_back(std::move(r));
  }
  Json j;
  j["scheme"] = scheme_name(t.scheme);
  j["status"] = terminal_status_name(t.status);
  if (!t.failure_detail.empty()) j["failure_detail"] = t.failure_detail;
  j["final_x"] = to_json(t.final_x);
  j["records"] = std::move(records);
  return j;
}

Trace trace_from_json(const Json& j) {
  Trace t;
  t.scheme = scheme_from_name(
      as_string(require(j, "scheme", "trace"), "trace.scheme"));
  t.status = terminal_status_from_name(
      as_string(require(j, "status", "trace"), "trace.status"));
  if (j.contains("failure_detail")) {
    t.failure_detail = as_string(j.at("failure_detail"), "trace.failure_detail");
  }
  t.final_x = vector_from_json(require(j, "final_x", "trace"));
  const Json& records = require(j, "records", "trace");
  if (!records.is_array()) throw SpecError("trace.records: expected an array");
  long expected = 1;
  for (const auto& r : records) {
    TraceRecord rec;
    rec.n = as_long(require(r, "n", "trace.record"), "trace.record.n");
    if (rec.n != expected) {
      throw SpecError("trace.records must be contiguous from n = 1");
    }
    ++expected;
    rec.x = vector_from_json(require(r, "x", "trace.record"));
    rec.u = vector_from_json(require(r, "u", "trace.record"));
    rec.y = vector_from_json(require(r, "y", "trace.record"));
    rec.alpha = as_double(require(r, "alpha_n", "trace.record"), "alpha_n");
    rec.beta = as_double(require(r, "beta_n", "trace.record"), "beta_n");
    rec.r = as_double(require(r, "r_n", "trace.record"), "r_n");
    rec.res_x_su =
        as_double(require(r, "res_x_Su", "trace.record"), "res_x_Su");
    rec.res_y_x = as_double(require(r, "res_y_x", "trace.record"), "res_y_x");
    rec.res_x_u = as_double(require(r, "res_x_u", "trace.record"), "res_x_u");
    rec.res_u_su =
        as_double(require(r, "res_u_Su", "trace.record"), "res_u_Su");
    if (r.contains("dist_q")) {
      rec.dist_q = as_double(r.at("dist_q"), "dist_q");
    }
    t.records.push_back(std::move(rec));
  }
  return t;
}

Json to_json(const std::vector<CompareRow>& rows) {
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json j;
    j["scheme"] = scheme_name(row.scheme);
    j["ran"] = row.ran;
    if (row.ran) {
      j["status"] = terminal_status_name(row.status);
      j["iterations"] = row.iterations;
      j["final_res_x_Su"] = row.final_res_x_su;
      j["final_res_y_x"] = row.final_res_y_x;
      j["final_res_x_u"] = row.final_res_x_u;
      j["final_res_u_Su"] = row.final_res_u_su;
      if (row.final_dist) j["final_dist_q"] = *row.final_dist;
    }
    if (!row.error.empty()) j["error"] = row.error;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace epfp
