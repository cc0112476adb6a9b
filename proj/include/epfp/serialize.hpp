#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epfp/classifier.hpp"
#include "epfp/diagnostics.hpp"
#include "epfp/resolvent.hpp"
#include "epfp/scheme.hpp"

#include <json.hpp>

namespace epfp {

using Json = nlohmann::ordered_json;

/// Declarative description of one experiment: a problem, a scheme, its
/// schedule, a stop rule, the start point, and the artifacts to emit.
/// Identical specs yield byte-identical outputs.
struct ExperimentSpec {
  Problem problem;
  SchemeKind scheme = SchemeKind::ResolventIshikawa;
  Schedule schedule{};
  StopRule stop{};
  Vector x1;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;  // trace-csv | trace-json | report-json |
                                     // plotdata-csv
};

struct CompareSpec {
  Problem problem;
  std::vector<SchemeKind> schemes;
  Schedule schedule{};
  StopRule stop{};
  Vector x1;
  std::uint64_t seed = 0;
};

struct MappingCheckSpec {
  Mapping mapping;
  struct Entry {
    OperatorClass cls;
    double alpha = 0.0, beta = 0.0;   // GeneralizedHybrid only
    std::optional<Vector> fixed_point;  // QuasiNonexpansive only
  };
  std::vector<Entry> classes;
  std::uint64_t seed = 1;
  long n_pairs = 1000;
  double tol = 1e-8;
  SamplerOptions sampler{};
};

struct BifunctionCheckSpec {
  Bifunction bifunction;
  std::uint64_t seed = 1;
  long n_samples = 256;
  std::vector<double> t_grid = {0.5, 0.1, 0.01, 0.001};
  double tol = 1e-10;
  SamplerOptions sampler{};
};

struct ResolventSpec {
  Bifunction bifunction;
  ConvexSet set;
  double r = 1.0;
  Vector x;
  ResolventStrategy strategy = ResolventStrategy::Auto;
  InnerParams inner{};
  VerifyParams verify{};
};

struct CertifySpec {
  Problem problem;
  CertifyOptions options{};
};

// emission (ordered keys, stable formatting)
Json to_json(const Vector& v);
Json to_json(const ConvexSet& s);
Json to_json(const Mapping& m);
Json to_json(const Bifunction& f);
Json to_json(const Schedule& s);
Json to_json(const StopRule& s);
Json to_json(const Problem& p);
Json to_json(const ExperimentSpec& s);
Json to_json(const ClassReport& r);
Json to_json(const AxiomReport& r);
Json to_json(const ResolventResult& r);
Json to_json(const CertificateReport& r);
Json to_json(const Trace& t);
Json to_json(const std::vector<CompareRow>& rows);

// parsing (throws SpecError with a path-style message)
Vector vector_from_json(const Json& j);
ConvexSet set_from_json(const Json& j);
Mapping mapping_from_json(const Json& j);
Bifunction bifunction_from_json(const Json& j);
Schedule schedule_from_json(const Json& j);
StopRule stop_from_json(const Json& j);
Problem problem_from_json(const Json& j);
ExperimentSpec experiment_from_json(const Json& j);
CompareSpec compare_from_json(const Json& j);
MappingCheckSpec mapping_check_from_json(const Json& j);
BifunctionCheckSpec bifunction_check_from_json(const Json& j);
ResolventSpec resolvent_spec_from_json(const Json& j);
CertifySpec certify_spec_from_json(const Json& j);
Trace trace_from_json(const Json& j);

Json parse_json(const std::string& text);  // wraps parse errors in SpecError

}  // namespace epfp
