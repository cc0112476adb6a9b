#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "epfp/mapping.hpp"
#include "epfp/rng.hpp"

namespace epfp {

enum class OperatorClass {
  FirmlyNonexpansive,
  Nonexpansive,
  Nonspreading,
  Hybrid,
  GeneralizedHybrid,
  QuasiNonexpansive,
};

std::string operator_class_name(OperatorClass c);

/// Outcome of sampling a class-defining inequality over random pairs.
/// A consistent verdict is statistical evidence only; a violated verdict
/// carries an exact witness pair.
struct ClassReport {
  std::string class_name;
  long pairs_tested = 0;
  double worst_residual = 0.0;   // max over pairs of (LHS - RHS)
  double worst_violation = 0.0;  // worst_residual - tol; <= 0 iff consistent
  bool consistent = true;
  std::optional<std::pair<Vector, Vector>> witness;  // set when violated
};

/// LHS - RHS of the defining inequality of `cls` at (x, y). alpha/beta are
/// consulted only for GeneralizedHybrid.
double class_residual(const Mapping& S, OperatorClass cls, const Vector& x,
                      const Vector& y, double alpha = 0.0, double beta = 0.0);

/// Evaluates the class inequality on n_pairs pairs drawn from the mapping's
/// domain. Deterministic in the seed; the verdict depends only on the max
/// residual, never on evaluation order.
ClassReport classify(const Mapping& S, OperatorClass cls, std::uint64_t seed,
                     long n_pairs, double tol, double alpha = 0.0,
                     double beta = 0.0,
                     const SamplerOptions& sampler = SamplerOptions{});

/// Checks ||p - Sy|| <= ||p - y|| + tol on sampled y; p must be a fixed point
/// of S within tol.
ClassReport quasi_nonexpansive_report(const Mapping& S, const Vector& p,
                                      std::uint64_t seed, long n_points,
                                      double tol,
                                      const SamplerOptions& sampler =
                                          SamplerOptions{});

}  // namespace epfp
