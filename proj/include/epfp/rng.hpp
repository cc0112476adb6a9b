#pragma once

#include <cstdint>
#include <random>

#include "epfp/convex_set.hpp"
#include "epfp/vector.hpp"

namespace epfp {

/// Deterministic random source. The uniform draw is derived from the raw
/// 64-bit stream directly so that identical seeds give identical sequences on
/// every platform, independent of the standard library's distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller on the portable uniform stream.
  double gaussian();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct SamplerOptions {
  /// Half-width of the sampling box used where the set gives no finite bounds.
  double fallback_halfwidth = 10.0;
  /// Rejection attempts allowed per accepted point.
  int attempt_cap = 100;
};

Vector sample_in_box(Rng& rng, const Vector& lower, const Vector& upper);

/// Draws a point of E. Positive-volume kinds use rejection inside the set's
/// bounding (or fallback) box, balls are sampled directly, and zero-volume
/// kinds project a box sample onto the set. Throws SamplerError when the
/// attempt cap is exhausted without a feasible draw.
Vector sample_point(const ConvexSet& E, Rng& rng,
                    const SamplerOptions& opt = SamplerOptions{});

}  // namespace epfp
