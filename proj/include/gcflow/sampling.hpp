#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gcflow/fibration.hpp"

namespace gcflow {

/// Point of S^3 together with the fibre parameter it was generated from.
struct CoveredPoint {
  SpherePoint3 p;
  ImagUnitQuaternion fibre;  // domain-factor coordinate of the fibre through p
};

/// Seeded generator; doubles are built from the top 53 bits so streams are
/// identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Random point of S^3 (normalized Gaussian).
SpherePoint3 random_sphere3(Rng& rng);
/// Random point of S^2 ⊂ Im H.
ImagUnitQuaternion random_sphere2(Rng& rng);
/// Random unit vector of T_p S^3 orthogonal to every vector in `avoid`.
Quaternion random_tangent(Rng& rng, const SpherePoint3& p, const std::vector<Quaternion>& avoid = {});

inline constexpr double kSampleShrink = 0.99;

/**
 * Points covered by the fibration of f: the domain parameter runs over the
 * low-discrepancy domain sample, each fibre is entered at a uniformly random
 * arc length from the first vector of its plane frame.
 */
std::vector<CoveredPoint> sample_covered_points(const FibrationMap& f, std::size_t count, std::uint64_t seed);

}  // namespace gcflow
