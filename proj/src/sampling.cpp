#include "gcflow/sampling.hpp"

#include <cmath>
#include <numbers>

namespace gcflow {

double Rng::normal() {
  // Box-Muller; u1 in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SpherePoint3 random_sphere3(Rng& rng) {
  for (;;) {
    const Quaternion q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    if (q.norm() > 1e-6) return UnitQuaternion::normalize(q);
  }
}

ImagUnitQuaternion random_sphere2(Rng& rng) {
  for (;;) {
    const Quaternion q{0.0, rng.normal(), rng.normal(), rng.normal()};
    if (q.norm() > 1e-6) return ImagUnitQuaternion::normalize(q);
  }
}

Quaternion random_tangent(Rng& rng, const SpherePoint3& p, const std::vector<Quaternion>& avoid) {
  for (;;) {
    Quaternion v{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    v -= p.q() * dot(v, p.q());
    for (const auto& a : avoid) v -= a * (dot(v, a) / a.norm2());
    const double n = v.norm();
    if (n > 1e-6) return v / n;
  }
}

std::vector<CoveredPoint> sample_covered_points(const FibrationMap& f, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CoveredPoint> out;
  out.reserve(count);
  for (const auto& a : domain_samples(f, count, kSampleShrink)) {
    const GrassPoint g = graph_point(f, a);
    const OrientedPlane plane = plane_from_pair(g);
    const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    out.push_back({circle_point(g, UnitQuaternion::normalize(plane.f1()), t), a});
  }
  return out;
}

}  // namespace gcflow
