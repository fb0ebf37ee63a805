#pragma once

// Oriented 2-planes of R^4 as points (m, n) of S^2_- x S^2_+.
//
// The plane labelled (m, n) is {x : m·x = x·n}, the +1 eigenspace of the
// involution x ↦ −m·x·n, oriented by (x, m·x). Its great circle through x0 is
// t ↦ exp(t m)·x0 = x0·exp(t n).

#include "gcflow/quat.hpp"

namespace gcflow {

class OrientedPlane {
 public:
  OrientedPlane(const Quaternion& f1, const Quaternion& f2);

  const Quaternion& f1() const { return f1_; }
  const Quaternion& f2() const { return f2_; }
  /// Orthogonal projection of x onto the plane.
  Quaternion project(const Quaternion& x) const { return f1_ * dot(x, f1_) + f2_ * dot(x, f2_); }

 private:
  Quaternion f1_, f2_;
};

struct GrassPoint {
  ImagUnitQuaternion m;  // S^2_- factor
  ImagUnitQuaternion n;  // S^2_+ factor
};

/// x ↦ −m·x·n.
Quaternion grass_involution(const GrassPoint& g, const Quaternion& x);

/// ‖m·x − x·n‖; zero iff x lies in the plane of g.
double plane_residual(const GrassPoint& g, const Quaternion& x);

OrientedPlane plane_from_pair(const GrassPoint& g);
GrassPoint pair_from_plane(const OrientedPlane& plane);

/// Point of the great circle of g through x0 at arc length t.
SpherePoint3 circle_point(const GrassPoint& g, const SpherePoint3& x0, double t);

}  // namespace gcflow
