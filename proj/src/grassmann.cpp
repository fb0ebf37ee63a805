#include "gcflow/grassmann.hpp"

namespace gcflow {

OrientedPlane::OrientedPlane(const Quaternion& f1, const Quaternion& f2) : f1_(f1), f2_(f2) {
  if (std::abs(f1.norm() - 1.0) > 1e-10 || std::abs(f2.norm() - 1.0) > 1e-10 || std::abs(dot(f1, f2)) > 1e-10) {
    throw Error(ErrorCode::InvalidFrame, "plane frame is not orthonormal");
  }
}

Quaternion grass_involution(const GrassPoint& g, const Quaternion& x) { return -(g.m.q() * x * g.n.q()); }

double plane_residual(const GrassPoint& g, const Quaternion& x) {
  return distance(g.m.q() * x, x * g.n.q());
}

OrientedPlane plane_from_pair(const GrassPoint& g) {
  // Projector onto the +1 eigenspace is (Id + T)/2. The four basis vectors
  // have squared projections summing to 2, so one of them projects to
  // length at least 1/√2; take the first above 1/2.
  for (int k = 0; k < 4; ++k) {
    const Quaternion e = Quaternion::basis(k);
    const Quaternion proj = (e + grass_involution(g, e)) * 0.5;
    const double len = proj.norm();
    if (len > 0.5) {
      const Quaternion f1 = proj / len;
      Quaternion f2 = g.m.q() * f1;
      f2 = f2 - f1 * dot(f2, f1);
      return OrientedPlane(f1, f2 / f2.norm());
    }
  }
  throw Error(ErrorCode::Degenerate, "no basis vector projects onto the eigenspace");
}

GrassPoint pair_from_plane(const OrientedPlane& plane) {
  auto [m, n] = wedge_split(plane.f1(), plane.f2());
  return GrassPoint{m, n};
}

SpherePoint3 circle_point(const GrassPoint& g, const SpherePoint3& x0, double t) {
  if (plane_residual(g, x0.q()) > kFrameTol) {
    throw Error(ErrorCode::OffPlane, "base point does not lie on the plane");
  }
  return UnitQuaternion::normalize(x0.q() * std::cos(t) + (g.m.q() * x0.q()) * std::sin(t));
}

}  // namespace gcflow
