#include "gcflow/flowlab.hpp"

#include <cmath>

namespace gcflow {

SMPoint::SMPoint(const SpherePoint3& p, const Quaternion& v) : p_(p), v_(v) {
  if (std::abs(dot(p.q(), v)) > 1e-10 || std::abs(v.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidFrame, "(p, v) is not a unit tangent vector");
  }
}

void check_ker_alpha(const SMPoint& q, const KerAlphaVector& xi) {
  const double scale = std::max(1.0, xi.norm());
  for (const Quaternion* c : {&xi.xiH, &xi.xiV}) {
    if (std::abs(dot(*c, q.p().q())) > 1e-10 * scale || std::abs(dot(*c, q.v())) > 1e-10 * scale) {
      throw Error(ErrorCode::NotPerpendicular, "vector is not in ker(alpha) = H + V");
    }
  }
}

SMPoint geodesic_flow(const SMPoint& q, double t) {
  const double c = std::cos(t), s = std::sin(t);
  const Quaternion& p = q.p().q();
  const Quaternion& v = q.v();
  return SMPoint(UnitQuaternion::normalize(p * c + v * s), -p * s + v * c);
}

KerAlphaVector dflow_ker_alpha(const SMPoint& q, const KerAlphaVector& xi, double t) {
  check_ker_alpha(q, xi);
  const double c = std::cos(t), s = std::sin(t);
  return {xi.xiH * c + xi.xiV * s, -xi.xiH * s + xi.xiV * c};
}

const char* to_string(Acs which) { return which == Acs::J ? "J" : "JJ"; }

KerAlphaVector apply_acs(const SMPoint& q, const KerAlphaVector& xi, Acs which) {
  check_ker_alpha(q, xi);
  if (which == Acs::J) return {-xi.xiV, xi.xiH};
  const Quaternion& p = q.p().q();
  return {cross3(p, q.v(), xi.xiH), cross3(p, q.v(), xi.xiV)};
}

double dalpha(const SMPoint& q, const KerAlphaVector& xi, const KerAlphaVector& eta) {
  check_ker_alpha(q, xi);
  check_ker_alpha(q, eta);
  return dot(xi.xiV, eta.xiH) - dot(xi.xiH, eta.xiV);
}

KerAlphaVector pushforward(const ShapeOperator& s, const Quaternion& u) {
  const double c1 = dot(u, s.frame.u1), c2 = dot(u, s.frame.u2);
  const Eigen::Vector2d bu = s.B * Eigen::Vector2d(c1, c2);
  return {u, s.frame.u1 * bu(0) + s.frame.u2 * bu(1)};
}

double E_membership_defect(const ShapeOperator& s, const KerAlphaVector& xi) {
  const Eigen::Vector2d h(dot(xi.xiH, s.frame.u1), dot(xi.xiH, s.frame.u2));
  const Eigen::Vector2d v(dot(xi.xiV, s.frame.u1), dot(xi.xiV, s.frame.u2));
  return (v - s.B * h).norm();
}

double E_membership_defect(const FibrationMap& f, const SpherePoint3& p, const KerAlphaVector& xi,
                           std::optional<ImagUnitQuaternion> seed) {
  const ShapeOperator s = shape_operator(f, p, seed);
  check_ker_alpha(SMPoint(p, s.frame.X), xi);
  return E_membership_defect(s, xi);
}

double commutation_defect(const SMPoint& q, const KerAlphaVector& xi, double t, Acs which) {
  if (t == 0.0) return 0.0;
  const SMPoint qt = geodesic_flow(q, t);
  const KerAlphaVector lhs = dflow_ker_alpha(q, apply_acs(q, xi, which), t);
  const KerAlphaVector rhs = apply_acs(qt, dflow_ker_alpha(q, xi, t), which);
  return (lhs - rhs).norm();
}

std::pair<KerAlphaVector, KerAlphaVector> spiral_vectors(const SMPoint& q) {
  const Quaternion& p = q.p().q();
  for (int k = 0; k < 4; ++k) {
    const Quaternion e = Quaternion::basis(k);
    const Quaternion t = e - p * dot(e, p) - q.v() * dot(e, q.v());
    const double len = t.norm();
    if (len > 0.5) {
      const Quaternion w1 = t / len;
      Quaternion w2 = cross3(p, q.v(), w1);
      w2 = w2 / w2.norm();
      return {KerAlphaVector{w1, w2}, KerAlphaVector{w1, -w2}};
    }
  }
  throw Error(ErrorCode::Degenerate, "no vector transverse to the flow plane");
}

namespace {

GrassPoint plane_at(const SMPoint& q, const KerAlphaVector& xi, double s) {
  const Quaternion a = q.p().q() + xi.xiH * s;
  Quaternion b = q.v() + xi.xiV * s;
  const Quaternion f1 = a / a.norm();
  b = b - f1 * dot(b, f1);
  return pair_from_plane(OrientedPlane(f1, b / b.norm()));
}

int rotation_sense(const Quaternion& point, const Quaternion& from, const Quaternion& to) {
  const double scale = from.norm() * to.norm();
  const double turn = dot(cross_imag(point, from), to);
  if (!(std::abs(turn) > 0.5 * scale)) {
    throw Error(ErrorCode::Degenerate, "structure does not act as a quarter turn on this factor");
  }
  return turn > 0.0 ? 1 : -1;
}

}  // namespace

std::pair<Quaternion, Quaternion> grassmann_tangent(const SMPoint& q, const KerAlphaVector& xi, double ds) {
  check_ker_alpha(q, xi);
  const GrassPoint plus = plane_at(q, xi, ds);
  const GrassPoint minus = plane_at(q, xi, -ds);
  return {(plus.m.q() - minus.m.q()) / (2.0 * ds), (plus.n.q() - minus.n.q()) / (2.0 * ds)};
}

ChiralityWitness chirality_witness(const SMPoint& q, S3Orientation orientation, double ds) {
  const GrassPoint base = plane_at(q, KerAlphaVector{}, 0.0);
  const auto [xi, xi_prime] = spiral_vectors(q);
  const auto t_xi = grassmann_tangent(q, xi, ds);
  const auto t_xp = grassmann_tangent(q, xi_prime, ds);

  // Each spiral moves a single factor; pick the one that moves S^2_- (resp. S^2_+).
  const bool xi_moves_minus = t_xi.first.norm() > t_xi.second.norm();
  const KerAlphaVector& minus_spiral = xi_moves_minus ? xi : xi_prime;
  const KerAlphaVector& plus_spiral = xi_moves_minus ? xi_prime : xi;
  const Quaternion minus_tangent = xi_moves_minus ? t_xi.first : t_xp.first;
  const Quaternion plus_tangent = xi_moves_minus ? t_xp.second : t_xi.second;
  if (minus_tangent.norm() < 0.5 || plus_tangent.norm() < 0.5) {
    throw Error(ErrorCode::Degenerate, "spiral variations do not separate the factors");
  }

  auto sense = [&](Acs which, bool on_minus) {
    const KerAlphaVector& spiral = on_minus ? minus_spiral : plus_spiral;
    KerAlphaVector image = apply_acs(q, spiral, which);
    if (which == Acs::JJ && orientation == S3Orientation::OutwardLast) image = image * -1.0;
    const auto moved = grassmann_tangent(q, image, ds);
    const Quaternion& along = on_minus ? moved.first : moved.second;
    const Quaternion& across = on_minus ? moved.second : moved.first;
    if (across.norm() > 1e-6 * along.norm() + 1e-8) {
      throw Error(ErrorCode::Degenerate, "structure mixes the two factors");
    }
    return on_minus ? rotation_sense(base.m.q(), minus_tangent, along)
                    : rotation_sense(base.n.q(), plus_tangent, along);
  };
  return ChiralityWitness{sense(Acs::J, true), sense(Acs::J, false), sense(Acs::JJ, true), sense(Acs::JJ, false)};
}

}  // namespace gcflow
