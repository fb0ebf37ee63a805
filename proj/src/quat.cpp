#include "gcflow/quat.hpp"

#include <string>

namespace gcflow {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidFrame: return "invalid-frame";
    case ErrorCode::InvalidUnit: return "invalid-unit";
    case ErrorCode::BaseMismatch: return "base-mismatch";
    case ErrorCode::NotPerpendicular: return "not-perpendicular";
    case ErrorCode::OffPlane: return "off-plane";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Boundary: return "boundary";
    case ErrorCode::Coverage: return "coverage";
    case ErrorCode::Convergence: return "convergence";
    case ErrorCode::EmptySample: return "empty-sample";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

UnitQuaternion::UnitQuaternion(const Quaternion& q) {
  const double n = q.norm();
  if (!(std::abs(n - 1.0) <= kUnitRejectTol)) {
    throw Error(ErrorCode::InvalidUnit, "|q| = " + std::to_string(n) + " is not 1");
  }
  q_ = q / n;
}

UnitQuaternion UnitQuaternion::normalize(const Quaternion& q) {
  const double n = q.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidUnit, "cannot normalize zero quaternion");
  return UnitQuaternion(q / n, Trusted{});
}

ImagUnitQuaternion::ImagUnitQuaternion(const Quaternion& q) {
  if (!(std::abs(q.w) <= kUnitRejectTol)) {
    throw Error(ErrorCode::InvalidUnit, "real part " + std::to_string(q.w) + " is not 0");
  }
  const Quaternion v{0.0, q.x, q.y, q.z};
  const double n = v.norm();
  if (!(std::abs(n - 1.0) <= kUnitRejectTol)) {
    throw Error(ErrorCode::InvalidUnit, "|q| = " + std::to_string(n) + " is not 1");
  }
  q_ = v / n;
}

ImagUnitQuaternion ImagUnitQuaternion::normalize(const Quaternion& q) {
  const Quaternion v{0.0, q.x, q.y, q.z};
  const double n = v.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidUnit, "cannot normalize zero imaginary part");
  return ImagUnitQuaternion(v / n, Trusted{});
}

TangentVector::TangentVector(const SpherePoint3& base, const Quaternion& vec) : base_(base), vec_(vec) {
  const double radial = dot(vec, base.q());
  if (!(std::abs(radial) <= 1e-10 * std::max(1.0, vec.norm()))) {
    throw Error(ErrorCode::NotPerpendicular, "vector is not tangent at its base point");
  }
}

TangentVector TangentVector::project(const SpherePoint3& base, const Quaternion& vec) {
  const Quaternion& p = base.q();
  return TangentVector(base, vec - p * dot(vec, p));
}

ImagUnitQuaternion conjugate_rotate(const UnitQuaternion& p, const ImagUnitQuaternion& a) {
  return ImagUnitQuaternion::normalize(p.q() * a.q() * p.q().conj());
}

UnitQuaternion exp_imag(const ImagUnitQuaternion& a, double t) {
  return UnitQuaternion::normalize(kOne * std::cos(t) + a.q() * std::sin(t));
}

double det4(const Quaternion& a, const Quaternion& b, const Quaternion& c, const Quaternion& d) {
  // Laplace expansion along the first two columns (2x2 minors of rows r<s).
  auto m2 = [](const Quaternion& u, const Quaternion& v, int r, int s) { return u[r] * v[s] - u[s] * v[r]; };
  return m2(a, b, 0, 1) * m2(c, d, 2, 3) - m2(a, b, 0, 2) * m2(c, d, 1, 3) + m2(a, b, 0, 3) * m2(c, d, 1, 2) +
         m2(a, b, 1, 2) * m2(c, d, 0, 3) - m2(a, b, 1, 3) * m2(c, d, 0, 2) + m2(a, b, 2, 3) * m2(c, d, 0, 1);
}

// ---------------------------------------------------------------------------

Bivector Bivector::operator+(const Bivector& o) const {
  Bivector r;
  for (int k = 0; k < 6; ++k) r[k] = (*this)[k] + o[k];
  return r;
}

Bivector Bivector::operator-(const Bivector& o) const {
  Bivector r;
  for (int k = 0; k < 6; ++k) r[k] = (*this)[k] - o[k];
  return r;
}

Bivector Bivector::operator*(double s) const {
  Bivector r;
  for (int k = 0; k < 6; ++k) r[k] = (*this)[k] * s;
  return r;
}

double Bivector::norm() const {
  double s = 0.0;
  for (double v : c) s += v * v;
  return std::sqrt(s);
}

double Bivector::wedge_square() const { return 2.0 * (c[0] * c[3] + c[1] * c[4] + c[2] * c[5]); }

Bivector wedge(const Quaternion& x, const Quaternion& y) {
  auto w = [&](int a, int b) { return x[a] * y[b] - x[b] * y[a]; };
  return Bivector{{w(0, 1), w(0, 2), w(0, 3), w(2, 3), w(3, 1), w(1, 2)}};
}

Bivector hodge_star(const Bivector& w) { return Bivector{{w[3], w[4], w[5], w[0], w[1], w[2]}}; }

std::array<double, 3> self_dual_coords(const Bivector& w) {
  const double s = 1.0 / std::sqrt(2.0);
  return {(w[0] + w[3]) * s, (w[1] + w[4]) * s, (w[2] + w[5]) * s};
}

std::array<double, 3> anti_self_dual_coords(const Bivector& w) {
  const double s = 1.0 / std::sqrt(2.0);
  return {(w[0] - w[3]) * s, (w[1] - w[4]) * s, (w[2] - w[5]) * s};
}

Bivector bivector_from_coords(const std::array<double, 3>& sd, const std::array<double, 3>& asd) {
  const double s = 1.0 / std::sqrt(2.0);
  return Bivector{{(sd[0] + asd[0]) * s, (sd[1] + asd[1]) * s, (sd[2] + asd[2]) * s, (sd[0] - asd[0]) * s,
                   (sd[1] - asd[1]) * s, (sd[2] - asd[2]) * s}};
}

std::pair<ImagUnitQuaternion, ImagUnitQuaternion> wedge_split(const Quaternion& x, const Quaternion& y) {
  if (std::abs(x.norm() - 1.0) > kFrameTol || std::abs(y.norm() - 1.0) > kFrameTol ||
      std::abs(dot(x, y)) > kFrameTol) {
    throw Error(ErrorCode::InvalidFrame, "wedge_split needs an orthonormal pair");
  }
  const Bivector w = wedge(x, y);
  const auto sd = self_dual_coords(w);
  const auto asd = anti_self_dual_coords(w);
  return {ImagUnitQuaternion::normalize({0.0, sd[0], sd[1], sd[2]}),
          ImagUnitQuaternion::normalize({0.0, asd[0], asd[1], asd[2]})};
}

Bivector bivector_from_pair(const ImagUnitQuaternion& m, const ImagUnitQuaternion& n) {
  const double s = 1.0 / std::sqrt(2.0);
  return bivector_from_coords({m.q().x * s, m.q().y * s, m.q().z * s}, {n.q().x * s, n.q().y * s, n.q().z * s});
}

Quaternion cross3(const Quaternion& p, const Quaternion& v, const Quaternion& u) {
  Quaternion w;
  for (int k = 0; k < 4; ++k) w[k] = det4(p, v, u, Quaternion::basis(k));
  return w;
}

TangentVector cross3(const SpherePoint3& p, const TangentVector& v, const TangentVector& u) {
  if (distance(v.base(), p) > 1e-12 || distance(u.base(), p) > 1e-12) {
    throw Error(ErrorCode::BaseMismatch, "cross3 operands are based at different points");
  }
  return TangentVector::project(p, cross3(p.q(), v.vec(), u.vec()));
}

}  // namespace gcflow
