#pragma once

/**
 * @file quat.hpp
 * @brief Quaternions as R^4, unit quaternions as points of S^3, unit
 * imaginary quaternions as points of S^2, and the exterior algebra of R^4
 * needed to split a 2-plane into its self-dual and anti-self-dual parts.
 *
 * Basis identification: (1, i, j, k) = (e0, e1, e2, e3), positively oriented.
 * S^3 carries the outward-normal-first orientation: a frame (a, b, c) of
 * T_p S^3 is positive iff det[p, a, b, c] > 0.
 */

#include <array>
#include <cmath>
#include <utility>

#include "gcflow/error.hpp"

namespace gcflow {

struct Quaternion {
  double w{0.0}, x{0.0}, y{0.0}, z{0.0};

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion basis(int k) {
    return Quaternion(k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0, k == 2 ? 1.0 : 0.0, k == 3 ? 1.0 : 0.0);
  }

  constexpr double operator[](int k) const { return k == 0 ? w : k == 1 ? x : k == 2 ? y : z; }
  constexpr double& operator[](int k) { return k == 0 ? w : k == 1 ? x : k == 2 ? y : z; }

  constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
  constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }
  Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
  Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }

  // Hamilton product, ij = k, jk = i, ki = j.
  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

/// Euclidean inner product on R^4.
constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

/// Cross product of the imaginary parts (real parts ignored).
constexpr Quaternion cross_imag(const Quaternion& a, const Quaternion& b) {
  return {0.0, a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline constexpr Quaternion kOne{1, 0, 0, 0};
inline constexpr Quaternion kI{0, 1, 0, 0};
inline constexpr Quaternion kJ{0, 0, 1, 0};
inline constexpr Quaternion kK{0, 0, 0, 1};

inline constexpr double kUnitRejectTol = 1e-8;

/// Point of S^3. Renormalized on construction; inputs further than 1e-8 from
/// the unit sphere are rejected.
class UnitQuaternion {
 public:
  UnitQuaternion() : q_(kOne) {}
  explicit UnitQuaternion(const Quaternion& q);

  /// Normalizes any nonzero quaternion.
  static UnitQuaternion normalize(const Quaternion& q);

  const Quaternion& q() const { return q_; }
  operator const Quaternion&() const { return q_; }
  UnitQuaternion conj() const { return UnitQuaternion(q_.conj(), Trusted{}); }

 private:
  struct Trusted {};
  UnitQuaternion(const Quaternion& q, Trusted) : q_(q) {}
  Quaternion q_;
};

using SpherePoint3 = UnitQuaternion;

/// Point of S^2 in the imaginary quaternions. Real part is exactly zero.
class ImagUnitQuaternion {
 public:
  ImagUnitQuaternion() : q_(kI) {}
  explicit ImagUnitQuaternion(const Quaternion& q);

  /// Drops the real part and normalizes.
  static ImagUnitQuaternion normalize(const Quaternion& q);

  const Quaternion& q() const { return q_; }
  operator const Quaternion&() const { return q_; }
  ImagUnitQuaternion operator-() const { return ImagUnitQuaternion(-q_, Trusted{}); }

 private:
  struct Trusted {};
  ImagUnitQuaternion(const Quaternion& q, Trusted) : q_(q) {}
  Quaternion q_;
};

using SpherePoint2 = ImagUnitQuaternion;

/// Vector of T_p S^3 carried with its base point.
class TangentVector {
 public:
  TangentVector(const SpherePoint3& base, const Quaternion& vec);

  /// Orthogonal projection of an arbitrary R^4 vector onto T_p S^3.
  static TangentVector project(const SpherePoint3& base, const Quaternion& vec);

  const SpherePoint3& base() const { return base_; }
  const Quaternion& vec() const { return vec_; }
  double norm() const { return vec_.norm(); }

 private:
  SpherePoint3 base_;
  Quaternion vec_;
};

/// p a p̄: the SO(3) action of S^3 on the imaginary unit sphere.
ImagUnitQuaternion conjugate_rotate(const UnitQuaternion& p, const ImagUnitQuaternion& a);

/// exp(t a) for imaginary unit a: cos t + a sin t.
UnitQuaternion exp_imag(const ImagUnitQuaternion& a, double t);

/// det[a, b, c, d] of the 4x4 matrix with the given columns.
double det4(const Quaternion& a, const Quaternion& b, const Quaternion& c, const Quaternion& d);

// ---------------------------------------------------------------------------
// Bivectors of R^4

/// Components in the order (e01, e02, e03, e23, e31, e12).
struct Bivector {
  std::array<double, 6> c{};

  double& operator[](int k) { return c[static_cast<std::size_t>(k)]; }
  double operator[](int k) const { return c[static_cast<std::size_t>(k)]; }

  Bivector operator+(const Bivector& o) const;
  Bivector operator-(const Bivector& o) const;
  Bivector operator*(double s) const;

  double norm() const;
  /// Coefficient of e0123 in ω∧ω.
  double wedge_square() const;
};

Bivector wedge(const Quaternion& x, const Quaternion& y);

/// Hodge star with *(e01) = e23, *(e02) = e31, *(e03) = e12 (and back).
Bivector hodge_star(const Bivector& w);

/// Components (ω_{0k} + ω_{dual k}) / √2 along σ_k = (e0k + *e0k)/√2.
std::array<double, 3> self_dual_coords(const Bivector& w);
/// Components (ω_{0k} − ω_{dual k}) / √2 along τ_k = (e0k − *e0k)/√2.
std::array<double, 3> anti_self_dual_coords(const Bivector& w);

/// Inverse of the coordinate maps above.
Bivector bivector_from_coords(const std::array<double, 3>& self_dual, const std::array<double, 3>& anti_self_dual);

inline constexpr double kFrameTol = 1e-8;

/**
 * Splits the oriented plane x∧y into its two unit S^2 factors.
 *
 * Returns (m, n) with m from the self-dual part and n from the anti-self-dual
 * part, coordinates identified with (i, j, k). This labeling is the one for
 * which right-multiplication Hopf planes span(p, p·b) have constant second
 * factor b, and for which m·x = x·n on the plane (see grassmann.hpp).
 */
std::pair<ImagUnitQuaternion, ImagUnitQuaternion> wedge_split(const Quaternion& x, const Quaternion& y);

/// The unit bivector with factors (m, n) under the labeling of wedge_split.
Bivector bivector_from_pair(const ImagUnitQuaternion& m, const ImagUnitQuaternion& n);

/**
 * Oriented cross product in T_p S^3: the unique w with <w, y> = det[p, v, u, y]
 * for every y. For unit u ⊥ v, (u, w, v) is a positive orthonormal frame.
 */
TangentVector cross3(const SpherePoint3& p, const TangentVector& v, const TangentVector& u);

/// Same, on raw vectors assumed tangent at p.
Quaternion cross3(const Quaternion& p, const Quaternion& v, const Quaternion& u);

}  // namespace gcflow
