#pragma once

/**
 * @file flowlab.hpp
 * @brief The unit tangent bundle SM of S^3, its geodesic flow, and the two
 * almost complex structures on ker(α) = H ⊕ V.
 *
 * At q = (p, v) both H and V are identified with span{p, v}^⊥ ⊂ R^4, so a
 * vector of ker(α) is a pair (ξ_H, ξ_V) of R^4 vectors orthogonal to p and v.
 * Curvature is 1, hence the derivative of the flow acts on these pairs by a
 * plane rotation (Jacobi fields J'' + J = 0 with trivial transport off the
 * flow plane).
 */

#include <optional>

#include "gcflow/fibration.hpp"
#include "gcflow/geometry.hpp"
#include "gcflow/quat.hpp"

namespace gcflow {

class SMPoint {
 public:
  SMPoint(const SpherePoint3& p, const Quaternion& v);

  const SpherePoint3& p() const { return p_; }
  const Quaternion& v() const { return v_; }

 private:
  SpherePoint3 p_;
  Quaternion v_;
};

struct KerAlphaVector {
  Quaternion xiH;
  Quaternion xiV;

  KerAlphaVector operator+(const KerAlphaVector& o) const { return {xiH + o.xiH, xiV + o.xiV}; }
  KerAlphaVector operator-(const KerAlphaVector& o) const { return {xiH - o.xiH, xiV - o.xiV}; }
  KerAlphaVector operator*(double s) const { return {xiH * s, xiV * s}; }
  double norm() const { return std::sqrt(xiH.norm2() + xiV.norm2()); }
};

/// Throws NotPerpendicular unless both components are ⊥ p and v.
void check_ker_alpha(const SMPoint& q, const KerAlphaVector& xi);

/// (p cos t + v sin t, −p sin t + v cos t).
SMPoint geodesic_flow(const SMPoint& q, double t);

/// d φ_t on ker(α): (ξ_H cos t + ξ_V sin t, −ξ_H sin t + ξ_V cos t).
KerAlphaVector dflow_ker_alpha(const SMPoint& q, const KerAlphaVector& xi, double t);

enum class Acs { J, JJ };

const char* to_string(Acs which);

/// J(ξ_H, ξ_V) = (−ξ_V, ξ_H); 𝕁(ξ_H, ξ_V) = (j ξ_H, j ξ_V) with j = cross3(p, v, ·).
KerAlphaVector apply_acs(const SMPoint& q, const KerAlphaVector& xi, Acs which);

/// dα(ξ, η) = <ξ_V, η_H> − <ξ_H, η_V>; with this sign X^*dα = dλ.
double dalpha(const SMPoint& q, const KerAlphaVector& xi, const KerAlphaVector& eta);

/// X_* u = (u, ∇_u X) at (p, X(p)), from a shape operator at p.
KerAlphaVector pushforward(const ShapeOperator& s, const Quaternion& u);

/// ‖ξ_V − B ξ_H‖ in the frame of s; zero iff ξ ∈ X_*(X^⊥).
double E_membership_defect(const ShapeOperator& s, const KerAlphaVector& xi);
double E_membership_defect(const FibrationMap& f, const SpherePoint3& p, const KerAlphaVector& xi,
                           std::optional<ImagUnitQuaternion> seed = std::nullopt);

/// ‖dφ_t(A ξ) − A(dφ_t ξ)‖ for A ∈ {J, 𝕁}.
double commutation_defect(const SMPoint& q, const KerAlphaVector& xi, double t, Acs which);

/// The spiral pair at q: ξ = (w1, w2), ξ' = (w1, −w2) with (p, v, w1, w2) positive.
std::pair<KerAlphaVector, KerAlphaVector> spiral_vectors(const SMPoint& q);

/// d/ds at s = 0 of pair_from_plane(span(p + s ξ_H, v + s ξ_V)), central differences.
std::pair<Quaternion, Quaternion> grassmann_tangent(const SMPoint& q, const KerAlphaVector& xi, double ds = 1e-5);

/// Rotation senses (+1 anti-clockwise, −1 clockwise about the outward normal)
/// induced on T S^2_- and T S^2_+ by J and by 𝕁.
struct ChiralityWitness {
  int i_minus{0};
  int i_plus{0};
  int jj_minus{0};
  int jj_plus{0};
};

/// Orientation of S^3 used for j inside the witness. OutwardFirst is the
/// library convention; OutwardLast reverses it, which negates j and 𝕁.
enum class S3Orientation { OutwardFirst, OutwardLast };

ChiralityWitness chirality_witness(const SMPoint& q, S3Orientation orientation = S3Orientation::OutwardFirst,
                                   double ds = 1e-5);

}  // namespace gcflow
