#pragma once

/**
 * @file geometry.hpp
 * @brief Differential geometry of unit fields on the round S^3 by finite
 * differences: covariant derivatives, the shape operator β(u) = ∇_u X on X^⊥,
 * the rotation j, the contact form λ = g(X, ·), and the defect functionals
 * built from them.
 *
 * Ric(X) is normalized as the mean of the sectional curvatures of the two
 * planes containing X, so Ric ≡ 1 on the unit sphere.
 */

#include <functional>
#include <optional>

#include <Eigen/Core>
#include <Eigen/LU>

#include "gcflow/fibration.hpp"
#include "gcflow/quat.hpp"

namespace gcflow {

/// Unit tangent field evaluated at points of S^3.
using FieldFn = std::function<Quaternion(const SpherePoint3&)>;

inline constexpr double kSpatialStep = 1e-5;
inline constexpr double kFlowStep = 1e-4;
inline constexpr double kRicci = 1.0;

/// Field of f, each evaluation seeded with the fibre parameter `seed`.
FieldFn fibration_field(const FibrationMap& f, const ImagUnitQuaternion& seed);

/// ∇_u X: central difference of q ↦ X(q/|q|) along u, projected to T_p S^3.
TangentVector covariant_derivative(const FieldFn& field, const SpherePoint3& p, const TangentVector& u,
                                   double h = kSpatialStep);

/// Orthonormal (u1, u2) spanning X^⊥ in T_p S^3 with (u1, u2, X) positive.
struct PerpFrame {
  SpherePoint3 p;
  Quaternion X;
  Quaternion u1;
  Quaternion u2;
};

PerpFrame perp_frame(const SpherePoint3& p, const Quaternion& X);

struct ShapeOperator {
  PerpFrame frame;
  Eigen::Matrix2d B;  // column j holds the frame coordinates of β(u_j)
  double traceB{0.0};
  double detB{0.0};
  double traceB2{0.0};
};

ShapeOperator shape_operator(const FieldFn& field, const SpherePoint3& p, double h = kSpatialStep);
ShapeOperator shape_operator(const FibrationMap& f, const SpherePoint3& p,
                             std::optional<ImagUnitQuaternion> seed = std::nullopt);

/// j u: rotation by π/2 in X^⊥ with {u, ju, X} positively oriented.
TangentVector apply_j(const SpherePoint3& p, const TangentVector& X, const TangentVector& u);

/// Matrix of j in a PerpFrame.
Eigen::Matrix2d j_matrix();

/// dλ(a, b) for λ = g(X, ·), by differentiating λ(b), λ(a) along a, b.
double dlambda_numeric(const FieldFn& field, const SpherePoint3& p, const Quaternion& a, const Quaternion& b,
                       double h = kSpatialStep);

struct ContactReport {
  double lambdaX{0.0};
  double lambda_defect{0.0};     // |λ(X) − 1|
  double reeb_residual{0.0};     // max_i |dλ(X, u_i)|
  double contact_det{0.0};       // det dλ|_{X^⊥} in the frame
  double dlambda_u1u2{0.0};      // dλ(u1, u2), exterior-derivative route
  double crosscheck{0.0};        // max |dλ − g((B − Bᵀ)·, ·)| over frame pairs
};

ContactReport contact_report(const FieldFn& field, const SpherePoint3& p);
ContactReport contact_report(const FibrationMap& f, const SpherePoint3& p,
                             std::optional<ImagUnitQuaternion> seed = std::nullopt);

/// ‖B² + Id‖_F.
double complex_structure_defect(const FibrationMap& f, const SpherePoint3& p,
                                std::optional<ImagUnitQuaternion> seed = std::nullopt);

struct ConformalDefect {
  double conf3{0.0};  // ‖jB − Bj‖_F
  double conf4{0.0};  // ‖B + Bᵀ − tr(B) Id‖_F
  double conf5{0.0};  // ‖L_X g|_{X^⊥} − tr(B) g‖_F
};

ConformalDefect conformal_defect(const FieldFn& field, const SpherePoint3& p);
ConformalDefect conformal_defect(const FibrationMap& f, const SpherePoint3& p,
                                 std::optional<ImagUnitQuaternion> seed = std::nullopt);

/// (L_X g)(a, b) = d/dt g(dφ_t a, dφ_t b) at t = 0, with φ_t the great-circle
/// flow of X and dφ_t taken by central differences. The t-stencil is exact
/// for great-circle flows, so a large tau avoids amplifying roundoff.
double lie_derivative_metric(const FieldFn& field, const SpherePoint3& p, const Quaternion& a, const Quaternion& b,
                             double h = kSpatialStep, double tau = kFlowStep);

/// |X(tr β) + 2 Ric(X) + tr(β²)|, X(tr β) by central difference along the fibre.
double key_formula_residual(const FieldFn& field, const SpherePoint3& p, double h_flow = kFlowStep);
double key_formula_residual(const FibrationMap& f, const SpherePoint3& p, double h_flow = kFlowStep,
                            std::optional<ImagUnitQuaternion> seed = std::nullopt);

/// ‖∇_X X‖.
double geodesibility_defect(const FieldFn& field, const SpherePoint3& p);

struct DefectReport {
  double geodesibility{0.0};
  double lambda_defect{0.0};
  double reeb_residual{0.0};
  double contact_det{0.0};
  double dlambda_crosscheck{0.0};
  double divX{0.0};
  double J_defect{0.0};
  double conf3{0.0};
  double conf4{0.0};
  double conf5{0.0};
  double key_residual{0.0};
};

DefectReport defect_report(const FibrationMap& f, const SpherePoint3& p,
                           std::optional<ImagUnitQuaternion> seed = std::nullopt);

}  // namespace gcflow
