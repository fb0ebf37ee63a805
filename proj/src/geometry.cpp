#include "gcflow/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gcflow {

namespace {

SpherePoint3 radial(const Quaternion& q) { return UnitQuaternion::normalize(q); }

/// Seed for the fields of f when the caller did not supply one.
ImagUnitQuaternion resolve_seed(const FibrationMap& f, const SpherePoint3& p,
                                const std::optional<ImagUnitQuaternion>& seed) {
  return locate_fibre(f, p, kFibreMaxIter, kFibreTol, seed).a;
}

}  // namespace

FieldFn fibration_field(const FibrationMap& f, const ImagUnitQuaternion& seed) {
  return [f, seed](const SpherePoint3& q) {
    const FibreSolution sol = locate_fibre(f, q, kFibreMaxIter, kFibreTol, seed);
    return field_from_fibre(f, sol.a, q);
  };
}

TangentVector covariant_derivative(const FieldFn& field, const SpherePoint3& p, const TangentVector& u, double h) {
  if (distance(u.base(), p) > 1e-12) throw Error(ErrorCode::BaseMismatch, "direction is based elsewhere");
  if (u.norm() == 0.0) return TangentVector(p, Quaternion{});
  const Quaternion plus = field(radial(p.q() + u.vec() * h));
  const Quaternion minus = field(radial(p.q() - u.vec() * h));
  return TangentVector::project(p, (plus - minus) / (2.0 * h));
}

PerpFrame perp_frame(const SpherePoint3& p, const Quaternion& X) {
  for (int k = 0; k < 4; ++k) {
    const Quaternion e = Quaternion::basis(k);
    const Quaternion t = e - p.q() * dot(e, p.q()) - X * dot(e, X);
    const double len = t.norm();
    // Squared projections of the basis onto the 2-plane X^⊥ sum to 2.
    if (len > 0.5) {
      const Quaternion u1 = t / len;
      Quaternion u2 = cross3(p.q(), X, u1);
      u2 = u2 / u2.norm();
      return PerpFrame{p, X, u1, u2};
    }
  }
  throw Error(ErrorCode::Degenerate, "no basis vector is transverse to span{p, X}");
}

ShapeOperator shape_operator(const FieldFn& field, const SpherePoint3& p, double h) {
  ShapeOperator s;
  s.frame = perp_frame(p, field(p));
  const Quaternion* frame[2] = {&s.frame.u1, &s.frame.u2};
  for (int j = 0; j < 2; ++j) {
    const TangentVector beta = covariant_derivative(field, p, TangentVector(p, *frame[j]), h);
    for (int i = 0; i < 2; ++i) s.B(i, j) = dot(beta.vec(), *frame[i]);
  }
  s.traceB = s.B.trace();
  s.detB = s.B.determinant();
  s.traceB2 = (s.B * s.B).trace();
  return s;
}

ShapeOperator shape_operator(const FibrationMap& f, const SpherePoint3& p, std::optional<ImagUnitQuaternion> seed) {
  return shape_operator(fibration_field(f, resolve_seed(f, p, seed)), p);
}

TangentVector apply_j(const SpherePoint3& p, const TangentVector& X, const TangentVector& u) {
  if (std::abs(dot(u.vec(), X.vec())) > kFrameTol) {
    throw Error(ErrorCode::NotPerpendicular, "j acts on X^perp only");
  }
  if (std::abs(u.norm() - 1.0) > kFrameTol || std::abs(X.norm() - 1.0) > kFrameTol) {
    throw Error(ErrorCode::InvalidUnit, "j expects unit vectors");
  }
  return cross3(p, X, u);
}

Eigen::Matrix2d j_matrix() {
  Eigen::Matrix2d j;
  j << 0.0, -1.0, 1.0, 0.0;
  return j;
}

double dlambda_numeric(const FieldFn& field, const SpherePoint3& p, const Quaternion& a, const Quaternion& b,
                       double h) {
  // With constant ambient fields a, b the bracket term vanishes.
  auto directional = [&](const Quaternion& dir, const Quaternion& arg) {
    return (dot(field(radial(p.q() + dir * h)), arg) - dot(field(radial(p.q() - dir * h)), arg)) / (2.0 * h);
  };
  return directional(a, b) - directional(b, a);
}

ContactReport contact_report(const FieldFn& field, const SpherePoint3& p) {
  ContactReport r;
  const ShapeOperator s = shape_operator(field, p);
  const PerpFrame& fr = s.frame;
  r.lambdaX = dot(fr.X, fr.X);
  r.lambda_defect = std::abs(r.lambdaX - 1.0);
  r.reeb_residual = std::max(std::abs(dlambda_numeric(field, p, fr.X, fr.u1)),
                             std::abs(dlambda_numeric(field, p, fr.X, fr.u2)));
  r.dlambda_u1u2 = dlambda_numeric(field, p, fr.u1, fr.u2);
  // dλ restricted to X^⊥ is [[0, w], [−w, 0]] in the frame.
  r.contact_det = r.dlambda_u1u2 * r.dlambda_u1u2;
  const double from_shape = s.B(1, 0) - s.B(0, 1);  // g((B − Bᵀ)u1, u2)
  r.crosscheck = std::abs(r.dlambda_u1u2 - from_shape);
  return r;
}

ContactReport contact_report(const FibrationMap& f, const SpherePoint3& p, std::optional<ImagUnitQuaternion> seed) {
  return contact_report(fibration_field(f, resolve_seed(f, p, seed)), p);
}

double complex_structure_defect(const FibrationMap& f, const SpherePoint3& p,
                                std::optional<ImagUnitQuaternion> seed) {
  const ShapeOperator s = shape_operator(f, p, seed);
  return (s.B * s.B + Eigen::Matrix2d::Identity()).norm();
}

double lie_derivative_metric(const FieldFn& field, const SpherePoint3& p, const Quaternion& a, const Quaternion& b,
                             double h, double tau) {
  auto flow = [&](const SpherePoint3& q, double t) { return q.q() * std::cos(t) + field(q) * std::sin(t); };
  auto pushforward = [&](const Quaternion& v, double t) {
    return (flow(radial(p.q() + v * h), t) - flow(radial(p.q() - v * h), t)) / (2.0 * h);
  };
  auto pulled_metric = [&](double t) { return dot(pushforward(a, t), pushforward(b, t)); };
  // Along great circles the pulled metric is a trigonometric polynomial of
  // degree two in t, so this symmetric stencil is exact for any tau.
  return (pulled_metric(tau) - pulled_metric(-tau)) / std::sin(2.0 * tau);
}

ConformalDefect conformal_defect(const FieldFn& field, const SpherePoint3& p) {
  ConformalDefect c;
  const ShapeOperator s = shape_operator(field, p);
  const Eigen::Matrix2d j = j_matrix();
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  c.conf3 = (j * s.B - s.B * j).norm();
  c.conf4 = (s.B + s.B.transpose() - s.traceB * id).norm();

  // (L_X g)(u, v) = g(∇_u X, v) + g(u, ∇_v X), from fresh covariant derivatives.
  const Quaternion frame[2] = {s.frame.u1, s.frame.u2};
  Quaternion grad[2];
  for (int i = 0; i < 2; ++i) grad[i] = covariant_derivative(field, p, TangentVector(p, frame[i])).vec();
  Eigen::Matrix2d lie;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) lie(i, k) = dot(grad[i], frame[k]) + dot(frame[i], grad[k]);
  }
  c.conf5 = (lie - s.traceB * id).norm();
  return c;
}

ConformalDefect conformal_defect(const FibrationMap& f, const SpherePoint3& p,
                                 std::optional<ImagUnitQuaternion> seed) {
  return conformal_defect(fibration_field(f, resolve_seed(f, p, seed)), p);
}

double key_formula_residual(const FieldFn& field, const SpherePoint3& p, double h_flow) {
  const ShapeOperator s = shape_operator(field, p);
  const Quaternion& X = s.frame.X;
  // The fibre through p is the great circle in direction X.
  auto trace_at = [&](double t) {
    return shape_operator(field, radial(p.q() * std::cos(t) + X * std::sin(t))).traceB;
  };
  const double dtrace = (trace_at(h_flow) - trace_at(-h_flow)) / (2.0 * h_flow);
  return std::abs(dtrace + 2.0 * kRicci + s.traceB2);
}

double key_formula_residual(const FibrationMap& f, const SpherePoint3& p, double h_flow,
                            std::optional<ImagUnitQuaternion> seed) {
  return key_formula_residual(fibration_field(f, resolve_seed(f, p, seed)), p, h_flow);
}

double geodesibility_defect(const FieldFn& field, const SpherePoint3& p) {
  const Quaternion X = field(p);
  return covariant_derivative(field, p, TangentVector(p, X)).norm();
}

DefectReport defect_report(const FibrationMap& f, const SpherePoint3& p, std::optional<ImagUnitQuaternion> seed) {
  const FieldFn field = fibration_field(f, resolve_seed(f, p, seed));
  DefectReport d;
  d.geodesibility = geodesibility_defect(field, p);
  const ContactReport c = contact_report(field, p);
  d.lambda_defect = c.lambda_defect;
  d.reeb_residual = c.reeb_residual;
  d.contact_det = c.contact_det;
  d.dlambda_crosscheck = c.crosscheck;
  const ShapeOperator s = shape_operator(field, p);
  d.divX = s.traceB;
  d.J_defect = (s.B * s.B + Eigen::Matrix2d::Identity()).norm();
  const ConformalDefect cd = conformal_defect(field, p);
  d.conf3 = cd.conf3;
  d.conf4 = cd.conf4;
  d.conf5 = cd.conf5;
  d.key_residual = key_formula_residual(field, p);
  return d;
}

}  // namespace gcflow
