#include "gcflow/fibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gcflow {

namespace {

constexpr double kDomainSlack = 1e-12;
// Points this close to the projection pole are outside every chart domain.
constexpr double kPoleGap = 1e-9;

double sphere_angle(const Quaternion& a, const Quaternion& b) {
  return std::atan2(cross_imag(a, b).norm(), dot(a, b));
}

Quaternion geodesic(const ImagUnitQuaternion& x, const Quaternion& dir, double s) {
  return x.q() * std::cos(s) + dir * std::sin(s);
}

}  // namespace

const char* to_string(MapVerdict v) {
  switch (v) {
    case MapVerdict::Constant: return "constant";
    case MapVerdict::Holomorphic: return "i-holomorphic";
    case MapVerdict::AntiHolomorphic: return "i-antiholomorphic";
    case MapVerdict::Generic: return "generic";
  }
  return "unknown";
}

FibrationMap FibrationMap::constant(const ImagUnitQuaternion& value, std::optional<double> cap_radius) {
  FibrationMap f;
  f.kind_ = MapKind::Constant;
  f.value_ = value;
  f.cap_radius_ = cap_radius;
  return f;
}

FibrationMap FibrationMap::chart(std::vector<ChartTerm> terms, std::optional<double> cap_radius, bool transposed) {
  if (cap_radius && !(*cap_radius > 0.0)) throw Error(ErrorCode::Parse, "domain radius must be positive");
  for (const auto& t : terms) {
    if (t.p < 0 || t.q < 0) throw Error(ErrorCode::Parse, "chart exponents must be non-negative");
  }
  FibrationMap f;
  f.kind_ = MapKind::Chart;
  f.terms_ = std::move(terms);
  f.cap_radius_ = cap_radius;
  f.transposed_ = transposed;
  return f;
}

FibrationMap FibrationMap::conjugated() const {
  if (kind_ == MapKind::Constant) return *this;
  std::vector<ChartTerm> flipped;
  flipped.reserve(terms_.size());
  for (const auto& t : terms_) flipped.push_back({t.q, t.p, std::conj(t.c)});
  return chart(std::move(flipped), cap_radius_, transposed_);
}

Complex FibrationMap::eval_chart(Complex z) const {
  Complex sum{};
  const Complex zb = std::conj(z);
  for (const auto& t : terms_) sum += t.c * std::pow(z, t.p) * std::pow(zb, t.q);
  return sum;
}

Complex chart_minus(const ImagUnitQuaternion& x) {
  const Quaternion& v = x.q();
  const double denom = 1.0 - v.z;
  if (denom < kPoleGap) throw Error(ErrorCode::Domain, "point is at the chart pole");
  return {v.x / denom, v.y / denom};
}

ImagUnitQuaternion chart_minus_inv(Complex z) {
  const double r2 = std::norm(z);
  const double s = 1.0 / (1.0 + r2);
  return ImagUnitQuaternion::normalize({0.0, 2.0 * z.real() * s, 2.0 * z.imag() * s, (r2 - 1.0) * s});
}

Complex chart_plus(const ImagUnitQuaternion& x) { return std::conj(chart_minus(x)); }
ImagUnitQuaternion chart_plus_inv(Complex z) { return chart_minus_inv(std::conj(z)); }

Complex domain_chart(const FibrationMap& f, const ImagUnitQuaternion& x) {
  return f.transposed() ? chart_plus(x) : chart_minus(x);
}

ImagUnitQuaternion domain_chart_inv(const FibrationMap& f, Complex z) {
  return f.transposed() ? chart_plus_inv(z) : chart_minus_inv(z);
}

bool FibrationMap::in_domain(const ImagUnitQuaternion& x) const {
  if (kind_ == MapKind::Constant && !cap_radius_) return true;
  if (1.0 - x.q().z < kPoleGap) return false;
  if (!cap_radius_) return true;
  return std::abs(domain_chart(*this, x)) <= *cap_radius_ * (1.0 + kDomainSlack);
}

ImagUnitQuaternion eval_map(const FibrationMap& f, const ImagUnitQuaternion& x) {
  if (!f.in_domain(x)) throw Error(ErrorCode::Domain, "point lies outside the map's domain");
  if (f.kind() == MapKind::Constant) return f.value();
  const Complex w = f.eval_chart(domain_chart(f, x));
  return f.transposed() ? chart_minus_inv(w) : chart_plus_inv(w);
}

GrassPoint graph_point(const FibrationMap& f, const ImagUnitQuaternion& a) {
  const ImagUnitQuaternion b = eval_map(f, a);
  return f.transposed() ? GrassPoint{b, a} : GrassPoint{a, b};
}

std::array<Quaternion, 2> sphere2_frame(const ImagUnitQuaternion& x) {
  const Quaternion& n = x.q();
  for (int k = 1; k <= 3; ++k) {
    const Quaternion e = Quaternion::basis(k);
    const Quaternion t = e - n * dot(e, n);
    const double len = t.norm();
    if (len > 0.5) {
      const Quaternion e1 = t / len;
      return {e1, cross_imag(n, e1)};
    }
  }
  throw Error(ErrorCode::Degenerate, "no tangent frame");  // unreachable for unit x
}

Differential differential(const FibrationMap& f, const ImagUnitQuaternion& x, double h) {
  Differential d;
  if (f.kind() == MapKind::Constant) {
    d.matrix.setZero();
    return d;
  }
  const auto src = sphere2_frame(x);
  const auto dst = sphere2_frame(eval_map(f, x));
  for (int j = 0; j < 2; ++j) {
    const auto plus = ImagUnitQuaternion::normalize(geodesic(x, src[static_cast<std::size_t>(j)], h));
    const auto minus = ImagUnitQuaternion::normalize(geodesic(x, src[static_cast<std::size_t>(j)], -h));
    if (!f.in_domain(plus) || !f.in_domain(minus)) {
      throw Error(ErrorCode::Boundary, "differential stencil leaves the domain");
    }
    const Quaternion dv = (eval_map(f, plus).q() - eval_map(f, minus).q()) / (2.0 * h);
    for (int i = 0; i < 2; ++i) d.matrix(i, j) = dot(dv, dst[static_cast<std::size_t>(i)]);
  }
  // Singular values of a 2x2 matrix: half sum / difference of the norms of
  // its conformal and anti-conformal parts.
  const double a = d.matrix(0, 0), b = d.matrix(0, 1), c = d.matrix(1, 0), e = d.matrix(1, 1);
  const double conf = std::hypot(a + e, c - b);
  const double anti = std::hypot(a - e, b + c);
  d.sigma_max = 0.5 * (conf + anti);
  d.sigma_min = 0.5 * std::abs(conf - anti);
  return d;
}

std::vector<ImagUnitQuaternion> domain_samples(const FibrationMap& f, std::size_t count, double shrink) {
  std::vector<ImagUnitQuaternion> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const auto n = static_cast<double>(count);
  if (f.cap_radius()) {
    // Stay a fixed fraction inside the rim so finite-difference stencils fit.
    const double r = *f.cap_radius() * std::min(shrink, 1.0 - 1e-4);
    for (std::size_t k = 0; k < count; ++k) {
      const double kk = static_cast<double>(k);
      const double rho = r * std::sqrt((kk + 0.5) / n);
      out.push_back(domain_chart_inv(f, std::polar(rho, kk * golden)));
    }
    return out;
  }
  for (std::size_t k = 0; out.size() < count; ++k) {
    // Fibonacci lattice, skipping the (measure zero) neighbourhood of the pole.
    const double kk = static_cast<double>(k);
    const double z = 1.0 - 2.0 * (kk + 0.5) / n;
    if (k >= count) break;
    if (1.0 - z < 1e-4) continue;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.push_back(ImagUnitQuaternion::normalize({0.0, rho * std::cos(kk * golden), rho * std::sin(kk * golden), z}));
  }
  return out;
}

MapClass classify_map(const FibrationMap& f, std::size_t samples, double tol) {
  if (samples == 0) throw Error(ErrorCode::EmptySample, "classification needs at least one sample");
  MapClass mc;
  const auto points = domain_samples(f, samples);
  if (points.empty()) throw Error(ErrorCode::EmptySample, "domain produced no samples");
  mc.samples = points.size();

  // u ↦ x × u in a positively oriented frame, and its negative.
  Eigen::Matrix2d rot;
  rot << 0.0, -1.0, 1.0, 0.0;
  const Eigen::Matrix2d i_src = f.transposed() ? Eigen::Matrix2d(-rot) : rot;
  const Eigen::Matrix2d i_dst = f.transposed() ? rot : Eigen::Matrix2d(-rot);

  for (const auto& x : points) {
    const Differential d = differential(f, x);
    mc.delta_hol = std::max(mc.delta_hol, (d.matrix * i_src - i_dst * d.matrix).norm());
    mc.delta_anti = std::max(mc.delta_anti, (d.matrix * i_src + i_dst * d.matrix).norm());
    mc.max_dilatation = std::max(mc.max_dilatation, d.sigma_max);
  }
  const double threshold = tol * (1.0 + mc.max_dilatation);
  const bool hol = mc.delta_hol < threshold;
  const bool anti = mc.delta_anti < threshold;
  if (hol && anti) {
    mc.verdict = MapVerdict::Constant;
  } else if (hol) {
    mc.verdict = MapVerdict::Holomorphic;
  } else if (anti) {
    mc.verdict = MapVerdict::AntiHolomorphic;
  } else {
    mc.verdict = MapVerdict::Generic;
  }
  return mc;
}

namespace {

/// Φ_p(a): the domain-factor coordinate whose circle through p has S^2 image F(a).
ImagUnitQuaternion fibre_step(const FibrationMap& f, const SpherePoint3& p, const ImagUnitQuaternion& a) {
  ImagUnitQuaternion image;
  try {
    image = eval_map(f, a);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Domain) throw Error(ErrorCode::Coverage, "fibre iteration reached the chart pole");
    throw;
  }
  return f.transposed() ? conjugate_rotate(p.conj(), image) : conjugate_rotate(p, image);
}

/// Nearest point of the cap: radial rescaling in the chart follows the
/// geodesic towards the cap centre. Non-expansive, so Φ_p stays a contraction.
ImagUnitQuaternion clamp_to_cap(const FibrationMap& f, const ImagUnitQuaternion& a) {
  if (!f.cap_radius() || f.in_domain(a)) return a;
  const Complex z = domain_chart(f, a);
  const double rho = std::abs(z);
  if (!std::isfinite(rho)) return domain_chart_inv(f, Complex(*f.cap_radius(), 0.0));  // at the chart pole
  return domain_chart_inv(f, z * (*f.cap_radius() / rho));
}

}  // namespace

FibreSolution locate_fibre(const FibrationMap& f, const SpherePoint3& p, int max_iter, double tol,
                           std::optional<ImagUnitQuaternion> seed) {
  FibreSolution sol;
  if (seed) {
    sol.a = *seed;
  } else {
    const ImagUnitQuaternion ref = f.kind() == MapKind::Constant ? f.value() : eval_map(f, domain_chart_inv(f, 0.0));
    sol.a = f.transposed() ? conjugate_rotate(p.conj(), ref) : conjugate_rotate(p, ref);
  }
  sol.a = clamp_to_cap(f, sol.a);
  for (int it = 1; it <= max_iter; ++it) {
    ImagUnitQuaternion raw = fibre_step(f, p, sol.a);
    ImagUnitQuaternion next = clamp_to_cap(f, raw);
    double r = sphere_angle(next.q(), sol.a.q());
    sol.residuals.push_back(r);
    sol.a = next;
    sol.iterations = it;
    if (r <= tol) {
      // Settled on the rim with the true fixed point outside: p is not covered.
      if (!f.in_domain(raw)) throw Error(ErrorCode::Coverage, "point is not covered by the fibration");
      // A few extra steps settle the last bits while they still help.
      for (int polish = 0; polish < 8 && r > 0.0; ++polish) {
        raw = fibre_step(f, p, sol.a);
        if (!f.in_domain(raw)) break;
        const double rn = sphere_angle(raw.q(), sol.a.q());
        if (!(rn < r)) break;
        sol.a = raw;
        r = rn;
      }
      return sol;
    }
  }
  throw Error(ErrorCode::Convergence, "fibre iteration did not converge");
}

Quaternion field_from_fibre(const FibrationMap& f, const ImagUnitQuaternion& a, const SpherePoint3& p) {
  // X = m·p where m is the S^2_- factor of the fibre's plane.
  const Quaternion m = f.transposed() ? p.q() * a.q() * p.q().conj() : a.q();
  const Quaternion x = m * p.q();
  return x / x.norm();
}

TangentVector vector_field(const FibrationMap& f, const SpherePoint3& p, std::optional<ImagUnitQuaternion> seed) {
  const FibreSolution sol = locate_fibre(f, p, kFibreMaxIter, kFibreTol, seed);
  return TangentVector::project(p, field_from_fibre(f, sol.a, p));
}

std::vector<std::string> fixture_names() { return {"HOPF", "VOL05", "CONF05", "GEN", "FULLANTI"}; }

FibrationMap fixture(std::string_view name) {
  if (name == "HOPF") return FibrationMap::constant(ImagUnitQuaternion(kI));
  if (name == "VOL05") return FibrationMap::chart({{1, 0, {0.5, 0.0}}}, 1.0);
  if (name == "CONF05") return FibrationMap::chart({{0, 1, {0.5, 0.0}}}, 1.0);
  if (name == "GEN") return FibrationMap::chart({{1, 0, {0.3, 0.0}}, {0, 1, {0.1, 0.0}}}, 1.0);
  if (name == "FULLANTI") return FibrationMap::chart({{0, 2, {1.0, 0.0}}}, std::nullopt);
  throw Error(ErrorCode::Parse, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace gcflow
