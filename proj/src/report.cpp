#include "gcflow/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>

#include "gcflow/flowlab.hpp"
#include "gcflow/geometry.hpp"
#include "gcflow/sampling.hpp"

namespace gcflow {

namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Reference chirality of the induced structures on the Grassmannian factors:
// i turns T S^2_- anti-clockwise and T S^2_+ clockwise, j turns both clockwise.
constexpr ChiralityWitness kReferenceChirality{+1, -1, -1, -1};
// The reference table is stated for j of the opposite S^3 orientation.
constexpr S3Orientation kReferenceOrientation = S3Orientation::OutwardLast;

bool holds(double value, const std::string& relation, double threshold) {
  if (std::isnan(value)) return false;
  if (relation == "<=") return value <= threshold;
  if (relation == ">=") return value >= threshold;
  if (relation == "<") return value < threshold;
  return value > threshold;
}

CheckRecord make_check(std::string target, std::string name, std::string statistic, double value,
                       std::string relation, double threshold) {
  CheckRecord c;
  c.target = std::move(target);
  c.name = std::move(name);
  c.statistic = std::move(statistic);
  c.value = value;
  c.relation = std::move(relation);
  c.threshold = threshold;
  c.pass = holds(c.value, c.relation, c.threshold);
  return c;
}

/// Negative control: the property is expected to fail, with a clear witness.
CheckRecord make_violation(std::string target, std::string name, double value, double threshold, double witness) {
  CheckRecord c = make_check(std::move(target), std::move(name), "max", value, "<=", threshold);
  c.expect = Expectation::Violate;
  c.witness = witness;
  c.pass = !std::isnan(value) && value > witness;
  return c;
}

CheckRecord make_error(std::string target, std::string name, const std::string& what) {
  CheckRecord c = make_check(std::move(target), std::move(name), "error", kNaN, "<=", 0.0);
  c.error = what;
  c.pass = false;
  return c;
}

struct PointScan {
  CoveredPoint cp;
  DefectReport d;
  double dlambda_u1u2{0.0};
  double e_j{0.0};        // J-image of X_*u leaves E by this much
  double e_jj{0.0};       // 𝕁-image of X_*u leaves E by this much
  double non_lagrangian{0.0};
  double pullback{0.0};
  double e_invariance{0.0};
};

struct TargetScan {
  std::vector<PointScan> points;
  std::string error;

  template <typename Fn>
  double max_of(Fn fn) const {
    double m = points.empty() ? kNaN : -std::numeric_limits<double>::infinity();
    for (const auto& p : points) m = std::max(m, fn(p));
    return m;
  }
  template <typename Fn>
  double min_of(Fn fn) const {
    double m = points.empty() ? kNaN : std::numeric_limits<double>::infinity();
    for (const auto& p : points) m = std::min(m, fn(p));
    return m;
  }
};

PointScan scan_point(const FibrationMap& f, const CoveredPoint& cp, Rng& rng) {
  PointScan ps{cp, defect_report(f, cp.p, cp.fibre)};
  const FieldFn field = fibration_field(f, cp.fibre);
  const ShapeOperator s = shape_operator(field, cp.p);
  const ContactReport c = contact_report(field, cp.p);
  ps.dlambda_u1u2 = c.dlambda_u1u2;

  const SMPoint q(cp.p, s.frame.X);
  const KerAlphaVector x1 = pushforward(s, s.frame.u1);
  const KerAlphaVector x2 = pushforward(s, s.frame.u2);
  ps.e_j = std::max(E_membership_defect(s, apply_acs(q, x1, Acs::J)), E_membership_defect(s, apply_acs(q, x2, Acs::J)));
  ps.e_jj =
      std::max(E_membership_defect(s, apply_acs(q, x1, Acs::JJ)), E_membership_defect(s, apply_acs(q, x2, Acs::JJ)));
  const double da = dalpha(q, x1, x2);
  ps.non_lagrangian = std::abs(da);
  ps.pullback = std::abs(da - c.dlambda_u1u2);

  // E is carried to E by the flow: push X_*u forward along the fibre and test
  // membership against the shape operator at the image point.
  const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const SMPoint qt = geodesic_flow(q, t);
  const ShapeOperator st = shape_operator(field, qt.p());
  const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const KerAlphaVector xi = x1 * std::cos(a) + x2 * std::sin(a);
  ps.e_invariance = E_membership_defect(st, dflow_ker_alpha(q, xi, t)) + distance(st.frame.X, qt.v());
  return ps;
}

TargetScan scan_target(const FibrationMap& f, std::size_t samples, std::uint64_t seed) {
  TargetScan scan;
  try {
    const auto points = sample_covered_points(f, samples, seed);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    scan.points.reserve(points.size());
    for (const auto& cp : points) scan.points.push_back(scan_point(f, cp, rng));
  } catch (const Error& e) {
    scan.points.clear();
    scan.error = e.what();
  }
  return scan;
}

FieldClass field_class_of(const TargetScan& scan, const Tolerances& tol) {
  const double div = scan.max_of([](const PointScan& p) { return std::abs(p.d.divX); });
  const double jdef = scan.max_of([](const PointScan& p) { return p.d.J_defect; });
  const double conf =
      scan.max_of([](const PointScan& p) { return std::max({p.d.conf3, p.d.conf4, p.d.conf5}); });
  const bool vol = div <= tol.div && jdef <= tol.jdefect;
  const bool con = conf <= tol.conf;
  if (vol && con) return FieldClass::Hopf;
  if (vol) return FieldClass::VolumePreserving;
  if (con) return FieldClass::Conformal;
  return FieldClass::Generic;
}

FieldClass expected_field_class(MapVerdict v) {
  switch (v) {
    case MapVerdict::Constant: return FieldClass::Hopf;
    case MapVerdict::Holomorphic: return FieldClass::VolumePreserving;
    case MapVerdict::AntiHolomorphic: return FieldClass::Conformal;
    case MapVerdict::Generic: return FieldClass::Generic;
  }
  return FieldClass::Generic;
}

MapVerdict sigma_image(MapVerdict v) {
  if (v == MapVerdict::Holomorphic) return MapVerdict::AntiHolomorphic;
  if (v == MapVerdict::AntiHolomorphic) return MapVerdict::Holomorphic;
  return v;
}

bool expects_div_free(MapVerdict v) { return v == MapVerdict::Constant || v == MapVerdict::Holomorphic; }
bool expects_conformal(MapVerdict v) { return v == MapVerdict::Constant || v == MapVerdict::AntiHolomorphic; }

/// Shared state of one suite run: map classes and point scans per target.
class Runner {
 public:
  Runner(const SuiteConfig& cfg, RunReport& report) : cfg_(cfg), report_(report) {}

  void classify(const NamedMap& t, bool expect_rejected) {
    auto& summary = summary_for(t.name);
    MapClass mc;
    try {
      mc = map_class(t);
    } catch (const Error& e) {
      report_.checks.push_back(make_error(t.name, "theorem-b/map-classification", e.what()));
      return;
    }
    summary.map_class = mc;
    summary.rejected = !(mc.max_dilatation < 1.0);
    if (expect_rejected) {
      report_.checks.push_back(make_check(t.name, "theorem-b/rejected-dilatation", "max", mc.max_dilatation, ">=",
                                          cfg_.tol.obstruction_dilatation));
      return;
    }
    report_.checks.push_back(make_check(t.name, "theorem-b/distance-decreasing", "max", mc.max_dilatation, "<", 1.0));
    if (summary.rejected) return;

    const TargetScan& scan = scan_of(t);
    if (!scan.error.empty()) {
      report_.checks.push_back(make_error(t.name, "theorem-b/field-scan", scan.error));
      return;
    }
    const FieldClass fc = field_class_of(scan, cfg_.tol);
    summary.field_class = fc;
    report_.checks.push_back(make_check(t.name, "theorem-b/verdict-agreement", "flag",
                                        fc == expected_field_class(mc.verdict) ? 0.0 : 1.0, "<=", 0.0));

    // σ∘F: conjugating the target chart swaps holomorphic and anti-holomorphic.
    const NamedMap sigma{t.name + "~sigma", t.map.conjugated()};
    try {
      const MapClass smc = map_class(sigma);
      const TargetScan& sscan = scan_of(sigma);
      if (!sscan.error.empty()) throw Error(ErrorCode::Coverage, sscan.error);
      const FieldClass sfc = field_class_of(sscan, cfg_.tol);
      const bool ok = smc.verdict == sigma_image(mc.verdict) && sfc == expected_field_class(smc.verdict);
      report_.checks.push_back(make_check(t.name, "theorem-b/sigma-correspondence", "flag", ok ? 0.0 : 1.0, "<=", 0.0));
    } catch (const Error& e) {
      report_.checks.push_back(make_error(t.name, "theorem-b/sigma-correspondence", e.what()));
    }
  }

  void prop1(const NamedMap& t) {
    const TargetScan* scan = usable_scan(t, "prop-1");
    if (!scan) return;
    const auto& tol = cfg_.tol;
    push(make_check(t.name, "prop-1/geodesibility", "max", scan->max_of([](auto& p) { return p.d.geodesibility; }),
                    "<=", tol.geodesic));
    push(make_check(t.name, "prop-1/lambda-of-X", "max", scan->max_of([](auto& p) { return p.d.lambda_defect; }),
                    "<=", tol.lambda));
    push(make_check(t.name, "prop-1/reeb-contraction", "max", scan->max_of([](auto& p) { return p.d.reeb_residual; }),
                    "<=", tol.reeb));
    push(make_check(t.name, "prop-1/contact-determinant", "min", scan->min_of([](auto& p) { return p.d.contact_det; }),
                    ">=", tol.contact_det_min));
    push(make_check(t.name, "prop-1/dlambda-crosscheck", "max",
                    scan->max_of([](auto& p) { return p.d.dlambda_crosscheck; }), "<=", tol.dlambda_crosscheck));
  }

  void prop_a(const NamedMap& t) {
    const TargetScan* scan = usable_scan(t, "prop-a");
    if (!scan) return;
    const auto mc = summary_for(t.name).map_class;
    if (!mc) return;
    const auto& tol = cfg_.tol;
    const double div = scan->max_of([](auto& p) { return std::abs(p.d.divX); });
    const double jdef = scan->max_of([](auto& p) { return p.d.J_defect; });
    const double ej = scan->max_of([](auto& p) { return p.e_j; });
    const double ejj = scan->max_of([](auto& p) { return p.e_jj; });
    if (expects_div_free(mc->verdict)) {
      push(make_check(t.name, "prop-a/divergence", "max", div, "<=", tol.div));
      push(make_check(t.name, "prop-a/J-defect", "max", jdef, "<=", tol.jdefect));
      push(make_check(t.name, "prop-a/J-invariance-of-E", "max", ej, "<=", tol.jdefect));
    } else {
      push(make_violation(t.name, "prop-a/divergence", div, tol.div, tol.neg_div));
      push(make_violation(t.name, "prop-a/J-defect", jdef, tol.jdefect, tol.neg_jdefect));
      push(make_violation(t.name, "prop-a/J-invariance-of-E", ej, tol.jdefect, tol.neg_jdefect));
    }
    if (expects_conformal(mc->verdict)) {
      push(make_check(t.name, "prop-a/JJ-invariance-of-E", "max", ejj, "<=", tol.conf));
    } else {
      push(make_violation(t.name, "prop-a/JJ-invariance-of-E", ejj, tol.conf, tol.neg_conf));
    }
  }

  void lemma_key(const NamedMap& t) {
    const TargetScan* scan = usable_scan(t, "lemma-key");
    if (!scan) return;
    push(make_check(t.name, "lemma-key/residual", "max", scan->max_of([](auto& p) { return p.d.key_residual; }), "<=",
                    cfg_.tol.key));
  }

  void prop_2_5(const NamedMap& t) {
    const TargetScan* scan = usable_scan(t, "prop-2-5");
    if (!scan) return;
    const auto mc = summary_for(t.name).map_class;
    if (!mc) return;
    const auto& tol = cfg_.tol;
    const double c3 = scan->max_of([](auto& p) { return p.d.conf3; });
    const double c4 = scan->max_of([](auto& p) { return p.d.conf4; });
    const double c5 = scan->max_of([](auto& p) { return p.d.conf5; });
    if (expects_conformal(mc->verdict)) {
      push(make_check(t.name, "prop-2-5/conf3", "max", c3, "<=", tol.conf));
      push(make_check(t.name, "prop-2-5/conf4", "max", c4, "<=", tol.conf));
      push(make_check(t.name, "prop-2-5/conf5", "max", c5, "<=", tol.conf));
    } else {
      push(make_violation(t.name, "prop-2-5/conf3", c3, tol.conf, tol.neg_conf));
      push(make_violation(t.name, "prop-2-5/conf4", c4, tol.conf, tol.neg_conf));
      push(make_violation(t.name, "prop-2-5/conf5", c5, tol.conf, tol.neg_conf));
      // One point must witness all three at once.
      const double joint = scan->max_of([](auto& p) { return std::min({p.d.conf3, p.d.conf4, p.d.conf5}); });
      push(make_violation(t.name, "prop-2-5/joint-witness", joint, tol.conf, tol.neg_conf));
    }
    const double factor = tol.comparability_factor, slack = tol.comparability_slack;
    const double ratio = scan->max_of([&](auto& p) {
      const double v[3] = {p.d.conf3, p.d.conf4, p.d.conf5};
      double worst = 0.0;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          if (a != b) worst = std::max(worst, v[a] / (factor * v[b] + slack));
        }
      }
      return worst;
    });
    push(make_check(t.name, "prop-2-5/comparability", "max", ratio, "<=", 1.0));
  }

  void flow_target(const NamedMap& t) {
    const TargetScan* scan = usable_scan(t, "flow");
    if (!scan) return;
    const auto& tol = cfg_.tol;
    push(make_check(t.name, "flow/E-invariance", "max", scan->max_of([](auto& p) { return p.e_invariance; }), "<=",
                    tol.e_invariance));
    push(make_check(t.name, "flow/non-lagrangian", "min", scan->min_of([](auto& p) { return p.non_lagrangian; }), ">=",
                    tol.non_lagrangian));
    push(make_check(t.name, "flow/pullback-dalpha", "max", scan->max_of([](auto& p) { return p.pullback; }), "<=",
                    tol.pullback));
  }

  void flow_random() {
    const auto& tol = cfg_.tol;
    Rng rng(cfg_.seed + 0x51ed270b27a3e5ULL);
    double jc = 0.0, jjc = 0.0, sym = 0.0, sq = 0.0;
    for (std::size_t k = 0; k < cfg_.samples; ++k) {
      const SpherePoint3 p = random_sphere3(rng);
      const SMPoint q(p, random_tangent(rng, p));
      const std::vector<Quaternion> avoid{q.v()};
      const KerAlphaVector xi{random_tangent(rng, p, avoid) * rng.uniform(0.5, 2.0),
                              random_tangent(rng, p, avoid) * rng.uniform(0.5, 2.0)};
      const KerAlphaVector eta{random_tangent(rng, p, avoid), random_tangent(rng, p, avoid)};
      const double t = rng.uniform(-10.0, 10.0);
      jc = std::max(jc, commutation_defect(q, xi, t, Acs::J));
      jjc = std::max(jjc, commutation_defect(q, xi, t, Acs::JJ));
      sym = std::max(sym, std::abs(dalpha(geodesic_flow(q, t), dflow_ker_alpha(q, xi, t), dflow_ker_alpha(q, eta, t)) -
                                   dalpha(q, xi, eta)));
      for (Acs a : {Acs::J, Acs::JJ}) {
        sq = std::max(sq, (apply_acs(q, apply_acs(q, xi, a), a) + xi).norm() / xi.norm());
      }
    }
    push(make_check("random", "flow/J-commutation", "max", jc, "<=", tol.commute));
    push(make_check("random", "flow/JJ-commutation", "max", jjc, "<=", tol.commute));
    push(make_check("random", "flow/symplectic", "max", sym, "<=", tol.symplectic));
    push(make_check("random", "flow/acs-square", "max", sq, "<=", tol.acs_square));

    // Chirality of i and j on the Grassmannian factors.
    try {
      std::size_t varying = 0, mismatched = 0;
      std::optional<ChiralityWitness> first;
      const std::size_t count = std::min<std::size_t>(cfg_.samples, 50);
      for (std::size_t k = 0; k < count; ++k) {
        const SpherePoint3 p = random_sphere3(rng);
        const SMPoint q(p, random_tangent(rng, p));
        const ChiralityWitness w = chirality_witness(q);
        if (!first) first = w;
        if (w.i_minus != first->i_minus || w.i_plus != first->i_plus || w.jj_minus != first->jj_minus ||
            w.jj_plus != first->jj_plus) {
          ++varying;
        }
        const ChiralityWitness r = chirality_witness(q, kReferenceOrientation);
        if (r.i_minus != kReferenceChirality.i_minus || r.i_plus != kReferenceChirality.i_plus ||
            r.jj_minus != kReferenceChirality.jj_minus || r.jj_plus != kReferenceChirality.jj_plus) {
          ++mismatched;
        }
      }
      push(make_check("random", "flow/chirality-homogeneous", "count", static_cast<double>(varying), "<=", 0.0));
      push(make_check("random", "flow/chirality-table", "count", static_cast<double>(mismatched), "<=", 0.0));
    } catch (const Error& e) {
      push(make_error("random", "flow/chirality", e.what()));
    }
  }

 private:
  void push(CheckRecord c) { report_.checks.push_back(std::move(c)); }

  TargetSummary& summary_for(const std::string& name) {
    for (auto& s : report_.targets) {
      if (s.target == name) return s;
    }
    TargetSummary summary;
    summary.target = name;
    report_.targets.push_back(summary);
    return report_.targets.back();
  }

  MapClass map_class(const NamedMap& t) {
    auto it = classes_.find(t.name);
    if (it == classes_.end()) it = classes_.emplace(t.name, classify_map(t.map, cfg_.samples, cfg_.tol.map_verdict)).first;
    return it->second;
  }

  const TargetScan& scan_of(const NamedMap& t) {
    auto it = scans_.find(t.name);
    if (it == scans_.end()) it = scans_.emplace(t.name, scan_target(t.map, cfg_.samples, cfg_.seed)).first;
    return it->second;
  }

  const TargetScan* usable_scan(const NamedMap& t, const std::string& suite) {
    if (!summary_for(t.name).map_class) {
      try {
        summary_for(t.name).map_class = map_class(t);
      } catch (const Error& e) {
        push(make_error(t.name, suite + "/map-classification", e.what()));
        return nullptr;
      }
    }
    if (summary_for(t.name).map_class->max_dilatation >= 1.0) {
      push(make_check(t.name, suite + "/distance-decreasing", "max", summary_for(t.name).map_class->max_dilatation, "<",
                      1.0));
      return nullptr;
    }
    const TargetScan& scan = scan_of(t);
    if (!scan.error.empty()) {
      push(make_error(t.name, suite + "/scan", scan.error));
      return nullptr;
    }
    return &scan;
  }

  const SuiteConfig& cfg_;
  RunReport& report_;
  std::map<std::string, MapClass> classes_;
  std::map<std::string, TargetScan> scans_;
};

bool fixture_expects_rejection(const std::string& name) { return name == "FULLANTI"; }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

Tolerances tolerance_profile(std::string_view name) {
  Tolerances t;
  if (name == "default") return t;
  if (name != "loose") throw Error(ErrorCode::Parse, "unknown tolerance profile '" + std::string(name) + "'");
  for (double* upper : {&t.geodesic, &t.lambda, &t.reeb, &t.dlambda_crosscheck, &t.key, &t.div, &t.jdefect, &t.conf,
                        &t.commute, &t.symplectic, &t.acs_square, &t.e_invariance, &t.pullback}) {
    *upper *= 10.0;
  }
  t.contact_det_min /= 10.0;
  t.non_lagrangian /= 10.0;
  return t;
}

Tolerances default_tolerances() {
  const char* env = std::getenv("GCFLOW_TOL_PROFILE");
  return tolerance_profile(env && *env ? env : "default");
}

const char* to_string(FieldClass c) {
  switch (c) {
    case FieldClass::Hopf: return "hopf";
    case FieldClass::VolumePreserving: return "volume-preserving";
    case FieldClass::Conformal: return "conformal";
    case FieldClass::Generic: return "generic";
  }
  return "unknown";
}

bool RunReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::vector<std::string> suite_names() { return {"prop-1", "prop-a", "lemma-key", "prop-2-5", "theorem-b", "flow", "all"}; }

FibrationMap parse_fibration_spec(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    std::optional<double> radius;
    if (j.contains("domain_radius") && !j.at("domain_radius").is_null()) radius = j.at("domain_radius").get<double>();
    const bool transposed = j.value("transposed", false);
    if (kind == "constant") {
      const auto v = j.at("value").get<std::vector<double>>();
      if (v.size() != 3) throw Error(ErrorCode::Parse, "constant value needs three components");
      const Quaternion q{0.0, v[0], v[1], v[2]};
      if (std::abs(q.norm() - 1.0) > 1e-8) throw Error(ErrorCode::Parse, "constant value must be a unit vector");
      return FibrationMap::constant(ImagUnitQuaternion(q), radius);
    }
    if (kind == "chart") {
      std::vector<ChartTerm> terms;
      for (const auto& t : j.at("terms")) {
        const auto v = t.get<std::vector<double>>();
        if (v.size() != 4) throw Error(ErrorCode::Parse, "chart terms are [p, q, re, im]");
        if (v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
          throw Error(ErrorCode::Parse, "chart exponents must be integers");
        }
        terms.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), {v[2], v[3]}});
      }
      return FibrationMap::chart(std::move(terms), radius, transposed);
    }
    throw Error(ErrorCode::Parse, "kind must be 'constant' or 'chart'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

FibrationMap load_fibration_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open spec file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return parse_fibration_spec(j);
}

json fibration_to_json(const FibrationMap& f) {
  json j;
  if (f.kind() == MapKind::Constant) {
    j["kind"] = "constant";
    j["value"] = {f.value().q().x, f.value().q().y, f.value().q().z};
  } else {
    j["kind"] = "chart";
    j["terms"] = json::array();
    for (const auto& t : f.terms()) j["terms"].push_back({t.p, t.q, t.c.real(), t.c.imag()});
  }
  j["domain_radius"] = f.cap_radius() ? json(*f.cap_radius()) : json(nullptr);
  j["transposed"] = f.transposed();
  return j;
}

std::vector<NamedMap> resolve_targets(const SuiteConfig& config) {
  if (config.fixture && config.spec_path) throw Error(ErrorCode::Parse, "give either a fixture or a spec, not both");
  if (config.fixture) return {NamedMap{*config.fixture, fixture(*config.fixture)}};
  if (config.spec_path) return {NamedMap{*config.spec_path, load_fibration_spec(*config.spec_path)}};
  std::vector<NamedMap> out;
  for (const auto& name : fixture_names()) out.push_back({name, fixture(name)});
  return out;
}

RunReport classify_fibration(const NamedMap& target, std::size_t samples, std::uint64_t seed, const Tolerances& tol) {
  SuiteConfig cfg;
  cfg.suite = "theorem-b";
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.tol = tol;
  RunReport report;
  report.command = "classify";
  report.suite = "theorem-b";
  report.seed = seed;
  report.samples = samples;
  Runner runner(cfg, report);
  runner.classify(target, fixture_expects_rejection(target.name));
  return report;
}

RunReport run_verification_suite(const SuiteConfig& config) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), config.suite) == names.end()) {
    throw Error(ErrorCode::Parse, "unknown suite '" + config.suite + "'");
  }
  if (config.samples == 0) throw Error(ErrorCode::Parse, "sample count must be at least 1");
  const auto targets = resolve_targets(config);

  RunReport report;
  report.command = "verify";
  report.suite = config.suite;
  report.seed = config.seed;
  report.samples = config.samples;
  Runner runner(config, report);
  auto wants = [&](const char* s) { return config.suite == "all" || config.suite == s; };

  for (const auto& t : targets) {
    const bool expect_rejected = fixture_expects_rejection(t.name);
    if (wants("theorem-b") || expect_rejected) runner.classify(t, expect_rejected);
    if (expect_rejected) continue;
    if (wants("prop-1")) runner.prop1(t);
    if (wants("prop-a")) runner.prop_a(t);
    if (wants("lemma-key")) runner.lemma_key(t);
    if (wants("prop-2-5")) runner.prop_2_5(t);
    if (wants("flow")) runner.flow_target(t);
  }
  if (wants("flow")) runner.flow_random();
  return report;
}

nlohmann::ordered_json report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["command"] = report.command;
  j["suite"] = report.suite;
  j["provenance"] = {{"conventions_hash", hex64(conventions_hash())},
                     {"seed", report.seed},
                     {"samples", report.samples}};
  j["targets"] = nlohmann::ordered_json::array();
  for (const auto& t : report.targets) {
    nlohmann::ordered_json tj;
    tj["target"] = t.target;
    if (t.map_class) {
      tj["map_class"] = {{"verdict", to_string(t.map_class->verdict)},
                         {"delta_hol", t.map_class->delta_hol},
                         {"delta_anti", t.map_class->delta_anti},
                         {"max_dilatation", t.map_class->max_dilatation},
                         {"samples", t.map_class->samples}};
    }
    tj["field_class"] = t.field_class ? nlohmann::ordered_json(to_string(*t.field_class)) : nlohmann::ordered_json();
    tj["rejected"] = t.rejected;
    j["targets"].push_back(tj);
  }
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["target"] = c.target;
    cj["name"] = c.name;
    cj["statistic"] = c.statistic;
    cj["value"] = std::isnan(c.value) ? nlohmann::ordered_json() : nlohmann::ordered_json(c.value);
    cj["relation"] = c.relation;
    cj["threshold"] = c.threshold;
    cj["expect"] = c.expect == Expectation::Hold ? "hold" : "violate";
    cj["witness"] = c.witness ? nlohmann::ordered_json(*c.witness) : nlohmann::ordered_json();
    cj["pass"] = c.pass;
    if (!c.error.empty()) cj["error"] = c.error;
    j["checks"].push_back(cj);
  }
  j["pass"] = report.pass();
  return j;
}

std::string conventions_text() {
  return "basis (1,i,j,k)=(e0,e1,e2,e3) positive; S3 outward-normal-first; "
         "hodge *(e01)=e23 *(e02)=e31 *(e03)=e12; "
         "wedge_split: S2- <- self-dual part, S2+ <- anti-self-dual part; "
         "plane(m,n) = {x : m x = x n} oriented (x, m x); "
         "charts: stereographic from +k, S2+ chart conjugated; "
         "i_- = m x u, i_+ = -(n x u); j = cross3(p, X, .); "
         "dalpha(xi,eta) = <xiV,etaH> - <xiH,etaV>; Ric(X) = 1; "
         "chirality reference table under reversed S3 orientation for j";
}

std::uint64_t conventions_hash() {
  // FNV-1a, stable across platforms.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : conventions_text()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExportKind parse_export_kind(std::string_view what) {
  if (what == "field") return ExportKind::Field;
  if (what == "graph") return ExportKind::Graph;
  if (what == "defects") return ExportKind::Defects;
  throw Error(ErrorCode::Parse, "export kind must be field, graph or defects");
}

void export_samples(const FibrationMap& f, std::size_t grid, std::uint64_t seed, ExportKind what, std::ostream& out) {
  if (grid == 0) throw Error(ErrorCode::EmptySample, "export grid is empty");
  auto row = [&out](const std::vector<double>& values, const std::string& status) {
    for (double v : values) out << fmt17(v) << ',';
    out << status << '\n';
  };
  auto nan_row = [](std::size_t n) { return std::vector<double>(n, kNaN); };

  if (what == ExportKind::Graph) {
    out << "m1,m2,m3,n1,n2,n3,status\n";
    for (const auto& a : domain_samples(f, grid, kSampleShrink)) {
      try {
        const GrassPoint g = graph_point(f, a);
        row({g.m.q().x, g.m.q().y, g.m.q().z, g.n.q().x, g.n.q().y, g.n.q().z}, "ok");
      } catch (const Error& e) {
        row(nan_row(6), to_string(e.code()));
      }
    }
    return;
  }

  const auto points = sample_covered_points(f, grid, seed);
  if (what == ExportKind::Field) {
    out << "p0,p1,p2,p3,X0,X1,X2,X3,divX,J_defect,conf4,status\n";
    for (const auto& cp : points) {
      const Quaternion& p = cp.p.q();
      try {
        const FieldFn field = fibration_field(f, cp.fibre);
        const ShapeOperator s = shape_operator(field, cp.p);
        const Quaternion& X = s.frame.X;
        const double jdef = (s.B * s.B + Eigen::Matrix2d::Identity()).norm();
        const double conf4 = (s.B + s.B.transpose() - s.traceB * Eigen::Matrix2d::Identity()).norm();
        row({p.w, p.x, p.y, p.z, X.w, X.x, X.y, X.z, s.traceB, jdef, conf4}, "ok");
      } catch (const Error& e) {
        std::vector<double> v{p.w, p.x, p.y, p.z};
        v.resize(11, kNaN);
        row(v, to_string(e.code()));
      }
    }
    return;
  }

  out << "p0,p1,p2,p3,geodesibility,lambda_defect,reeb_residual,contact_det,dlambda_crosscheck,divX,J_defect,"
         "conf3,conf4,conf5,key_residual,status\n";
  for (const auto& cp : points) {
    const Quaternion& p = cp.p.q();
    try {
      const DefectReport d = defect_report(f, cp.p, cp.fibre);
      row({p.w, p.x, p.y, p.z, d.geodesibility, d.lambda_defect, d.reeb_residual, d.contact_det, d.dlambda_crosscheck,
           d.divX, d.J_defect, d.conf3, d.conf4, d.conf5, d.key_residual},
          "ok");
    } catch (const Error& e) {
      std::vector<double> v{p.w, p.x, p.y, p.z};
      v.resize(15, kNaN);
      row(v, to_string(e.code()));
    }
  }
}

}  // namespace gcflow
