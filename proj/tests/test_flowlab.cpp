#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcflow/flowlab.hpp"
#include "gcflow/sampling.hpp"

using namespace gcflow;

namespace {

bool near(const Quaternion& a, const Quaternion& b, double tol) { return distance(a, b) <= tol; }

const SMPoint kQ0(SpherePoint3(kOne), kI);

struct RandomCase {
  SMPoint q;
  KerAlphaVector xi;
  KerAlphaVector eta;
  double t;
};

RandomCase random_case(Rng& rng) {
  const SpherePoint3 p = random_sphere3(rng);
  const SMPoint q(p, random_tangent(rng, p));
  auto ker = [&] { return random_tangent(rng, p, {q.v()}) * rng.uniform(0.2, 3.0); };
  const KerAlphaVector xi{ker(), ker()};
  const KerAlphaVector eta{ker(), ker()};
  return {q, xi, eta, rng.uniform(-20.0, 20.0)};
}

}  // namespace

TEST_CASE("SMPoint and ker(alpha) validation") {
  CHECK_THROWS_AS(SMPoint(SpherePoint3(kOne), kOne), Error);
  CHECK_THROWS_AS(SMPoint(SpherePoint3(kOne), kI * 2.0), Error);
  CHECK_THROWS_AS(check_ker_alpha(kQ0, KerAlphaVector{kI, Quaternion{}}), Error);
  CHECK_NOTHROW(check_ker_alpha(kQ0, KerAlphaVector{kJ, kK}));
}

TEST_CASE("geodesic_flow examples") {
  const SMPoint q = geodesic_flow(kQ0, M_PI / 2);
  CHECK(near(q.p(), kI, 1e-15));
  CHECK(near(q.v(), -kOne, 1e-15));
  const SMPoint same = geodesic_flow(kQ0, 0.0);
  CHECK(same.p().q() == kOne);
  CHECK(same.v() == kI);
  Rng rng(107);
  for (int k = 0; k < 100; ++k) {
    const RandomCase c = random_case(rng);
    const SMPoint back = geodesic_flow(c.q, 2 * M_PI);
    CHECK(near(back.p(), c.q.p(), 1e-12));
    CHECK(near(back.v(), c.q.v(), 1e-12));
  }
}

TEST_CASE("dflow_ker_alpha examples") {
  const KerAlphaVector r = dflow_ker_alpha(kQ0, {kJ, Quaternion{}}, M_PI / 2);
  CHECK(near(r.xiH, Quaternion{}, 1e-15));
  CHECK(near(r.xiV, -kJ, 1e-15));
  for (double t = -3.0; t < 3.0; t += 0.37) {
    const KerAlphaVector s = dflow_ker_alpha(kQ0, {kJ, kK}, t);
    CHECK(s.norm() == doctest::Approx(std::sqrt(2.0)));
    // Spiral Jacobi field cos t e2 + sin t e3.
    CHECK(near(s.xiH, kJ * std::cos(t) + kK * std::sin(t), 1e-15));
  }
}

TEST_CASE("almost complex structures") {
  const KerAlphaVector xi{kJ, Quaternion{}};
  const KerAlphaVector jj = apply_acs(kQ0, xi, Acs::JJ);
  CHECK(near(jj.xiH, cross3(kOne, kI, kJ), 1e-15));
  CHECK(near(jj.xiH, kK, 1e-15));
  CHECK(near(jj.xiV, Quaternion{}, 1e-15));

  Rng rng(109);
  for (int k = 0; k < 200; ++k) {
    const RandomCase c = random_case(rng);
    for (Acs a : {Acs::J, Acs::JJ}) {
      const KerAlphaVector once = apply_acs(c.q, c.xi, a);
      CHECK(once.norm() == doctest::Approx(c.xi.norm()).epsilon(1e-12));
      CHECK((apply_acs(c.q, once, a) + c.xi).norm() <= 1e-12 * c.xi.norm());
    }
  }
}

TEST_CASE("dalpha sign, antisymmetry and symplectic flow") {
  // With the sign that makes X^*dα = dλ, the pairing of (e2, 0) with (0, e2) is −1.
  CHECK(dalpha(kQ0, {kJ, Quaternion{}}, {Quaternion{}, kJ}) == -1.0);
  CHECK(dalpha(kQ0, {Quaternion{}, kJ}, {kJ, Quaternion{}}) == 1.0);
  Rng rng(113);
  for (int k = 0; k < 200; ++k) {
    const RandomCase c = random_case(rng);
    CHECK(dalpha(c.q, c.xi, c.xi) == 0.0);
    CHECK(dalpha(c.q, c.xi, c.eta) == doctest::Approx(-dalpha(c.q, c.eta, c.xi)));
    const SMPoint qt = geodesic_flow(c.q, c.t);
    const double moved = dalpha(qt, dflow_ker_alpha(c.q, c.xi, c.t), dflow_ker_alpha(c.q, c.eta, c.t));
    CHECK(std::abs(moved - dalpha(c.q, c.xi, c.eta)) <= 1e-10);
  }
}

TEST_CASE("commutation with the flow") {
  Rng rng(127);
  for (int k = 0; k < 100; ++k) {
    const RandomCase c = random_case(rng);
    CHECK(commutation_defect(c.q, c.xi, c.t, Acs::J) <= 1e-10);
    CHECK(commutation_defect(c.q, c.xi, c.t, Acs::JJ) <= 1e-8);
    CHECK(commutation_defect(c.q, c.xi, 0.0, Acs::JJ) == 0.0);
  }
}

TEST_CASE("E membership and pullback on fixtures") {
  for (const char* name : {"HOPF", "VOL05", "CONF05", "GEN"}) {
    CAPTURE(name);
    const FibrationMap f = fixture(name);
    for (const auto& cp : sample_covered_points(f, 40, 3)) {
      const FieldFn field = fibration_field(f, cp.fibre);
      const ShapeOperator s = shape_operator(field, cp.p);
      const SMPoint q(cp.p, s.frame.X);
      const KerAlphaVector x1 = pushforward(s, s.frame.u1), x2 = pushforward(s, s.frame.u2);
      CHECK(E_membership_defect(s, x1) <= 1e-12);
      CHECK(E_membership_defect(f, cp.p, x1, cp.fibre) <= 1e-9);
      const ContactReport r = contact_report(field, cp.p);
      CHECK(std::abs(dalpha(q, x1, x2) - r.dlambda_u1u2) <= 1e-5);
      CHECK(std::abs(dalpha(q, x1, x2)) >= 0.05);
      if (std::string(name) == "HOPF") CHECK(E_membership_defect(s, apply_acs(q, x1, Acs::J)) <= 1e-6);
      if (std::string(name) == "CONF05") CHECK(E_membership_defect(s, apply_acs(q, x1, Acs::JJ)) <= 1e-4);
    }
  }
}

TEST_CASE("spiral vectors are positively oriented") {
  const auto [xi, xp] = spiral_vectors(kQ0);
  CHECK(near(xi.xiH, kJ, 1e-15));
  CHECK(near(xi.xiV, kK, 1e-15));
  CHECK(near(xp.xiV, -kK, 1e-15));
}

TEST_CASE("each spiral moves a single Grassmann factor") {
  Rng rng(131);
  for (int k = 0; k < 50; ++k) {
    const SpherePoint3 p = random_sphere3(rng);
    const SMPoint q(p, random_tangent(rng, p));
    const auto [xi, xp] = spiral_vectors(q);
    const auto a = grassmann_tangent(q, xi);
    const auto b = grassmann_tangent(q, xp);
    CHECK(std::min(a.first.norm(), a.second.norm()) <= 1e-8);
    CHECK(std::min(b.first.norm(), b.second.norm()) <= 1e-8);
    CHECK(std::max(a.first.norm(), a.second.norm()) > 0.5);
  }
}

TEST_CASE("chirality witnesses are homogeneous") {
  Rng rng(137);
  ChiralityWitness first{};
  for (int k = 0; k < 50; ++k) {
    const SpherePoint3 p = random_sphere3(rng);
    const SMPoint q(p, random_tangent(rng, p));
    const ChiralityWitness w = chirality_witness(q);
    if (k == 0) first = w;
    CHECK(w.i_minus == first.i_minus);
    CHECK(w.i_plus == first.i_plus);
    CHECK(w.jj_minus == first.jj_minus);
    CHECK(w.jj_plus == first.jj_plus);
    // Reversing the S^3 orientation negates only the 𝕁 senses.
    const ChiralityWitness r = chirality_witness(q, S3Orientation::OutwardLast);
    CHECK(r.i_minus == w.i_minus);
    CHECK(r.i_plus == w.i_plus);
    CHECK(r.jj_minus == -w.jj_minus);
    CHECK(r.jj_plus == -w.jj_plus);
  }
  // Library conventions: i turns the factors oppositely, 𝕁 turns both the same way.
  CHECK(first.i_minus == 1);
  CHECK(first.i_plus == -1);
  CHECK(first.jj_minus == first.jj_plus);
}
