#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcflow/quat.hpp"
#include "gcflow/sampling.hpp"
#include "oracles.hpp"

using namespace gcflow;

namespace {

bool near(const Quaternion& a, const Quaternion& b, double tol) { return distance(a, b) <= tol; }

std::pair<Quaternion, Quaternion> random_orthonormal_pair(Rng& rng) {
  const SpherePoint3 x = random_sphere3(rng);
  return {x.q(), random_tangent(rng, x)};
}

}  // namespace

TEST_CASE("qmul multiplication table") {
  CHECK(kI * kJ == kK);
  CHECK(kJ * kK == kI);
  CHECK(kK * kI == kJ);
  CHECK(kJ * kI == -kK);
  CHECK(kI * kI == -kOne);
  const Quaternion q{0.3, -1.2, 2.5, 0.7};
  CHECK(q * kOne == q);
  const Quaternion h = Quaternion{1, 1, 0, 0} / std::sqrt(2.0);
  CHECK(near(h * h, kI, 1e-15));
}

TEST_CASE("qmul agrees with the matrix oracle and is associative") {
  Rng rng(11);
  for (int k = 0; k < 500; ++k) {
    const Quaternion a{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const Quaternion b{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const Quaternion c{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    CHECK(near(a * b, oracle::product(a, b), 1e-12));
    CHECK(near((a * b) * c, a * (b * c), 1e-12 * (1 + a.norm() * b.norm() * c.norm())));
    CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) <= 1e-12 * (1 + a.norm() * b.norm()));
  }
}

TEST_CASE("unit types reject drift and renormalize") {
  CHECK_THROWS_AS(UnitQuaternion(Quaternion{1.1, 0, 0, 0}), Error);
  const UnitQuaternion u(Quaternion{1.0 + 5e-9, 0, 0, 0});
  CHECK(std::abs(u.q().norm() - 1.0) <= 1e-15);
  CHECK_THROWS_AS(ImagUnitQuaternion(Quaternion{0.1, 1, 0, 0}), Error);
  try {
    ImagUnitQuaternion bad(Quaternion{0, 2, 0, 0});
    FAIL("expected an InvalidUnit error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidUnit);
  }
  const ImagUnitQuaternion a(kJ);
  CHECK(a.q().w == 0.0);
}

TEST_CASE("tangent vectors enforce orthogonality") {
  const SpherePoint3 p(kOne);
  CHECK_NOTHROW(TangentVector(p, kI));
  CHECK_THROWS_AS(TangentVector(p, kOne * 0.5), Error);
  const TangentVector t = TangentVector::project(p, Quaternion{3, 1, 2, 0});
  CHECK(t.vec() == Quaternion{0, 1, 2, 0});
}

TEST_CASE("conjugate_rotate examples and isometry") {
  CHECK(near(conjugate_rotate(SpherePoint3(kOne), ImagUnitQuaternion(kI)).q(), kI, 1e-15));
  const SpherePoint3 p(Quaternion{1, 0, 0, 1} / std::sqrt(2.0));
  CHECK(near(conjugate_rotate(p, ImagUnitQuaternion(kI)).q(), kJ, 1e-15));

  Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const SpherePoint3 q = random_sphere3(rng);
    const ImagUnitQuaternion a = random_sphere2(rng), b = random_sphere2(rng);
    const ImagUnitQuaternion ra = conjugate_rotate(q, a), rb = conjugate_rotate(q, b);
    CHECK(ra.q().w == 0.0);
    CHECK(std::abs(ra.q().norm() - 1.0) <= 1e-12);
    CHECK(std::abs(dot(ra, rb) - dot(a, b)) <= 1e-12);
  }
}

TEST_CASE("exp_imag traces the one-parameter subgroup") {
  const ImagUnitQuaternion a(kK);
  CHECK(near(exp_imag(a, M_PI / 2).q(), kK, 1e-15));
  CHECK(near(exp_imag(a, 2 * M_PI).q(), kOne, 1e-15));
}

TEST_CASE("det4 matches the permutation expansion") {
  CHECK(det4(kOne, kI, kJ, kK) == doctest::Approx(1.0));
  CHECK(det4(kI, kOne, kJ, kK) == doctest::Approx(-1.0));
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    std::array<Quaternion, 4> c;
    for (auto& q : c) q = Quaternion{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    CHECK(det4(c[0], c[1], c[2], c[3]) == doctest::Approx(oracle::det_permutations(c)).epsilon(1e-10));
  }
}

TEST_CASE("hodge star is an involution with the fixed sign") {
  const Bivector e01 = wedge(kOne, kI);
  const Bivector e23 = wedge(kJ, kK);
  for (int k = 0; k < 6; ++k) CHECK(hodge_star(e01)[k] == e23[k]);
  CHECK(hodge_star(wedge(kOne, kJ))[4] == 1.0);  // *(e02) = e31
  CHECK(hodge_star(wedge(kOne, kK))[5] == 1.0);  // *(e03) = e12
  Rng rng(9);
  Bivector w;
  for (int k = 0; k < 6; ++k) w[k] = rng.normal();
  const Bivector back = hodge_star(hodge_star(w));
  for (int k = 0; k < 6; ++k) CHECK(back[k] == doctest::Approx(w[k]));
}

TEST_CASE("wedge_split examples") {
  auto [m, n] = wedge_split(kOne, kI);
  CHECK(near(m, kI, 1e-15));
  CHECK(near(n, kI, 1e-15));
  std::tie(m, n) = wedge_split(kOne, kJ);
  CHECK(near(m, kJ, 1e-15));
  CHECK(near(n, kJ, 1e-15));
  std::tie(m, n) = wedge_split(kI, kOne);
  CHECK(near(m, -kI, 1e-15));
  CHECK(near(n, -kI, 1e-15));
}

TEST_CASE("wedge_split rejects invalid frames") {
  CHECK_THROWS_AS(wedge_split(kOne, kOne), Error);
  CHECK_THROWS_AS(wedge_split(kOne * 2.0, kI), Error);
  CHECK_THROWS_AS(wedge_split(kOne, Quaternion{0.1, 1, 0, 0}), Error);
}

TEST_CASE("wedge_split round-trip over 10^4 random orthonormal pairs") {
  Rng rng(2024);
  double worst_unit = 0.0, worst_rebuild = 0.0, worst_decomposable = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const auto [x, y] = random_orthonormal_pair(rng);
    const Bivector w = wedge(x, y);
    worst_decomposable = std::max({worst_decomposable, std::abs(w.wedge_square()), std::abs(w.norm() - 1.0)});
    const auto [m, n] = wedge_split(x, y);
    worst_unit = std::max({worst_unit, std::abs(m.q().norm() - 1.0), std::abs(n.q().norm() - 1.0)});
    worst_rebuild = std::max(worst_rebuild, (bivector_from_pair(m, n) - w).norm());
  }
  CHECK(worst_decomposable <= 1e-12);
  CHECK(worst_unit <= 1e-10);
  CHECK(worst_rebuild <= 1e-10);
}

TEST_CASE("cross3 examples") {
  CHECK(near(cross3(kOne, kK, kI), kJ, 1e-15));
  CHECK(near(cross3(kOne, kI, kI), Quaternion{}, 1e-15));
  const SpherePoint3 p(kOne);
  CHECK_THROWS_AS(cross3(p, TangentVector(SpherePoint3(kI), kOne), TangentVector(p, kJ)), Error);
}

TEST_CASE("cross3 gives a positively oriented orthonormal triple") {
  Rng rng(17);
  for (int k = 0; k < 2000; ++k) {
    const SpherePoint3 p = random_sphere3(rng);
    const Quaternion v = random_tangent(rng, p);
    const Quaternion u = random_tangent(rng, p, {v});
    const Quaternion w = cross3(p.q(), v, u);
    CHECK(std::abs(dot(w, p.q())) <= 1e-12);
    CHECK(std::abs(dot(w, v)) <= 1e-12);
    CHECK(std::abs(dot(w, u)) <= 1e-12);
    CHECK(std::abs(w.norm() - 1.0) <= 1e-12);
    CHECK(oracle::det_permutations({p.q(), u, w, v}) > 0.0);
  }
}
