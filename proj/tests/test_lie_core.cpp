#include <doctest.h>

#include <array>
#include <cmath>

#include "harmonics/errors.hpp"
#include "harmonics/family.hpp"
#include "harmonics/lie_core.hpp"

using namespace harmonics;

TEST_CASE("identity decomposes to trivial factors") {
  const IwasawaFactors f = iwasawa_decompose(GroupElement::identity());
  const EulerAngles e = f.k.euler();
  CHECK(std::abs(e.phi) == 0.0);
  CHECK(e.theta == 0.0);
  CHECK(std::abs(e.psi) == 0.0);
  CHECK(f.t == 0.0);
  CHECK(std::abs(f.n) == 0.0);
}

TEST_CASE("make rejects a determinant far from one") {
  CHECK_THROWS_AS(GroupElement::make(1.0, 2.0, 0.0, 3.0), DeterminantError);
  CHECK_NOTHROW(GroupElement::make(1.0 + 1e-12, 0.0, 0.0, 1.0));
}

TEST_CASE("upper triangular element: a(t) n has t = log|a|") {
  // [[2, 3], [0, 1/2]] = a(log 2) n(z) with z = 3 / 2.
  const GroupElement g = GroupElement::make(2.0, 3.0, 0.0, 0.5);
  const IwasawaFactors f = iwasawa_decompose(g);
  CHECK(f.t == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(f.n - Complex(1.5, 0)) < 1e-14);
  CHECK(f.k.matrix().max_diff(GroupElement::identity()) < 1e-14);
}

TEST_CASE("KAN and NAK factorizations recompose") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const GroupElement g = random_group_element(rng);
    CHECK(g.max_diff(compose_iwasawa(iwasawa_decompose(g))) < 1e-12);
    CHECK(g.max_diff(compose_nak(nak_decompose(g))) < 1e-12);
  }
}

TEST_CASE("Euler angles round-trip away from the poles") {
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const EulerAngles e{-3.0 + 6.0 * u(rng), 0.1 + 2.9 * u(rng), -6.0 + 12.0 * u(rng)};
    const KElement k = KElement::from_euler(e);
    const KElement back = KElement::from_euler(k.euler());
    CHECK(k.matrix().max_diff(back.matrix()) < 1e-13);
  }
}

TEST_CASE("K element agrees with the product of its three rotations") {
  const double phi = 0.7, theta = 1.2, psi = -0.4;
  const KElement z1 = KElement::from_euler(phi, 0, 0);
  const KElement y = KElement::from_euler(0, theta, 0);
  const KElement z2 = KElement::from_euler(0, 0, psi);
  CHECK((z1 * y * z2).matrix().max_diff(KElement::from_euler(phi, theta, psi).matrix()) < 1e-15);
  // exp(-i theta sy / 2) = [[cos, -sin], [sin, cos]] of theta / 2
  const GroupElement m = y.matrix();
  CHECK(std::abs(m.a() - std::cos(theta / 2)) < 1e-15);
  CHECK(std::abs(m.b() + std::sin(theta / 2)) < 1e-15);
}

TEST_CASE("products stay unimodular and inverses are exact") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const GroupElement g = random_group_element(rng);
    const GroupElement h = random_group_element(rng);
    CHECK(std::abs((g * h).det() - 1.0) < 1e-12);
    CHECK((g * g.inverse()).max_diff(GroupElement::identity()) < 1e-10 * std::pow(g.max_abs(), 2));
  }
}

// Left translation by n(z0) a(s) moves NAK coordinates (z, t) to (z0 + e^{2s} z, t + s).
// The Jacobian of that map, measured by finite differences of the decomposition,
// must cancel the ratio of Haar densities.
TEST_CASE("Haar density e^{-4t} matches a finite-difference Jacobian") {
  const HaarConvention conv{Ordering::NAK, 4.0};
  const GroupElement g0 = GroupElement::n_of({0.3, -0.2}) * GroupElement::a_of(0.35);
  const KElement k = KElement::from_euler(0.4, 0.9, -1.1);
  const std::array<double, 3> x0{0.2, -0.5, 0.15};
  auto image = [&](const std::array<double, 3>& x) {
    const NakCoords c = nak_decompose(g0 * compose_nak({{x[0], x[1]}, x[2], k}));
    return std::array<double, 3>{c.n.real(), c.n.imag(), c.t};
  };
  const double h = 1e-5;
  double jac[3][3];
  for (int col = 0; col < 3; ++col) {
    auto xp = x0, xm = x0;
    xp[col] += h;
    xm[col] -= h;
    const auto fp = image(xp), fm = image(xm);
    for (int row = 0; row < 3; ++row) jac[row][col] = (fp[row] - fm[row]) / (2 * h);
  }
  const double det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
                     jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
                     jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
  const double t1 = image(x0)[2];
  CHECK(haar_density(conv, t1) * det == doctest::Approx(haar_density(conv, x0[2])).epsilon(1e-8));
  // Exponent 2 does not balance.
  const HaarConvention wrong{Ordering::NAK, 2.0};
  CHECK(std::abs(haar_density(wrong, t1) * det / haar_density(wrong, x0[2]) - 1.0) > 0.1);
}
