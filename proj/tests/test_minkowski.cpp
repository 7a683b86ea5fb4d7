#include <doctest.h>

#include <cmath>
#include <vector>

#include "harmonics/errors.hpp"
#include "harmonics/family.hpp"
#include "harmonics/minkowski.hpp"

using namespace harmonics;

TEST_CASE("signature form") {
  const std::vector<double> x{1, 2, 3}, y{4, 5, 6};
  CHECK(theta_form(1, 2, x, y) == 4 - 10 - 18);
  CHECK(theta_form(3, 0, x, y) == 32);
  CHECK_THROWS_AS(theta_form(2, 2, x, y), DimensionMismatch);
  const Eigen::MatrixXd s = signature_matrix(1, 3);
  CHECK(s(0, 0) == 1);
  CHECK(s(3, 3) == -1);
}

TEST_CASE("Hermitian model round-trips and has the Minkowski determinant") {
  const Vec4 v{1.5, -0.25, 0.75, 2.0};
  const Hermitian2 m = vec_to_hermitian(v);
  CHECK(std::abs(m.determinant() - minkowski_square(v)) == 0.0);
  CHECK(max_abs_diff(hermitian_to_vec(m), v) == 0.0);
  Hermitian2 bad = m;
  bad(0, 1) += Complex(0.0, 1e-3);
  CHECK_THROWS_AS(hermitian_to_vec(bad), NotHermitian);
}

TEST_CASE("Lorentz classification") {
  Lorentz4 parity = Lorentz4::Identity();
  parity(1, 1) = -1;
  CHECK(classify_lorentz(parity) == LorentzClass::O31);
  Lorentz4 pt = -Lorentz4::Identity();
  CHECK(classify_lorentz(pt) == LorentzClass::SO31);
  CHECK(classify_lorentz(Lorentz4::Identity()) == LorentzClass::SO31Plus);
  Lorentz4 shear = Lorentz4::Identity();
  shear(0, 1) = 0.5;
  CHECK(classify_lorentz(shear) == LorentzClass::NotO31);
}

TEST_CASE("spinor action preserves the interval and is the covering map") {
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const GroupElement g = random_group_element(rng, 0.7);
    const Vec4 v{1.0, 0.3, -0.2, 0.5};
    const Vec4 w = spinor_action(g, v);
    const double scale = std::max(1.0, std::abs(w[0]) * std::abs(w[0]));
    CHECK(std::abs(minkowski_square(w) - minkowski_square(v)) < 1e-11 * scale);
    const Eigen::Vector4d col = covering_map(g) * Eigen::Vector4d(v[0], v[1], v[2], v[3]);
    for (int a = 0; a < 4; ++a) CHECK(std::abs(col[a] - w[a]) < 1e-11 * std::max(1.0, std::abs(w[0])));
  }
}

TEST_CASE("rotation about z by angle a acts on (x, y)") {
  // diag(e^{-i a/2}, e^{i a/2}) rotates (x, y) by -a under M -> g M g^dagger with M = [[t+z, x-iy], [x+iy, t-z]].
  const double a = 0.6;
  const GroupElement g = GroupElement::diagonal(std::exp(Complex(0, -a / 2)));
  const Vec4 w = spinor_action(g, {0, 1, 0, 0});
  CHECK(w[1] == doctest::Approx(std::cos(a)));
  CHECK(std::abs(w[2]) == doctest::Approx(std::sin(a)));
  CHECK(std::abs(w[0]) < 1e-15);
}
