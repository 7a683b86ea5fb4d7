#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harmonics/family.hpp"
#include "harmonics/poincare.hpp"
#include "harmonics/verify.hpp"

using namespace harmonics;

namespace {

PoincareElement random_p(Rng& rng) {
  std::normal_distribution<double> nd;
  return {{nd(rng), nd(rng), nd(rng), nd(rng)}, random_group_element(rng, 0.6)};
}

}  // namespace

TEST_CASE("Poincare law acts on points of spacetime") {
  // (v, g) acts by x -> g.x + v; composition must match successive action.
  Rng rng(12);
  const PoincareElement p = random_p(rng), q = random_p(rng);
  const Vec4 x{0.5, -1.0, 0.25, 2.0};
  auto act = [](const PoincareElement& e, const Vec4& y) { return spinor_action(e.g, y) + e.v; };
  const Vec4 lhs = act(poincare_mul(p, q), x);
  const Vec4 rhs = act(p, act(q, x));
  CHECK(max_abs_diff(lhs, rhs) < 1e-10 * std::max(1.0, std::abs(lhs[0])));
  const PoincareElement id = poincare_mul(p, poincare_inv(p));
  CHECK(id.g.max_diff(GroupElement::identity()) < 1e-10);
}

TEST_CASE("Q projects homomorphically onto P") {
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    const QElement x{random_p(rng).v, random_group_element(rng, 0.6), random_group_element(rng, 0.6)};
    const QElement y{random_p(rng).v, random_group_element(rng, 0.6), random_group_element(rng, 0.6)};
    const PoincareElement a = q_project(q_mul(x, y));
    const PoincareElement b = poincare_mul(q_project(x), q_project(y));
    CHECK(max_diff(a, b) < 1e-10 * std::max(1.0, a.g.max_abs() * a.g.max_abs()));
  }
}

TEST_CASE("Gauss-Hermite rule integrates polynomials against e^{-x^2}") {
  std::vector<double> x, w;
  gauss_hermite(5, x, w);
  double m0 = 0, m2 = 0, m4 = 0, m8 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m0 += w[i];
    m2 += w[i] * x[i] * x[i];
    m4 += w[i] * std::pow(x[i], 4);
    m8 += w[i] * std::pow(x[i], 8);
  }
  const double sp = std::sqrt(std::numbers::pi);
  CHECK(m0 == doctest::Approx(sp).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(sp / 2).epsilon(1e-14));
  CHECK(m4 == doctest::Approx(3 * sp / 4).epsilon(1e-14));
  CHECK(m8 == doctest::Approx(105 * sp / 16).epsilon(1e-13));
}

TEST_CASE("R^4 Gauss-Hermite weights integrate a Gaussian in Lebesgue measure") {
  std::vector<Vec4> v;
  std::vector<double> w;
  // Scale 1/sqrt(2) makes the Gaussian the rule's own weight, so the rule is exact.
  gauss_hermite_r4(3, 1.0 / std::sqrt(2.0), v, w);
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double r2 = 0;
    for (double x : v[i]) r2 += x * x;
    s += w[i] * std::exp(-r2);
  }
  CHECK(s == doctest::Approx(std::pow(std::numbers::pi, 2)).epsilon(1e-13));
}

TEST_CASE("tilde lift is invariant, a generic function on Q is not") {
  Rng rng(17);
  const MatrixGaussian m = random_matrix_gaussian(rng, 0.25);
  const PFn f = [m](const Vec4& v, const GroupElement& g) { return std::exp(-0.1 * v[0] * v[0]) * m(g); };
  std::vector<QElement> pts;
  std::vector<GroupElement> qs;
  for (int i = 0; i < 20; ++i) {
    pts.push_back({random_p(rng).v, random_group_element(rng, 0.5), random_group_element(rng, 0.5)});
    qs.push_back(random_group_element(rng, 0.5));
  }
  CHECK(tilde_invariance_defect(tilde_lift(f), pts, qs) < 1e-12);
  const QFn generic = [m](const QElement& x) { return m(x.left) * m(x.right); };
  CHECK(tilde_invariance_defect(generic, pts, qs) > 1e-3);
}

TEST_CASE("v-part norm of the separable family is pi^2 sigma^4") {
  VerifyConfig cfg;
  const SampledPFunction f = poincare_test_function(cfg);
  CHECK(v_norm_squared(f) == doctest::Approx(std::pow(std::numbers::pi, 2)).epsilon(1e-10));
}
