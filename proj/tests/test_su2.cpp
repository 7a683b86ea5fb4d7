#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harmonics/errors.hpp"
#include "harmonics/family.hpp"
#include "harmonics/su2.hpp"

using namespace harmonics;

namespace {

double fact(int n) { return std::tgamma(n + 1.0); }

// Wigner's explicit sum for d^j_{m' m}(theta), all indices doubled.
double little_d(int tj, int tm1, int tm, double theta) {
  const int jp = (tj + tm1) / 2, jm1 = (tj - tm1) / 2, jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
  const int dm = (tm1 - tm) / 2;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  double sum = 0;
  for (int k = 0; k <= tj; ++k) {
    if (jpm - k < 0 || dm + k < 0 || jm1 - k < 0) continue;
    const double num = std::sqrt(fact(jp) * fact(jm1) * fact(jpm) * fact(jmm));
    const double den = fact(jpm - k) * fact(k) * fact(dm + k) * fact(jm1 - k);
    const double sign = ((dm + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * num / den * std::pow(c, tj - dm - 2 * k) * std::pow(s, dm + 2 * k);
  }
  return sum;
}

}  // namespace

TEST_CASE("Wigner D matches the explicit little-d formula") {
  const double phi = 0.8, theta = 1.3, psi = -2.1;
  const KElement k = KElement::from_euler(phi, theta, psi);
  for (int tj = 0; tj <= 6; ++tj) {
    const CMatrix d = wigner_d(tj, k);
    for (int r = 0; r <= tj; ++r)
      for (int c = 0; c <= tj; ++c) {
        const int tm1 = tj - 2 * r, tm = tj - 2 * c;
        const Complex expect = std::exp(Complex(0, -0.5 * tm1 * phi)) * little_d(tj, tm1, tm, theta) *
                               std::exp(Complex(0, -0.5 * tm * psi));
        CHECK(std::abs(d(r, c) - expect) < 1e-13);
      }
  }
}

TEST_CASE("spin one half is the defining representation") {
  const KElement k = KElement::from_euler(0.3, 2.0, 1.7);
  const CMatrix d = wigner_d(1, k);
  const GroupElement m = k.matrix();
  CHECK(std::abs(d(0, 0) - m.a()) < 1e-15);
  CHECK(std::abs(d(0, 1) - m.b()) < 1e-15);
  CHECK(std::abs(d(1, 0) - m.c()) < 1e-15);
  CHECK(std::abs(d(1, 1) - m.d()) < 1e-15);
}

TEST_CASE("D is a unitary homomorphism") {
  Rng rng(9);
  for (int tj = 0; tj <= 5; ++tj) {
    const KElement a = random_k_element(rng), b = random_k_element(rng);
    const CMatrix da = wigner_d(tj, a);
    CHECK((wigner_d(tj, a * b) - da * wigner_d(tj, b)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((da * da.adjoint() - CMatrix::Identity(tj + 1, tj + 1)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("wigner_d refuses spins past the cap") {
  CHECK_THROWS_AS(wigner_d(kMaxTwoJ + 1, KElement::identity()), BandlimitExceeded);
}

TEST_CASE("quadrature node counts and weights") {
  for (int tj : {1, 2, 4, 6}) {
    const KQuadrature q = build_k_quadrature(tj);
    const std::size_t ang = 2 * tj + 1;
    CHECK(q.size() == ang * ang * static_cast<std::size_t>(tj / 2 + 1));
    double total = 0;
    for (double w : q.weights) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("Gauss-Legendre integrates x^4 exactly") {
  std::vector<double> x, w;
  gauss_legendre(3, x, w);
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 4);
  CHECK(s == doctest::Approx(2.0 / 5.0).epsilon(1e-15));
}

TEST_CASE("forward transform recovers coefficients of a bandlimited function") {
  Rng rng(21);
  const int band = 3;
  BandlimitedK f{KSpectrum::zeros(band)};
  for (auto& blk : f.coefficients.blocks)
    for (int r = 0; r < blk.rows(); ++r)
      for (int c = 0; c < blk.cols(); ++c) blk(r, c) = random_complex(rng);
  const KQuadrature q = build_k_quadrature(band);
  const KSpectrum s = peter_weyl_forward(q, sample_on(q, f), band);
  for (int tj = 0; tj <= band; ++tj)
    CHECK((s.blocks[tj] - f.coefficients.blocks[tj]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Casimir acts by -j(j+1); Sobolev weights by (1 + j(j+1))^l") {
  KSpectrum s = KSpectrum::zeros(2);
  for (auto& b : s.blocks) b.setOnes();
  const KSpectrum c = casimir_apply(s);
  CHECK(c.blocks[0].cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.blocks[1](0, 0).real() == doctest::Approx(-0.75));
  CHECK(c.blocks[2](1, 1).real() == doctest::Approx(-2.0));
  const KSpectrum l2 = sobolev_operator_apply(s, 2);
  CHECK(l2.blocks[2](0, 0).real() == doctest::Approx(9.0));
}

TEST_CASE("convolution with the constant function is its mean") {
  // int f(y^-1 x) dy = mean of f, for any f; use a spin-1 matrix coefficient (mean 0) plus 2.
  const KQuadrature q = build_k_quadrature(4);
  const auto f = [](const KElement& k) { return 2.0 + wigner_d(2, k)(0, 1); };
  const auto one = [](const KElement&) { return Complex(1.0); };
  const KElement x = KElement::from_euler(0.2, 0.9, 1.4);
  CHECK(std::abs(convolve_k(q, f, one, x) - 2.0) < 1e-13);
}
