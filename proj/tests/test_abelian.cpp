#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harmonics/abelian.hpp"
#include "harmonics/errors.hpp"

using namespace harmonics;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(LineGrid(1.0, 7), GridMismatch);
  CHECK_THROWS_AS(LineGrid(0.0, 8), GridMismatch);
  const LineGrid g(2.0, 8, 0.25);
  CHECK(g.h() == 0.5);
  CHECK(g.node(0) == doctest::Approx(-1.5));
}

TEST_CASE("line transform of a Gaussian matches sqrt(2 pi) s e^{-s^2 w^2 / 2}") {
  const double s = 0.8;
  const LineGrid x(8.0, 64), w(4.0, 16);
  std::vector<Complex> f;
  for (double t : x.nodes()) f.push_back(std::exp(-t * t / (2 * s * s)));
  const auto F = ft_line(x, f, w);
  for (int i = 0; i < w.m; ++i) {
    const double lam = w.node(i);
    CHECK(std::abs(F[i] - std::sqrt(2 * std::numbers::pi) * s * std::exp(-s * s * lam * lam / 2)) < 1e-12);
  }
}

TEST_CASE("plane transform of a shifted Gaussian carries the phase") {
  const LineGrid x(8.0, 48), w(3.0, 8);
  const double a = 0.4, b = -0.3;
  std::vector<Complex> f;
  for (double u : x.nodes())
    for (double v : x.nodes()) f.push_back(std::exp(-((u - a) * (u - a) + (v - b) * (v - b)) / 2));
  const auto F = ft_plane(x, x, f, w, w);
  for (int i = 0; i < w.m; ++i)
    for (int j = 0; j < w.m; ++j) {
      const double p = w.node(i), q = w.node(j);
      const Complex expect = 2 * std::numbers::pi * std::exp(-(p * p + q * q) / 2) * std::exp(Complex(0, -(p * a + q * b)));
      CHECK(std::abs(F[i * w.m + j] - expect) < 1e-11);
    }
}

TEST_CASE("separable and dense R^4 transforms agree") {
  const LineGrid x(5.0, 8), w(2.0, 8);
  SeparableR4 s;
  DenseR4 d;
  for (int a = 0; a < 4; ++a) {
    s.grids[a] = x;
    d.grids[a] = x;
    for (double t : x.nodes()) s.factors[a].push_back(std::exp(-(a + 1) * t * t / 4) * Complex(1, 0.1 * a));
  }
  for (int i0 = 0; i0 < 8; ++i0)
    for (int i1 = 0; i1 < 8; ++i1)
      for (int i2 = 0; i2 < 8; ++i2)
        for (int i3 = 0; i3 < 8; ++i3)
          d.values.push_back(s.factors[0][i0] * s.factors[1][i1] * s.factors[2][i2] * s.factors[3][i3]);
  const std::array<LineGrid, 4> f{w, w, w, w};
  const auto a = ft_r4(s, f), b = ft_r4(d, f);
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("Gaussian tail fraction is erfc") {
  CHECK(gaussian_tail(1.0, 2.0) == doctest::Approx(std::erfc(2.0 / std::sqrt(2.0))).epsilon(1e-14));
  CHECK(gaussian_tail(1.0 / std::sqrt(2.0), 6.0) < 1e-10);
}
