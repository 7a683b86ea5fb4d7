#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harmonics/family.hpp"
#include "harmonics/kernels.hpp"
#include "harmonics/slc.hpp"
#include "harmonics/verify.hpp"

using namespace harmonics;

namespace {

GaussianWigner member(int two_jmax, std::uint64_t seed = 11) {
  return make_gaussian_wigner_family(seed, 1, 1.0, 1.0, two_jmax).front();
}

struct BackendGuard {
  Backend saved = default_backend();
  ~BackendGuard() { set_default_backend(saved); }
};

}  // namespace

TEST_CASE("readings: Haar law is matrix multiplication, product law is coordinatewise") {
  Rng rng(4);
  const NakCoords x{{0.3, -0.2}, 0.4, random_k_element(rng)};
  const NakCoords y{{-0.7, 0.5}, -0.1, random_k_element(rng)};
  const NakCoords h = group_mul(Reading::Haar, x, y);
  CHECK(compose_nak(h).max_diff(compose_nak(x) * compose_nak(y)) < 1e-13);
  const NakCoords p = group_mul(Reading::Product, x, y);
  CHECK(std::abs(p.n - (x.n + y.n)) < 1e-15);
  CHECK(p.t == doctest::Approx(0.3));
  CHECK(measure_density(Reading::Haar, 0.5) == doctest::Approx(std::exp(-2.0)));
  CHECK(measure_density(Reading::Product, 0.5) == 1.0);
}

TEST_CASE("sampled transform of a Gaussian-Wigner member matches its closed form") {
  const GaussianWigner f = member(2);
  // Half-width 8 puts the truncated tail near e^{-32}.
  const GroupGrid grid = make_group_grid(LineGrid(8.0, 32), LineGrid(8.0, 32), 2);
  const FrequencyGrid freq = make_frequency_grid(LineGrid(3.0, 8), LineGrid(3.0, 8));
  const SpectralTable t = sl2c_fourier(sample_group_function(grid, f.as_function()), freq, 2);
  double worst = 0;
  for (int il = 0; il < freq.lambda.m; ++il)
    for (int k1 = 0; k1 < freq.xi1.m; ++k1)
      for (int k2 = 0; k2 < freq.xi2.m; ++k2) {
        const Complex xi(freq.xi1.node(k1), freq.xi2.node(k2));
        for (int tj = 0; tj <= 2; ++tj) {
          const CMatrix d = t.matrix(tj, freq.index(il, k1, k2)) - f.transform(tj, freq.lambda.node(il), xi);
          worst = std::max(worst, d.cwiseAbs().maxCoeff());
        }
      }
  CHECK(worst < 1e-10);
}

TEST_CASE("closed-form norm matches the sampled norm under both readings") {
  const GaussianWigner f = member(1);
  const GroupGrid grid = make_group_grid(LineGrid(6.0, 24), LineGrid(7.0, 40, -2.0), 1);
  const SampledGroupFunction s = sample_group_function(grid, f.as_function());
  CHECK(group_norm_squared(s, Reading::Product) == doctest::Approx(f.norm_squared(Reading::Product)).epsilon(1e-10));
  CHECK(group_norm_squared(s, Reading::Haar) == doctest::Approx(f.norm_squared(Reading::Haar)).epsilon(1e-8));
}

TEST_CASE("shipped test functions carry tail certificates below 1e-10") {
  const VerifyConfig cfg;
  const SampledGroupFunction s = sl2c_test_function(cfg);
  CHECK(s.decay.eps_tail <= 1e-10);
  CHECK(s.has_closed_form());
}

TEST_CASE("serial and OpenMP backends are bit-identical") {
  BackendGuard guard;
  set_thread_limit(3);
  const GaussianWigner f = member(2);
  const GroupGrid grid = make_group_grid(LineGrid(4.0, 8), LineGrid(4.0, 8), 2);
  const FrequencyGrid freq = make_frequency_grid(LineGrid(2.0, 8), LineGrid(2.0, 8));
  const auto a = sample_group_function(grid, f.as_function(), {}, Backend::Serial);
  const auto b = sample_group_function(grid, f.as_function(), {}, Backend::OpenMP);
  CHECK(a.values == b.values);
  const SpectralTable ta = sl2c_fourier(a, freq, 2, Backend::Serial);
  const SpectralTable tb = sl2c_fourier(a, freq, 2, Backend::OpenMP);
  CHECK(ta.blocks == tb.blocks);
  const GroupGrid small = make_group_grid(LineGrid(2.0, 8), LineGrid(2.0, 8), 1);
  const auto psi = sample_group_function(small, f.as_function(), {}, Backend::Serial);
  const auto ha = lifted_convolution(Reading::Product, f.as_function(), psi, small, Backend::Serial);
  const auto hb = lifted_convolution(Reading::Product, f.as_function(), psi, small, Backend::OpenMP);
  CHECK(ha.values == hb.values);
}

TEST_CASE("real functions have conjugate-symmetric transforms") {
  const GaussianWigner f = member(2, 5);
  const GroupFn real_part = [f](const NakCoords& x) { return Complex(f(x).real(), 0.0); };
  const GroupGrid grid = make_group_grid(LineGrid(5.0, 16), LineGrid(5.0, 16), 2);
  const FrequencyGrid freq = make_frequency_grid(LineGrid(2.0, 8), LineGrid(2.0, 8));
  const SpectralTable t = sl2c_fourier(sample_group_function(grid, real_part), freq, 2);
  CHECK(real_symmetry_defect(t) < 1e-12);
  const GroupFn complex_fn = f.as_function();
  const SpectralTable c = sl2c_fourier(sample_group_function(grid, complex_fn), freq, 2);
  CHECK(real_symmetry_defect(c) > 1e-3);
}

TEST_CASE("fcheck conjugates values at inverted coordinates") {
  const GaussianWigner f = member(1);
  const GroupGrid grid = make_group_grid(LineGrid(3.0, 8), LineGrid(3.0, 8), 1);
  const auto s = sample_group_function(grid, f.as_function());
  const auto c = fcheck(Reading::Haar, s);
  const NakCoords x = grid.coords(3, 2, 5, 1);
  const Complex expect = std::conj(f(nak_decompose(compose_nak(x).inverse())));
  CHECK(std::abs(c.values[grid.index(3, 2, 5, 1)] - expect) < 1e-13);
}

// Gaussian mollifier of width e in (z, t), constant in k, total mass 1. For a spin-0
// Gaussian f of unit widths, phi * f is again Gaussian with variance 1 + e^2.
TEST_CASE("Gaussian mollifier convolves to the widened Gaussian and tends to f") {
  GaussianWigner f;
  f.coefficients = {CMatrix::Constant(1, 1, 1.0)};
  double previous_gap = 1.0;
  for (const double e : {0.2, 0.1, 0.05}) {
    const double norm = std::pow(2 * std::numbers::pi * e * e, 1.5);
    const GroupFn phi = [e, norm](const NakCoords& y) {
      return Complex(std::exp(-(std::norm(y.n) + y.t * y.t) / (2 * e * e)) / norm);
    };
    const GroupGrid grid = make_group_grid(LineGrid(7 * e, 24), LineGrid(7 * e, 24), 0);
    const auto ps = sample_group_function(grid, phi);
    const NakCoords x{{0.4, -0.3}, 0.25, KElement::from_euler(0.1, 0.2, 0.3)};
    const Complex got = convolve_g_at(Reading::Product, f.as_function(), ps, x);
    const double v = 1 + e * e;
    const double expect = std::exp(-std::norm(x.n) / (2 * v)) / v * std::exp(-x.t * x.t / (2 * v)) / std::sqrt(v);
    CHECK(std::abs(got - expect) < 1e-9);
    const double gap = std::abs(got - f(x));
    CHECK(gap < previous_gap);
    previous_gap = gap;
  }
  CHECK(previous_gap < 5e-3);
}

TEST_CASE("Plancherel guard factor equals (2 pi)^3") {
  const GaussianWigner f = member(1);
  const GroupGrid grid = make_group_grid(LineGrid(6.0, 24), LineGrid(6.0, 24), 1);
  const FrequencyGrid freq = make_frequency_grid(LineGrid(6.5, 18), LineGrid(6.5, 18));
  const auto s = sample_group_function(grid, f.as_function());
  const SpectralTable t = sl2c_fourier(s, freq, 1);
  CHECK(spectral_side(t, 0) / spectral_side(t, 3) == doctest::Approx(std::pow(2 * std::numbers::pi, 3)));
}
