#pragma once

// Test functions with closed-form integrals, and seeded random elements.

#include <random>
#include <vector>

#include "harmonics/lie_core.hpp"
#include "harmonics/slc.hpp"
#include "harmonics/su2.hpp"

namespace harmonics {

using Rng = std::mt19937_64;

/// Entries complex normal, rescaled to unit determinant.
GroupElement random_group_element(Rng& rng, double spread = 1.0);
/// Haar-uniform on SU(2).
KElement random_k_element(Rng& rng);
Complex random_complex(Rng& rng, double spread = 1.0);

/// f(n a(t) k) = exp(-|n|^2 / 2 sigma^2) exp(-t^2 / 2 tau^2) sum_j tr(C_j D^j(k)).
struct GaussianWigner {
  double sigma = 1.0;
  double tau = 1.0;
  /// coefficients[two_j] is (two_j + 1) square; absent blocks are zero.
  std::vector<CMatrix> coefficients;

  int two_jmax() const { return static_cast<int>(coefficients.size()) - 1; }
  Complex k_part(const KElement& k) const;
  Complex operator()(const NakCoords& x) const;
  GroupFn as_function() const;

  /// Closed-form integral of |f|^2 under the given reading.
  double norm_squared(Reading r) const;
  Complex value_at_identity() const { return k_part(KElement::identity()); }
  /// Continuous transform: 2 pi sigma^2 e^{-sigma^2 |xi|^2 / 2} sqrt(2 pi) tau e^{-tau^2 lambda^2 / 2} C_j / d_j
  CMatrix transform(int two_j, double lambda, Complex xi) const;
  /// Tail fraction outside the truncated (n, t) box.
  DecayCertificate certificate(const GroupGrid& g) const;
};

/// Seeded family members sharing sigma and tau.
std::vector<GaussianWigner> make_gaussian_wigner_family(std::uint64_t seed, int members,
                                                        double sigma, double tau,
                                                        int two_jmax);

/// f(g) = exp(-c (tr(g g^dagger) - 2)) (u + sum_ij W_ij g_ij); right K-dependence has spin <= 1/2.
struct MatrixGaussian {
  double c = 1.0;
  Complex u = 1.0;
  std::array<Complex, 4> w{};

  Complex operator()(const GroupElement& g) const;
  GroupFn as_function() const;
};

MatrixGaussian random_matrix_gaussian(Rng& rng, double c);

/// Quadrature grid and frequency grid from per-axis specs.
GroupGrid make_group_grid(const LineGrid& n, const LineGrid& t, int k_two_jmax);
FrequencyGrid make_frequency_grid(const LineGrid& lambda, const LineGrid& xi);

}  // namespace harmonics
