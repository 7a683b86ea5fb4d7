#pragma once

// Combined transform on SL(2,C): functions sampled in n a(t) k coordinates,
// K-transform followed by the abelian transform in (t, n), the lift to G x K,
// convolutions, and the Plancherel / inversion harness.

#include <functional>
#include <vector>

#include "harmonics/abelian.hpp"
#include "harmonics/kernels.hpp"
#include "harmonics/lie_core.hpp"
#include "harmonics/su2.hpp"

namespace harmonics {

/// How the coordinate chart (n, t, k) is read as a group with a measure.
///   Product: direct product R^2 x R x SU(2), coordinatewise law, Lebesgue dn dt times dk.
///   Haar:    the SL(2,C) law, measure e^{-4t} dn dt dk (left Haar in n a k order).
enum class Reading { Product, Haar };

const char* to_string(Reading r);

NakCoords group_mul(Reading r, const NakCoords& x, const NakCoords& y);
NakCoords group_inv(Reading r, const NakCoords& x);
double measure_density(Reading r, double t);

using GroupFn = std::function<Complex(const NakCoords&)>;

struct GroupGrid {
  LineGrid n1, n2, t;
  KQuadrature k;

  std::size_t abelian_size() const { return static_cast<std::size_t>(n1.m) * n2.m * t.m; }
  std::size_t size() const { return k.size() * abelian_size(); }
  /// Flat index ((ik * N1 + i1) * N2 + i2) * T + it.
  std::size_t index(std::size_t ik, int i1, int i2, int it) const {
    return ((ik * n1.m + i1) * n2.m + i2) * static_cast<std::size_t>(t.m) + it;
  }
  NakCoords coords(std::size_t ik, int i1, int i2, int it) const;
  double cell() const { return n1.h() * n2.h() * t.h(); }
};

struct SampledGroupFunction {
  GroupGrid grid;
  std::vector<Complex> values;
  /// Empty when the function is known only on the grid.
  GroupFn closed_form;
  DecayCertificate decay;

  bool has_closed_form() const { return static_cast<bool>(closed_form); }
};

SampledGroupFunction sample_group_function(const GroupGrid& grid, GroupFn f,
                                           DecayCertificate decay = {},
                                           Backend backend = default_backend());

struct FrequencyGrid {
  LineGrid lambda, xi1, xi2;
  std::size_t size() const { return static_cast<std::size_t>(lambda.m) * xi1.m * xi2.m; }
  /// Flat index (il * X1 + k1) * X2 + k2.
  std::size_t index(int il, int k1, int k2) const {
    return (static_cast<std::size_t>(il) * xi1.m + k1) * xi2.m + k2;
  }
  double cell() const { return lambda.h() * xi1.h() * xi2.h(); }
};

struct SpectralTable {
  int two_jmax = 0;
  FrequencyGrid freq;
  /// blocks[two_j][f * d * d + r * d + c], d = two_j + 1.
  std::vector<std::vector<Complex>> blocks;

  static SpectralTable zeros(int two_jmax, const FrequencyGrid& freq);
  CMatrix matrix(int two_j, std::size_t f) const;
  void set_matrix(int two_j, std::size_t f, const CMatrix& m);
  /// sum_j d_j ||block||_HS^2 at frequency f.
  double weighted_hs_squared(std::size_t f) const;
};

/// TFf(lambda, xi, j) = sum w f(n a(t) k) e^{-i lambda t} e^{-i <xi, n>} D^j(k)^dagger
SpectralTable sl2c_fourier(const SampledGroupFunction& f, const FrequencyGrid& freq,
                           int two_jmax, Backend backend = default_backend());

/// sum |f|^2 times cell, K weight and the reading's density.
double group_norm_squared(const SampledGroupFunction& f, Reading r);

/// (2 pi)^{-3} sum_j d_j sum_freq ||TFf||^2 cell; `two_pi_power` = 0 drops the constant.
double spectral_side(const SpectralTable& s, int two_pi_power = 3);

struct PlancherelResult {
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
};

PlancherelResult plancherel_g(const SampledGroupFunction& f, const FrequencyGrid& freq,
                              int two_jmax, Reading r, int two_pi_power = 3,
                              Backend backend = default_backend());

/// (2 pi)^{-3} sum_freq cell sum_j d_j tr TFf
Complex inversion_at_identity(const SpectralTable& s);

/// Function on G x K: (g, k1) -> f(g k1). In n a k coordinates g k1 = (n, t, k k1) under both readings.
struct LiftedFunction {
  GroupFn base;
  Complex operator()(const NakCoords& g, const KElement& k1) const;
  /// Restriction to the slice k1 = identity.
  Complex restricted(const NakCoords& g) const { return base(g); }
};

LiftedFunction lift_upsilon(const SampledGroupFunction& f);

/// (phi * f)(X) = sum_Y w(Y) f(Y^-1 X) phi(Y), quadrature over phi's grid.
Complex convolve_g_at(Reading r, const GroupFn& f, const SampledGroupFunction& phi,
                      const NakCoords& x);
SampledGroupFunction convolve_g(Reading r, const SampledGroupFunction& f,
                                const SampledGroupFunction& phi, const GroupGrid& out,
                                Backend backend = default_backend());

/// fcheck(g) = conj f(g^-1), sampled on the same grid.
SampledGroupFunction fcheck(Reading r, const SampledGroupFunction& f,
                            Backend backend = default_backend());

/// Samples H(n a(t), k1) = sum_{g2} w f(n a(t) g2^-1 k1) psi(g2) on the outer grid,
/// with k1 running over the outer K nodes. psi's grid is the g2 quadrature.
SampledGroupFunction lifted_convolution(Reading r, const GroupFn& f,
                                        const SampledGroupFunction& psi, const GroupGrid& outer,
                                        Backend backend = default_backend());

/// Value of the lifted convolution at (identity, identity).
Complex lifted_convolution_at_identity(Reading r, const GroupFn& f,
                                       const SampledGroupFunction& psi);

/// Largest entrywise |A - B| over all blocks and frequencies.
double max_table_difference(const SpectralTable& a, const SpectralTable& b);
double max_table_entry(const SpectralTable& a);

/// TFf(lambda, xi, j) TFf(lambda, xi, j)^dagger at every node.
SpectralTable gram_table(const SpectralTable& a);

/// For real f: TFf(-w)_{ab} = (-1)^{m_a - m_b} conj(TFf(w)_{a' b'}) where a' indexes -m_a.
/// Returns the largest violation; the frequency grids must be symmetric.
double real_symmetry_defect(const SpectralTable& s);

}  // namespace harmonics
