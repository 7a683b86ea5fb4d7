#pragma once

// Peter-Weyl analysis on SU(2): Wigner D matrices, exact product quadrature,
// forward/inverse transforms, Plancherel, Casimir and Sobolev multipliers.

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "harmonics/kernels.hpp"
#include "harmonics/lie_core.hpp"

namespace harmonics {

using CMatrix = Eigen::MatrixXcd;

constexpr int kMaxTwoJ = 40;

/// Spin j = two_j / 2.
struct IrrepIndex {
  int two_j = 0;
  int dim() const { return two_j + 1; }
  double j() const { return 0.5 * two_j; }
};

/// D^j(k) with rows and columns ordered by descending m (index r <-> m = j - r).
/// D^{1/2}(k) is the defining 2x2 matrix of k.
CMatrix wigner_d(int two_j, const KElement& k);

/// Writes D^j(k) row-major into out[0 .. dim*dim). Throws BandlimitExceeded past kMaxTwoJ.
void wigner_d_into(int two_j, const KElement& k, Complex* out);

struct KQuadrature {
  std::vector<KElement> nodes;
  std::vector<double> weights;
  /// Integrates every matrix entry of D^J exactly for two_J <= 2 * design_two_jmax.
  int design_two_jmax = 0;
  std::size_t size() const { return nodes.size(); }
};

/// Product rule: uniform phi on [0, 2pi), uniform psi on [0, 4pi),
/// Gauss-Legendre in cos(theta). Weights sum to 1.
KQuadrature build_k_quadrature(int two_jmax);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

struct KSpectrum {
  int two_jmax = 0;
  /// blocks[two_j] is (two_j + 1) x (two_j + 1).
  std::vector<CMatrix> blocks;

  static KSpectrum zeros(int two_jmax);
};

/// Tf(j) = sum_k w f(k) D^j(k)^dagger
KSpectrum peter_weyl_forward(const KQuadrature& q, std::span<const Complex> samples,
                             int two_jmax);

/// f(k) = sum_j d_j tr[Tf(j) D^j(k)]
Complex peter_weyl_inverse(const KSpectrum& s, const KElement& k);

std::vector<Complex> sample_on(const KQuadrature& q,
                               const std::function<Complex(const KElement&)>& f);

double k_norm_squared(const KQuadrature& q, std::span<const Complex> samples);
/// sum_j d_j ||Tf(j)||_HS^2
double spectral_norm_squared(const KSpectrum& s);

/// |int |f|^2 - sum_j d_j ||Tf(j)||^2| / int |f|^2, or the absolute gap when f = 0.
double plancherel_k_residual(const KQuadrature& q, std::span<const Complex> samples,
                             int two_jmax);

/// Scales block j by -j(j+1).
KSpectrum casimir_apply(const KSpectrum& s);
/// Scales block j by (1 + j(j+1))^l.
KSpectrum sobolev_operator_apply(const KSpectrum& s, int l);
double sobolev_seminorm(const KSpectrum& s, int l);

/// (phi * f)(x) = int f(y^-1 x) phi(y) dy
Complex convolve_k(const KQuadrature& q, const std::function<Complex(const KElement&)>& f,
                   const std::function<Complex(const KElement&)>& phi, const KElement& x);

/// Random bandlimited function sum_j d_j tr[C_j D^j(k)] with Gaussian C_j entries.
struct BandlimitedK {
  KSpectrum coefficients;
  Complex operator()(const KElement& k) const { return peter_weyl_inverse(coefficients, k); }
};

}  // namespace harmonics
