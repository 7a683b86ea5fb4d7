#pragma once

// Poincare group R^4 x| SL(2,C), the auxiliary group Q, lifts of functions,
// the two convolutions, and the transform / Plancherel harness on P.

#include <functional>
#include <memory>
#include <vector>

#include "harmonics/abelian.hpp"
#include "harmonics/minkowski.hpp"
#include "harmonics/slc.hpp"

namespace harmonics {

struct PoincareElement {
  Vec4 v{0, 0, 0, 0};
  GroupElement g;
};

/// (v, g)(v', g') = (v + g v', g g')
PoincareElement poincare_mul(const PoincareElement& p, const PoincareElement& q);
/// (g^-1 (-v), g^-1)
PoincareElement poincare_inv(const PoincareElement& p);
double max_diff(const PoincareElement& p, const PoincareElement& q);

/// Element of Q = R^4 x G x G with named slots.
///   (v, L, R)(v', L', R') = (v + R v', L L', R R')
/// The translation is twisted by the right slot; P acts through it.
struct QElement {
  Vec4 v{0, 0, 0, 0};
  GroupElement left;
  GroupElement right;
};

QElement q_mul(const QElement& x, const QElement& y);
QElement q_inv(const QElement& x);
/// (v, L, R) -> (v, R); a homomorphism onto P.
PoincareElement q_project(const QElement& x);
/// (u, s) . (v, L, R) = (u + s v, L, s R)
QElement p_act_on_q(const PoincareElement& p, const QElement& x);
double max_diff(const QElement& x, const QElement& y);

using PFn = std::function<Complex(const Vec4&, const GroupElement&)>;
using QFn = std::function<Complex(const QElement&)>;
/// Functions on P x K: (v, g, k1).
using PKFn = std::function<Complex(const Vec4&, const GroupElement&, const KElement&)>;

/// ftilde(v, L, R) = f(L v, L R)
QFn tilde_lift(PFn f);
/// h(F)(v, g) = F(g v, g)
PFn h_map(PFn f);
/// (Upsilon F)(v, g, k1) = F(v, g k1)
PKFn upsilon_lift_p(PFn f);
/// Fcheck(p) = conj F(p^-1)
PFn check_p(PFn f);
/// Left translate: x -> F(p^-1 x).
PFn translate_p(PFn f, const PoincareElement& p);

/// Largest |ftilde(q^-1 v, L, q^-1 R) - ftilde(v, L q^-1, R)| over the samples.
double tilde_invariance_defect(const QFn& ftilde, const std::vector<QElement>& points,
                               const std::vector<GroupElement>& qs);

/// Weighted node list for integrals over P with Lebesgue dv and Haar dg.
struct PQuadrature {
  std::vector<Vec4> v;
  std::vector<GroupElement> g;
  std::vector<double> weight;
  std::size_t size() const { return weight.size(); }
};

/// Tensor midpoint grid in v times the group grid with the Haar density e^{-4t} in n a k order.
PQuadrature tensor_p_quadrature(const std::array<LineGrid, 4>& v, const GroupGrid& g);

/// Weighted v nodes (e.g. from gauss_hermite_r4) times the group grid with the Haar density.
PQuadrature mixed_p_quadrature(const std::vector<Vec4>& v, const std::vector<double>& wv,
                               const GroupGrid& g);
/// Gauss-Hermite rule in each of four axes, corrected to Lebesgue measure; scale s per axis.
void gauss_hermite_r4(int n, double s, std::vector<Vec4>& v, std::vector<double>& w);

/// Gauss-Hermite nodes on R (weight e^{-x^2}) via the Golub-Welsch eigenproblem.
void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w);

/// Gauss-Hermite product rule with weights corrected to integrate plain Lebesgue
/// measure: nodes x sqrt(2) s per axis, v-scale sv, n-scale sn, t-scale st.
PQuadrature gauss_hermite_p_quadrature(int nv, double sv, int nn, double sn, int nt, double st,
                                       const KQuadrature& k);

/// (psi * ftilde)(v, L, R) = int ftilde((v', g')^-1 . (v, L, R)) psi(v', g') dv' dg'
QFn convolve_p(PFn psi, QFn ftilde, std::shared_ptr<const PQuadrature> quad,
               Backend backend = Backend::Serial);
/// (psi *_c ftilde)(v, L, R) = int ftilde(v - v', L g'^-1, R) psi(v', g') dv' dg'
QFn convolve_c(PFn psi, QFn ftilde, std::shared_ptr<const PQuadrature> quad,
               Backend backend = Backend::Serial);
/// (phi *_c Phi)(v, (g, k1)) = int Phi(v - v', g g'^-1, k1) phi(v', g') dv' dg'
PKFn convolve_c_lifted(PFn phi, PKFn big_phi, std::shared_ptr<const PQuadrature> quad,
                       Backend backend = Backend::Serial);

/// f(v, g) = phi(v) psi(g) with sampled factors.
struct SampledPFunction {
  /// Exactly one of the two v representations is used.
  bool separable = true;
  SeparableR4 v_separable;
  DenseR4 v_dense;
  SampledGroupFunction g_part;
  PFn closed_form;
  DecayCertificate decay;
};

struct PSpectralTable {
  std::array<LineGrid, 4> eta;
  /// Transform of the v-part, index ((k0 * n1 + k1) * n2 + k2) * n3 + k3.
  std::vector<Complex> v_transform;
  SpectralTable g_transform;

  std::size_t eta_size() const { return v_transform.size(); }
  double eta_cell() const { return eta[0].h() * eta[1].h() * eta[2].h() * eta[3].h(); }
  CMatrix matrix(int two_j, std::size_t eta_index, std::size_t freq_index) const;
};

PSpectralTable poincare_fourier(const SampledPFunction& f, const std::array<LineGrid, 4>& eta,
                                const FrequencyGrid& freq, int two_jmax,
                                Backend backend = default_backend());

double v_norm_squared(const SampledPFunction& f);

PlancherelResult plancherel_p(const SampledPFunction& f, const std::array<LineGrid, 4>& eta,
                              const FrequencyGrid& freq, int two_jmax, Reading r,
                              int two_pi_power = 7, Backend backend = default_backend());

/// Real-f symmetry defect of the product table under (eta, lambda, xi) -> -(eta, lambda, xi).
double real_symmetry_defect(const PSpectralTable& s);

}  // namespace harmonics
