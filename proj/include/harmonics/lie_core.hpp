#pragma once

// SL(2,C) algebra: group elements, the compact factor SU(2), Iwasawa
// coordinates in both KAN and NAK order, and Haar densities per ordering.

#include <complex>

namespace harmonics {

using Complex = std::complex<double>;

class KElement;
struct IwasawaFactors;
struct NakCoords;

/// 2x2 complex matrix [[a, b], [c, d]] with ad - bc = 1.
class GroupElement {
 public:
  /// Identity.
  GroupElement() = default;

  /// Validating constructor. Accepts |det - 1| <= 1e-9 and rescales the
  /// entries by the principal square root of det; anything further away
  /// throws DeterminantError.
  static GroupElement make(Complex a, Complex b, Complex c, Complex d);
  static GroupElement identity() { return {}; }
  static GroupElement diagonal(Complex a) { return {a, 0.0, 0.0, 1.0 / a}; }
  /// a(t) = diag(e^t, e^-t)
  static GroupElement a_of(double t);
  /// n = [[1, n], [0, 1]]
  static GroupElement n_of(Complex n);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex det() const { return a_ * d_ - b_ * c_; }

  GroupElement operator*(const GroupElement& rhs) const;
  GroupElement inverse() const { return {d_, -b_, -c_, a_}; }
  /// Conjugate transpose. Still unimodular up to a phase-free conjugation.
  GroupElement adjoint() const { return {std::conj(a_), std::conj(c_), std::conj(b_), std::conj(d_)}; }
  GroupElement operator-() const { return {-a_, -b_, -c_, -d_}; }

  /// Largest entry modulus of (this - rhs).
  double max_diff(const GroupElement& rhs) const;
  double max_abs() const;

 private:
  friend class KElement;
  friend GroupElement compose_iwasawa(const IwasawaFactors& f);
  friend GroupElement compose_nak(const NakCoords& c);
  /// Entries whose determinant is 1 by construction; rescales away rounding drift.
  static GroupElement exact_product(Complex a, Complex b, Complex c, Complex d);
  GroupElement(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {}
  Complex a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

GroupElement multiply(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);

/// z-y-z Euler angles, radians.
struct EulerAngles {
  double phi = 0;
  double theta = 0;
  double psi = 0;
};

/// Element of SU(2) stored by Cayley-Klein parameters as [[alpha, -conj(beta)], [beta, conj(alpha)]].
class KElement {
 public:
  KElement() = default;
  /// Normalizes (alpha, beta) onto the unit sphere.
  KElement(Complex alpha, Complex beta);

  static KElement identity() { return {}; }
  /// k = exp(-i phi sz/2) exp(-i theta sy/2) exp(-i psi sz/2).
  static KElement from_euler(const EulerAngles& e);
  static KElement from_euler(double phi, double theta, double psi) { return from_euler({phi, theta, psi}); }

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }

  /// phi in (-pi, pi], theta in [0, pi], psi in (-2pi, 2pi]; psi = 0 when theta is 0 or pi.
  EulerAngles euler() const;

  GroupElement matrix() const;
  KElement operator*(const KElement& rhs) const;
  KElement inverse() const { return unchecked(std::conj(alpha_), -beta_); }
  KElement operator-() const { return unchecked(-alpha_, -beta_); }

  double unit_defect() const { return std::abs(std::norm(alpha_) + std::norm(beta_) - 1.0); }

 private:
  static KElement unchecked(Complex alpha, Complex beta) {
    KElement k;
    k.alpha_ = alpha;
    k.beta_ = beta;
    return k;
  }
  Complex alpha_{1.0};
  Complex beta_{0.0};
};

/// g = k a(t) n
struct IwasawaFactors {
  KElement k;
  double t = 0;
  Complex n{0.0};
};

IwasawaFactors iwasawa_decompose(const GroupElement& g);
GroupElement compose_iwasawa(const IwasawaFactors& f);

/// g = n a(t) k. This is the sampling convention of group functions.
struct NakCoords {
  Complex n{0.0};
  double t = 0;
  KElement k;
};

NakCoords nak_decompose(const GroupElement& g);
GroupElement compose_nak(const NakCoords& c);

enum class Ordering { KAN, NAK, KNA, ANK };

/// Haar measure written in product coordinates (k, t, n) with Lebesgue dt dn.
struct HaarConvention {
  Ordering ordering = Ordering::NAK;
  /// Modulus exponent: conjugation by a(t) scales the real plane N by e^{two_rho t}.
  double two_rho = 4.0;
};

/// Positive weight w(t) with  int f dg = int f(coords) w(t) dk dt dn.
double haar_density(const HaarConvention& conv, double t);

}  // namespace harmonics
