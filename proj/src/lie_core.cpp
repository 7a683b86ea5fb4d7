#include "harmonics/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "harmonics/errors.hpp"

namespace harmonics {

namespace {

constexpr double kAcceptDet = 1e-9;
constexpr double kRenormDet = 1e-13;
constexpr double kPi = std::numbers::pi;

// Maps x into (lo, lo + period].
double wrap(double x, double lo, double period) {
  double r = std::fmod(x - lo, period);
  if (r <= 0) r += period;
  return lo + r;
}

}  // namespace

GroupElement GroupElement::make(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  const double defect = std::abs(det - 1.0);
  if (!(defect <= kAcceptDet)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "determinant off by %.3e", defect);
    throw DeterminantError(buf);
  }
  if (defect == 0.0) return {a, b, c, d};
  const Complex s = std::sqrt(det);
  return {a / s, b / s, c / s, d / s};
}

GroupElement GroupElement::exact_product(Complex a, Complex b, Complex c, Complex d) {
  GroupElement g{a, b, c, d};
  const Complex det = g.det();
  if (std::abs(det - 1.0) > kRenormDet) {
    const Complex s = std::sqrt(det);
    g.a_ /= s;
    g.b_ /= s;
    g.c_ /= s;
    g.d_ /= s;
  }
  return g;
}

GroupElement GroupElement::a_of(double t) { return {std::exp(t), 0.0, 0.0, std::exp(-t)}; }

GroupElement GroupElement::n_of(Complex n) { return {1.0, n, 0.0, 1.0}; }

GroupElement GroupElement::operator*(const GroupElement& r) const {
  GroupElement p{a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_, c_ * r.a_ + d_ * r.c_,
                 c_ * r.b_ + d_ * r.d_};
  const Complex det = p.det();
  const double defect = std::abs(det - 1.0);
  if (defect > kRenormDet) {
    // Rounding in ad - bc grows with the size of the entries.
    const double scale = std::max(1.0, std::abs(p.a_ * p.d_) + std::abs(p.b_ * p.c_));
    if (!(defect <= kAcceptDet * scale)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "determinant drift in product: %.3e", defect);
      throw std::logic_error(buf);
    }
    const Complex s = std::sqrt(det);
    p.a_ /= s;
    p.b_ /= s;
    p.c_ /= s;
    p.d_ /= s;
  }
  return p;
}

double GroupElement::max_diff(const GroupElement& r) const {
  return std::max({std::abs(a_ - r.a_), std::abs(b_ - r.b_), std::abs(c_ - r.c_),
                   std::abs(d_ - r.d_)});
}

double GroupElement::max_abs() const {
  return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

GroupElement multiply(const GroupElement& g1, const GroupElement& g2) { return g1 * g2; }

GroupElement inverse(const GroupElement& g) { return g.inverse(); }

KElement::KElement(Complex alpha, Complex beta) {
  const double r = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(r > 0) || !std::isfinite(r)) throw DeterminantError("degenerate Cayley-Klein pair");
  alpha_ = alpha / r;
  beta_ = beta / r;
}

KElement KElement::from_euler(const EulerAngles& e) {
  const double c = std::cos(e.theta / 2);
  const double s = std::sin(e.theta / 2);
  return unchecked(std::polar(c, -(e.phi + e.psi) / 2), std::polar(s, (e.phi - e.psi) / 2));
}

EulerAngles KElement::euler() const {
  constexpr double kSingular = 1e-14;
  EulerAngles e;
  const double ra = std::abs(alpha_);
  const double rb = std::abs(beta_);
  e.theta = 2 * std::atan2(rb, ra);
  if (rb <= kSingular) {
    e.phi = -2 * std::arg(alpha_);
    return e;
  }
  if (ra <= kSingular) {
    e.phi = 2 * std::arg(beta_);
    return e;
  }
  const double aa = std::arg(alpha_);
  const double ab = std::arg(beta_);
  double phi = ab - aa;
  double psi = -aa - ab;
  const double wrapped = wrap(phi, -kPi, 2 * kPi);
  psi += wrapped - phi;
  e.phi = wrapped;
  e.psi = wrap(psi, -2 * kPi, 4 * kPi);
  return e;
}

GroupElement KElement::matrix() const {
  return {alpha_, -std::conj(beta_), beta_, std::conj(alpha_)};
}

KElement KElement::operator*(const KElement& r) const {
  // First column of [[a, -b*], [b, a*]] [[ra, -rb*], [rb, ra*]].
  const Complex na = alpha_ * r.alpha_ - std::conj(beta_) * r.beta_;
  const Complex nb = beta_ * r.alpha_ + std::conj(alpha_) * r.beta_;
  return unchecked(na, nb);
}

IwasawaFactors iwasawa_decompose(const GroupElement& g) {
  const double r = std::sqrt(std::norm(g.a()) + std::norm(g.c()));
  IwasawaFactors f;
  f.k = KElement(g.a() / r, g.c() / r);
  f.t = std::log(r);
  f.n = (std::conj(g.a()) * g.b() + std::conj(g.c()) * g.d()) / (r * r);
  return f;
}

GroupElement compose_iwasawa(const IwasawaFactors& f) {
  const Complex al = f.k.alpha();
  const Complex be = f.k.beta();
  const double et = std::exp(f.t);
  const double emt = std::exp(-f.t);
  return GroupElement::exact_product(al * et, al * et * f.n - std::conj(be) * emt, be * et,
                            be * et * f.n + std::conj(al) * emt);
}

NakCoords nak_decompose(const GroupElement& g) {
  const double emt = std::sqrt(std::norm(g.c()) + std::norm(g.d()));
  const double et = 1.0 / emt;
  NakCoords c;
  c.t = -std::log(emt);
  c.k = KElement(std::conj(g.d()) * et, g.c() * et);
  const Complex al = c.k.alpha();
  const Complex be = c.k.beta();
  c.n = et * (g.a() * std::conj(be) + g.b() * al);
  return c;
}

GroupElement compose_nak(const NakCoords& c) {
  const Complex al = c.k.alpha();
  const Complex be = c.k.beta();
  const double et = std::exp(c.t);
  const double emt = std::exp(-c.t);
  // n a k with a k = [[e^t al, -e^t conj(be)], [e^-t be, e^-t conj(al)]]
  const Complex r2a = emt * be;
  const Complex r2b = emt * std::conj(al);
  return GroupElement::exact_product(et * al + c.n * r2a, -et * std::conj(be) + c.n * r2b, r2a, r2b);
}

double haar_density(const HaarConvention& conv, double t) {
  switch (conv.ordering) {
    case Ordering::KAN:
      return std::exp(conv.two_rho * t);
    case Ordering::NAK:
      return std::exp(-conv.two_rho * t);
    case Ordering::KNA:
    case Ordering::ANK:
      return 1.0;
  }
  return 1.0;
}

}  // namespace harmonics
