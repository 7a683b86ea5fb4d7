#include "harmonics/minkowski.hpp"

#include <cmath>

#include "harmonics/errors.hpp"

namespace harmonics {

Eigen::MatrixXd signature_matrix(int p, int q) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p + q, p + q);
  for (int i = 0; i < p + q; ++i) m(i, i) = i < p ? 1.0 : -1.0;
  return m;
}

double theta_form(int p, int q, std::span<const double> x, std::span<const double> y) {
  const std::size_t n = static_cast<std::size_t>(p + q);
  if (p < 0 || q < 0 || x.size() != n || y.size() != n) {
    throw DimensionMismatch("theta_form expects vectors of length p + q");
  }
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += (static_cast<int>(i) < p ? 1.0 : -1.0) * x[i] * y[i];
  return s;
}

double minkowski_square(const Vec4& v) {
  return v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3];
}

const char* to_string(LorentzClass c) {
  switch (c) {
    case LorentzClass::NotO31:
      return "not_O31";
    case LorentzClass::O31:
      return "O31";
    case LorentzClass::SO31:
      return "SO31";
    case LorentzClass::SO31Plus:
      return "SO31_plus";
  }
  return "?";
}

LorentzClass classify_lorentz(const Lorentz4& a, double tol) {
  const Eigen::Matrix4d eta = signature_matrix(1, 3);
  const double scale = 1.0 + a.squaredNorm();
  const double metric = (a.transpose() * eta * a - eta).cwiseAbs().maxCoeff();
  if (!(metric <= tol * scale)) return LorentzClass::NotO31;
  if (!(std::abs(a.determinant() - 1.0) <= tol * scale)) return LorentzClass::O31;
  if (!(a(0, 0) >= 1.0 - tol * scale)) return LorentzClass::SO31;
  return LorentzClass::SO31Plus;
}

Hermitian2 vec_to_hermitian(const Vec4& v) {
  Hermitian2 m;
  m << Complex(v[0] + v[3], 0), Complex(v[1], -v[2]), Complex(v[1], v[2]), Complex(v[0] - v[3], 0);
  return m;
}

Vec4 hermitian_to_vec(const Hermitian2& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw NotHermitian("matrix is not Hermitian");
  const double t = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const double z = 0.5 * (m(0, 0).real() - m(1, 1).real());
  const double x = 0.5 * (m(1, 0).real() + m(0, 1).real());
  const double y = 0.5 * (m(1, 0).imag() - m(0, 1).imag());
  return {t, x, y, z};
}

Vec4 spinor_action(const GroupElement& g, const Vec4& v) {
  Eigen::Matrix2cd gm;
  gm << g.a(), g.b(), g.c(), g.d();
  const Hermitian2 out = gm * vec_to_hermitian(v) * gm.adjoint();
  // Symmetrize away rounding before reading off the components.
  return hermitian_to_vec(0.5 * (out + out.adjoint()));
}

Lorentz4 covering_map(const GroupElement& g) {
  Lorentz4 l;
  for (int i = 0; i < 4; ++i) {
    Vec4 e{0, 0, 0, 0};
    e[i] = 1.0;
    const Vec4 col = spinor_action(g, e);
    for (int r = 0; r < 4; ++r) l(r, i) = col[r];
  }
  return l;
}

Vec4 operator+(const Vec4& a, const Vec4& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }
Vec4 operator-(const Vec4& a, const Vec4& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }
Vec4 operator-(const Vec4& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
Vec4 operator*(double s, const Vec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

double max_abs_diff(const Vec4& a, const Vec4& b) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace harmonics
