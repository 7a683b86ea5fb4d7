#pragma once

// Signature forms, Lorentz classification, the Hermitian-matrix model of
// Minkowski space and the spinor covering map SL(2,C) -> SO+(3,1).

#include <Eigen/Dense>
#include <array>
#include <span>

#include "harmonics/lie_core.hpp"

namespace harmonics {

/// (t, x, y, z)
using Vec4 = std::array<double, 4>;
using Hermitian2 = Eigen::Matrix2cd;
using Lorentz4 = Eigen::Matrix4d;

/// I_{p,q}: p entries +1 followed by q entries -1.
Eigen::MatrixXd signature_matrix(int p, int q);

/// sum_{i<p} x_i y_i - sum_{i>=p} x_i y_i; throws DimensionMismatch.
double theta_form(int p, int q, std::span<const double> x, std::span<const double> y);

/// t^2 - x^2 - y^2 - z^2
double minkowski_square(const Vec4& v);

enum class LorentzClass { NotO31, O31, SO31, SO31Plus };
const char* to_string(LorentzClass c);

/// Metric test, then det = +1, then time-orientation. Tolerances scale with |A|^2.
LorentzClass classify_lorentz(const Lorentz4& a, double tol = 1e-10);

/// [[t + z, x - i y], [x + i y, t - z]]
Hermitian2 vec_to_hermitian(const Vec4& v);
/// Throws NotHermitian if |M - M^dagger|_max > 1e-10.
Vec4 hermitian_to_vec(const Hermitian2& m);

/// v -> g M(v) g^dagger
Vec4 spinor_action(const GroupElement& g, const Vec4& v);

/// Column i is the image of basis vector e_i.
Lorentz4 covering_map(const GroupElement& g);

Vec4 operator+(const Vec4& a, const Vec4& b);
Vec4 operator-(const Vec4& a, const Vec4& b);
Vec4 operator-(const Vec4& a);
Vec4 operator*(double s, const Vec4& a);
double max_abs_diff(const Vec4& a, const Vec4& b);

}  // namespace harmonics
