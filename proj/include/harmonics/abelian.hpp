#pragma once

// Midpoint-rule Fourier transforms on R, R^2 and R^4. Forward kernel is
// e^{-i<freq, x>} with no prefactor; inverses carry (2 pi)^{-dim}.

#include <array>
#include <span>
#include <vector>

#include "harmonics/lie_core.hpp"

namespace harmonics {

/// Nodes -L + (i + 1/2) h + offset, h = 2L / m.
struct LineGrid {
  double L = 1.0;
  int m = 8;
  /// Shifts the whole node set; lets two grids share a lattice.
  double offset = 0.0;

  LineGrid() = default;
  /// Throws GridMismatch unless m is even and >= 8 and L > 0.
  LineGrid(double half_width, int count, double shift = 0.0);

  double h() const { return 2 * L / m; }
  double node(int i) const { return -L + (i + 0.5) * h() + offset; }
  std::vector<double> nodes() const;
};

/// Bound on the mass a test function places outside its truncated domain.
struct DecayCertificate {
  double eps_tail = 0.0;
};

/// Fraction of the mass of exp(-x^2 / (2 sigma^2)) lying outside [-L, L].
double gaussian_tail(double sigma, double L);

/// F(lambda) = h sum f(t_i) e^{-i lambda t_i}
std::vector<Complex> ft_line(const LineGrid& grid, std::span<const Complex> samples,
                             const LineGrid& freq);

/// samples indexed [i1 * m2 + i2]; output indexed [k1 * f2.m + k2].
std::vector<Complex> ft_plane(const LineGrid& g1, const LineGrid& g2,
                              std::span<const Complex> samples, const LineGrid& f1,
                              const LineGrid& f2);

/// Four one-dimensional factors f(v) = prod_i f_i(v_i).
struct SeparableR4 {
  std::array<LineGrid, 4> grids;
  std::array<std::vector<Complex>, 4> factors;
};

/// Dense samples on a product grid, index ((i0 * m1 + i1) * m2 + i2) * m3 + i3.
struct DenseR4 {
  std::array<LineGrid, 4> grids;
  std::vector<Complex> values;
};

constexpr int kDenseR4MaxPerAxis = 16;

/// Output indexed ((k0 * n1 + k1) * n2 + k2) * n3 + k3 over the frequency grids.
std::vector<Complex> ft_r4(const SeparableR4& f, const std::array<LineGrid, 4>& freq);
std::vector<Complex> ft_r4(const DenseR4& f, const std::array<LineGrid, 4>& freq);

/// h * sum |f|^2 over a tensor grid.
double grid_norm_squared(std::span<const Complex> samples, double cell_volume);

}  // namespace harmonics
