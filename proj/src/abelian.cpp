#include "harmonics/abelian.hpp"

#include <cmath>
#include <string>

#include "harmonics/errors.hpp"

namespace harmonics {

LineGrid::LineGrid(double half_width, int count, double shift)
    : L(half_width), m(count), offset(shift) {
  if (!(L > 0) || !std::isfinite(L)) throw GridMismatch("grid half-width must be positive");
  if (m < 8 || m % 2 != 0) {
    throw GridMismatch("grid count must be even and >= 8, got " + std::to_string(m));
  }
}

std::vector<double> LineGrid::nodes() const {
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[i] = node(i);
  return x;
}

double gaussian_tail(double sigma, double L) {
  return std::erfc(L / (sigma * std::sqrt(2.0)));
}

std::vector<Complex> ft_line(const LineGrid& grid, std::span<const Complex> samples,
                             const LineGrid& freq) {
  if (samples.size() != static_cast<std::size_t>(grid.m)) {
    throw GridMismatch("line samples do not match grid");
  }
  std::vector<Complex> out(freq.m);
  const double h = grid.h();
  for (int k = 0; k < freq.m; ++k) {
    const double lam = freq.node(k);
    Complex s = 0.0;
    for (int i = 0; i < grid.m; ++i) s += samples[i] * std::polar(1.0, -lam * grid.node(i));
    out[k] = h * s;
  }
  return out;
}

namespace {

// kernel[k * m + i] = e^{-i w_k x_i}
std::vector<Complex> exp_table(const LineGrid& grid, const LineGrid& freq) {
  std::vector<Complex> e(static_cast<std::size_t>(freq.m) * grid.m);
  for (int k = 0; k < freq.m; ++k)
    for (int i = 0; i < grid.m; ++i) e[k * grid.m + i] = std::polar(1.0, -freq.node(k) * grid.node(i));
  return e;
}

}  // namespace

std::vector<Complex> ft_plane(const LineGrid& g1, const LineGrid& g2,
                              std::span<const Complex> samples, const LineGrid& f1,
                              const LineGrid& f2) {
  if (samples.size() != static_cast<std::size_t>(g1.m) * g2.m) {
    throw GridMismatch("plane samples do not match grid");
  }
  const auto e1 = exp_table(g1, f1);
  const auto e2 = exp_table(g2, f2);
  // Transform along axis 2 first, then axis 1.
  std::vector<Complex> partial(static_cast<std::size_t>(g1.m) * f2.m);
  for (int i1 = 0; i1 < g1.m; ++i1)
    for (int k2 = 0; k2 < f2.m; ++k2) {
      Complex s = 0.0;
      for (int i2 = 0; i2 < g2.m; ++i2) s += samples[i1 * g2.m + i2] * e2[k2 * g2.m + i2];
      partial[i1 * f2.m + k2] = s;
    }
  std::vector<Complex> out(static_cast<std::size_t>(f1.m) * f2.m);
  const double cell = g1.h() * g2.h();
  for (int k1 = 0; k1 < f1.m; ++k1)
    for (int k2 = 0; k2 < f2.m; ++k2) {
      Complex s = 0.0;
      for (int i1 = 0; i1 < g1.m; ++i1) s += partial[i1 * f2.m + k2] * e1[k1 * g1.m + i1];
      out[k1 * f2.m + k2] = cell * s;
    }
  return out;
}

std::vector<Complex> ft_r4(const SeparableR4& f, const std::array<LineGrid, 4>& freq) {
  std::array<std::vector<Complex>, 4> t;
  for (int a = 0; a < 4; ++a) t[a] = ft_line(f.grids[a], f.factors[a], freq[a]);
  std::vector<Complex> out(static_cast<std::size_t>(freq[0].m) * freq[1].m * freq[2].m *
                           freq[3].m);
  std::size_t idx = 0;
  for (int k0 = 0; k0 < freq[0].m; ++k0)
    for (int k1 = 0; k1 < freq[1].m; ++k1)
      for (int k2 = 0; k2 < freq[2].m; ++k2)
        for (int k3 = 0; k3 < freq[3].m; ++k3) out[idx++] = t[0][k0] * t[1][k1] * t[2][k2] * t[3][k3];
  return out;
}

std::vector<Complex> ft_r4(const DenseR4& f, const std::array<LineGrid, 4>& freq) {
  std::size_t total = 1;
  for (int a = 0; a < 4; ++a) {
    if (f.grids[a].m > kDenseR4MaxPerAxis) {
      throw SizeExceeded("dense R^4 grid limited to " + std::to_string(kDenseR4MaxPerAxis) +
                         " points per axis");
    }
    total *= f.grids[a].m;
  }
  if (f.values.size() != total) throw GridMismatch("dense R^4 samples do not match grid");
  // Contract one axis at a time, innermost first; layout keeps untouched axes in order.
  std::vector<Complex> cur = f.values;
  std::array<int, 4> dims{f.grids[0].m, f.grids[1].m, f.grids[2].m, f.grids[3].m};
  for (int a = 3; a >= 0; --a) {
    const auto e = exp_table(f.grids[a], freq[a]);
    std::size_t outer = 1, inner = 1;
    for (int b = 0; b < a; ++b) outer *= dims[b];
    for (int b = a + 1; b < 4; ++b) inner *= dims[b];
    const int m = dims[a];
    const int n = freq[a].m;
    std::vector<Complex> next(outer * n * inner);
    for (std::size_t o = 0; o < outer; ++o)
      for (int k = 0; k < n; ++k)
        for (std::size_t in = 0; in < inner; ++in) {
          Complex s = 0.0;
          for (int i = 0; i < m; ++i) s += cur[(o * m + i) * inner + in] * e[k * m + i];
          next[(o * n + k) * inner + in] = f.grids[a].h() * s;
        }
    cur.swap(next);
    dims[a] = n;
  }
  return cur;
}

double grid_norm_squared(std::span<const Complex> samples, double cell_volume) {
  double s = 0;
  for (const Complex& z : samples) s += std::norm(z);
  return cell_volume * s;
}

}  // namespace harmonics
