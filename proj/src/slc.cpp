#include "harmonics/slc.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "harmonics/errors.hpp"

namespace harmonics {

const char* to_string(Reading r) { return r == Reading::Product ? "product" : "haar"; }

NakCoords group_mul(Reading r, const NakCoords& x, const NakCoords& y) {
  if (r == Reading::Product) return {x.n + y.n, x.t + y.t, x.k * y.k};
  return nak_decompose(compose_nak(x) * compose_nak(y));
}

NakCoords group_inv(Reading r, const NakCoords& x) {
  if (r == Reading::Product) return {-x.n, -x.t, x.k.inverse()};
  return nak_decompose(compose_nak(x).inverse());
}

double measure_density(Reading r, double t) {
  return r == Reading::Product ? 1.0 : haar_density({Ordering::NAK, 4.0}, t);
}

NakCoords GroupGrid::coords(std::size_t ik, int i1, int i2, int it) const {
  return {Complex(n1.node(i1), n2.node(i2)), t.node(it), k.nodes[ik]};
}

SampledGroupFunction sample_group_function(const GroupGrid& grid, GroupFn f,
                                           DecayCertificate decay, Backend backend) {
  SampledGroupFunction s;
  s.grid = grid;
  s.values.resize(grid.size());
  const std::int64_t nk = static_cast<std::int64_t>(grid.k.size());
  parallel_for(backend, nk * grid.n1.m, [&](std::int64_t row) {
    const std::size_t ik = static_cast<std::size_t>(row / grid.n1.m);
    const int i1 = static_cast<int>(row % grid.n1.m);
    for (int i2 = 0; i2 < grid.n2.m; ++i2)
      for (int it = 0; it < grid.t.m; ++it)
        s.values[grid.index(ik, i1, i2, it)] = f(grid.coords(ik, i1, i2, it));
  });
  s.closed_form = std::move(f);
  s.decay = decay;
  return s;
}

SpectralTable SpectralTable::zeros(int two_jmax, const FrequencyGrid& freq) {
  SpectralTable s;
  s.two_jmax = two_jmax;
  s.freq = freq;
  for (int tj = 0; tj <= two_jmax; ++tj)
    s.blocks.emplace_back(freq.size() * (tj + 1) * (tj + 1), Complex(0.0));
  return s;
}

CMatrix SpectralTable::matrix(int two_j, std::size_t f) const {
  const int d = two_j + 1;
  CMatrix m(d, d);
  const Complex* p = blocks[two_j].data() + f * d * d;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = p[r * d + c];
  return m;
}

void SpectralTable::set_matrix(int two_j, std::size_t f, const CMatrix& m) {
  const int d = two_j + 1;
  Complex* p = blocks[two_j].data() + f * d * d;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) p[r * d + c] = m(r, c);
}

double SpectralTable::weighted_hs_squared(std::size_t f) const {
  double total = 0;
  for (int tj = 0; tj <= two_jmax; ++tj) {
    const int dd = (tj + 1) * (tj + 1);
    const Complex* p = blocks[tj].data() + f * dd;
    double s = 0;
    for (int e = 0; e < dd; ++e) s += std::norm(p[e]);
    total += (tj + 1) * s;
  }
  return total;
}

namespace {

std::vector<Complex> kernel_table(const LineGrid& x, const LineGrid& w) {
  std::vector<Complex> e(static_cast<std::size_t>(w.m) * x.m);
  for (int k = 0; k < w.m; ++k)
    for (int i = 0; i < x.m; ++i) e[k * x.m + i] = std::polar(1.0, -w.node(k) * x.node(i));
  return e;
}

}  // namespace

SpectralTable sl2c_fourier(const SampledGroupFunction& f, const FrequencyGrid& freq,
                           int two_jmax, Backend backend) {
  const GroupGrid& g = f.grid;
  if (f.values.size() != g.size()) throw GridMismatch("sample array does not match grid");
  if (two_jmax > g.k.design_two_jmax) {
    throw BandlimitExceeded("K quadrature designed for two_jmax = " +
                            std::to_string(g.k.design_two_jmax) + ", requested " +
                            std::to_string(two_jmax));
  }
  const std::size_t nk = g.k.size();
  const std::size_t na = g.abelian_size();

  // D^j(k)^dagger at every K node, row-major, weighted.
  std::vector<int> entry_offset(two_jmax + 2, 0);
  for (int tj = 0; tj <= two_jmax; ++tj) entry_offset[tj + 1] = entry_offset[tj] + (tj + 1) * (tj + 1);
  const int n_entries = entry_offset[two_jmax + 1];
  std::vector<Complex> dadj(nk * n_entries);
  {
    std::vector<Complex> buf((two_jmax + 1) * (two_jmax + 1));
    for (std::size_t ik = 0; ik < nk; ++ik)
      for (int tj = 0; tj <= two_jmax; ++tj) {
        const int d = tj + 1;
        wigner_d_into(tj, g.k.nodes[ik], buf.data());
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            dadj[ik * n_entries + entry_offset[tj] + r * d + c] =
                g.k.weights[ik] * std::conj(buf[c * d + r]);
      }
  }

  // Step 1: K-transform at every abelian node; layout [entry][abelian node].
  std::vector<Complex> kpart(static_cast<std::size_t>(n_entries) * na);
  parallel_for(backend, static_cast<std::int64_t>(na), [&](std::int64_t a) {
    for (int e = 0; e < n_entries; ++e) {
      Complex s = 0.0;
      for (std::size_t ik = 0; ik < nk; ++ik) s += f.values[ik * na + a] * dadj[ik * n_entries + e];
      kpart[e * na + a] = s;
    }
  });

  // Step 2: separable abelian transform per matrix entry: t, then n2, then n1.
  const auto et = kernel_table(g.t, freq.lambda);
  const auto e2 = kernel_table(g.n2, freq.xi2);
  const auto e1 = kernel_table(g.n1, freq.xi1);
  const int N1 = g.n1.m, N2 = g.n2.m, T = g.t.m;
  const int L = freq.lambda.m, X1 = freq.xi1.m, X2 = freq.xi2.m;
  const double cell = g.cell();
  SpectralTable out = SpectralTable::zeros(two_jmax, freq);
  parallel_for(backend, n_entries, [&](std::int64_t e) {
    int tj = 0;
    while (entry_offset[tj + 1] <= e) ++tj;
    const int dd = (tj + 1) * (tj + 1);
    const int local = static_cast<int>(e) - entry_offset[tj];
    const Complex* x = kpart.data() + e * na;
    std::vector<Complex> y(static_cast<std::size_t>(N1) * N2 * L);
    for (int i1 = 0; i1 < N1; ++i1)
      for (int i2 = 0; i2 < N2; ++i2)
        for (int l = 0; l < L; ++l) {
          Complex s = 0.0;
          const Complex* row = x + (static_cast<std::size_t>(i1) * N2 + i2) * T;
          for (int it = 0; it < T; ++it) s += row[it] * et[l * T + it];
          y[(static_cast<std::size_t>(i1) * N2 + i2) * L + l] = s;
        }
    std::vector<Complex> z(static_cast<std::size_t>(N1) * X2 * L);
    for (int i1 = 0; i1 < N1; ++i1)
      for (int k2 = 0; k2 < X2; ++k2)
        for (int l = 0; l < L; ++l) {
          Complex s = 0.0;
          for (int i2 = 0; i2 < N2; ++i2)
            s += y[(static_cast<std::size_t>(i1) * N2 + i2) * L + l] * e2[k2 * N2 + i2];
          z[(static_cast<std::size_t>(i1) * X2 + k2) * L + l] = s;
        }
    std::vector<Complex>& block = out.blocks[tj];
    for (int k1 = 0; k1 < X1; ++k1)
      for (int k2 = 0; k2 < X2; ++k2)
        for (int l = 0; l < L; ++l) {
          Complex s = 0.0;
          for (int i1 = 0; i1 < N1; ++i1)
            s += z[(static_cast<std::size_t>(i1) * X2 + k2) * L + l] * e1[k1 * N1 + i1];
          block[freq.index(l, k1, k2) * dd + local] = cell * s;
        }
  });
  return out;
}

double group_norm_squared(const SampledGroupFunction& f, Reading r) {
  const GroupGrid& g = f.grid;
  std::vector<double> dens(g.t.m);
  for (int it = 0; it < g.t.m; ++it) dens[it] = measure_density(r, g.t.node(it));
  double total = 0;
  for (std::size_t ik = 0; ik < g.k.size(); ++ik) {
    double sk = 0;
    for (int i1 = 0; i1 < g.n1.m; ++i1)
      for (int i2 = 0; i2 < g.n2.m; ++i2)
        for (int it = 0; it < g.t.m; ++it)
          sk += std::norm(f.values[g.index(ik, i1, i2, it)]) * dens[it];
    total += g.k.weights[ik] * sk;
  }
  return total * g.cell();
}

double spectral_side(const SpectralTable& s, int two_pi_power) {
  double total = 0;
  for (std::size_t f = 0; f < s.freq.size(); ++f) total += s.weighted_hs_squared(f);
  return total * s.freq.cell() * std::pow(2 * std::numbers::pi, -two_pi_power);
}

PlancherelResult plancherel_g(const SampledGroupFunction& f, const FrequencyGrid& freq,
                              int two_jmax, Reading r, int two_pi_power, Backend backend) {
  PlancherelResult p;
  p.lhs = group_norm_squared(f, r);
  p.rhs = spectral_side(sl2c_fourier(f, freq, two_jmax, backend), two_pi_power);
  const double gap = std::abs(p.lhs - p.rhs);
  p.residual = p.lhs > 0 ? gap / p.lhs : gap;
  return p;
}

Complex inversion_at_identity(const SpectralTable& s) {
  Complex total = 0.0;
  for (int tj = 0; tj <= s.two_jmax; ++tj) {
    const int d = tj + 1;
    Complex tr_sum = 0.0;
    for (std::size_t f = 0; f < s.freq.size(); ++f)
      for (int r = 0; r < d; ++r) tr_sum += s.blocks[tj][f * d * d + r * d + r];
    total += static_cast<double>(d) * tr_sum;
  }
  return total * s.freq.cell() * std::pow(2 * std::numbers::pi, -3);
}

Complex LiftedFunction::operator()(const NakCoords& g, const KElement& k1) const {
  return base({g.n, g.t, g.k * k1});
}

LiftedFunction lift_upsilon(const SampledGroupFunction& f) {
  if (!f.has_closed_form()) throw RequiresClosedForm("lift needs an evaluator for f");
  return {f.closed_form};
}

Complex convolve_g_at(Reading r, const GroupFn& f, const SampledGroupFunction& phi,
                      const NakCoords& x) {
  const GroupGrid& g = phi.grid;
  Complex total = 0.0;
  for (std::size_t ik = 0; ik < g.k.size(); ++ik) {
    Complex sk = 0.0;
    for (int i1 = 0; i1 < g.n1.m; ++i1)
      for (int i2 = 0; i2 < g.n2.m; ++i2)
        for (int it = 0; it < g.t.m; ++it) {
          const Complex p = phi.values[g.index(ik, i1, i2, it)];
          if (p == 0.0) continue;
          const NakCoords y = g.coords(ik, i1, i2, it);
          sk += f(group_mul(r, group_inv(r, y), x)) * p * measure_density(r, y.t);
        }
    total += g.k.weights[ik] * sk;
  }
  return total * g.cell();
}

SampledGroupFunction convolve_g(Reading r, const SampledGroupFunction& f,
                                const SampledGroupFunction& phi, const GroupGrid& out,
                                Backend backend) {
  if (!f.has_closed_form()) throw RequiresClosedForm("convolution needs an evaluator for f");
  auto fn = f.closed_form;
  auto phi_copy = std::make_shared<SampledGroupFunction>(phi);
  GroupFn conv = [r, fn, phi_copy](const NakCoords& x) {
    return convolve_g_at(r, fn, *phi_copy, x);
  };
  return sample_group_function(out, conv, {f.decay.eps_tail + phi.decay.eps_tail}, backend);
}

SampledGroupFunction fcheck(Reading r, const SampledGroupFunction& f, Backend backend) {
  if (!f.has_closed_form()) throw RequiresClosedForm("fcheck needs an evaluator for f");
  auto fn = f.closed_form;
  GroupFn check = [r, fn](const NakCoords& x) { return std::conj(fn(group_inv(r, x))); };
  return sample_group_function(f.grid, check, f.decay, backend);
}

SampledGroupFunction lifted_convolution(Reading r, const GroupFn& f,
                                        const SampledGroupFunction& psi, const GroupGrid& outer,
                                        Backend backend) {
  const GroupGrid& in = psi.grid;
  const std::size_t n_in = in.size();
  // Inner nodes as inverses with their weights, computed once.
  std::vector<NakCoords> inv_nodes(n_in);
  std::vector<Complex> wpsi(n_in);
  for (std::size_t ik = 0; ik < in.k.size(); ++ik)
    for (int i1 = 0; i1 < in.n1.m; ++i1)
      for (int i2 = 0; i2 < in.n2.m; ++i2)
        for (int it = 0; it < in.t.m; ++it) {
          const std::size_t idx = in.index(ik, i1, i2, it);
          const NakCoords y = in.coords(ik, i1, i2, it);
          inv_nodes[idx] = group_inv(r, y);
          wpsi[idx] = in.k.weights[ik] * in.cell() * measure_density(r, y.t) * psi.values[idx];
        }

  SampledGroupFunction h;
  h.grid = outer;
  h.values.assign(outer.size(), Complex(0.0));
  const std::int64_t rows = static_cast<std::int64_t>(outer.k.size()) * outer.n1.m;
  parallel_for(backend, rows, [&](std::int64_t row) {
    const std::size_t ik = static_cast<std::size_t>(row / outer.n1.m);
    const int i1 = static_cast<int>(row % outer.n1.m);
    const NakCoords k1{0.0, 0.0, outer.k.nodes[ik]};
    for (int i2 = 0; i2 < outer.n2.m; ++i2)
      for (int it = 0; it < outer.t.m; ++it) {
        const NakCoords na{Complex(outer.n1.node(i1), outer.n2.node(i2)), outer.t.node(it),
                           KElement::identity()};
        Complex s = 0.0;
        for (std::size_t j = 0; j < n_in; ++j) {
          if (wpsi[j] == 0.0) continue;
          s += f(group_mul(r, group_mul(r, na, inv_nodes[j]), k1)) * wpsi[j];
        }
        h.values[outer.index(ik, i1, i2, it)] = s;
      }
  });
  return h;
}

Complex lifted_convolution_at_identity(Reading r, const GroupFn& f,
                                       const SampledGroupFunction& psi) {
  const GroupGrid& in = psi.grid;
  Complex s = 0.0;
  for (std::size_t ik = 0; ik < in.k.size(); ++ik)
    for (int i1 = 0; i1 < in.n1.m; ++i1)
      for (int i2 = 0; i2 < in.n2.m; ++i2)
        for (int it = 0; it < in.t.m; ++it) {
          const std::size_t idx = in.index(ik, i1, i2, it);
          const NakCoords y = in.coords(ik, i1, i2, it);
          s += f(group_inv(r, y)) * psi.values[idx] * in.k.weights[ik] *
               measure_density(r, y.t);
        }
  return s * in.cell();
}

double max_table_difference(const SpectralTable& a, const SpectralTable& b) {
  if (a.two_jmax != b.two_jmax || a.freq.size() != b.freq.size()) {
    throw GridMismatch("spectral tables have different shapes");
  }
  double m = 0;
  for (int tj = 0; tj <= a.two_jmax; ++tj)
    for (std::size_t i = 0; i < a.blocks[tj].size(); ++i)
      m = std::max(m, std::abs(a.blocks[tj][i] - b.blocks[tj][i]));
  return m;
}

double max_table_entry(const SpectralTable& a) {
  double m = 0;
  for (const auto& blk : a.blocks)
    for (const Complex& z : blk) m = std::max(m, std::abs(z));
  return m;
}

SpectralTable gram_table(const SpectralTable& a) {
  SpectralTable out = SpectralTable::zeros(a.two_jmax, a.freq);
  for (int tj = 0; tj <= a.two_jmax; ++tj)
    for (std::size_t f = 0; f < a.freq.size(); ++f) {
      const CMatrix m = a.matrix(tj, f);
      out.set_matrix(tj, f, m * m.adjoint());
    }
  return out;
}

double real_symmetry_defect(const SpectralTable& s) {
  const FrequencyGrid& fr = s.freq;
  double worst = 0;
  for (int tj = 0; tj <= s.two_jmax; ++tj) {
    const int d = tj + 1;
    for (int il = 0; il < fr.lambda.m; ++il)
      for (int k1 = 0; k1 < fr.xi1.m; ++k1)
        for (int k2 = 0; k2 < fr.xi2.m; ++k2) {
          const CMatrix plus = s.matrix(tj, fr.index(il, k1, k2));
          const CMatrix minus =
              s.matrix(tj, fr.index(fr.lambda.m - 1 - il, fr.xi1.m - 1 - k1, fr.xi2.m - 1 - k2));
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
              // m = j - index, so m_a - m_b = b - a.
              const double sign = ((b - a) % 2 == 0) ? 1.0 : -1.0;
              const Complex expect = sign * std::conj(plus(d - 1 - a, d - 1 - b));
              worst = std::max(worst, std::abs(minus(a, b) - expect));
            }
        }
  }
  return worst;
}

}  // namespace harmonics
