#include "harmonics/poincare.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "harmonics/errors.hpp"

namespace harmonics {

PoincareElement poincare_mul(const PoincareElement& p, const PoincareElement& q) {
  return {p.v + spinor_action(p.g, q.v), p.g * q.g};
}

PoincareElement poincare_inv(const PoincareElement& p) {
  const GroupElement gi = p.g.inverse();
  return {spinor_action(gi, -p.v), gi};
}

double max_diff(const PoincareElement& p, const PoincareElement& q) {
  return std::max(max_abs_diff(p.v, q.v), p.g.max_diff(q.g));
}

QElement q_mul(const QElement& x, const QElement& y) {
  return {x.v + spinor_action(x.right, y.v), x.left * y.left, x.right * y.right};
}

QElement q_inv(const QElement& x) {
  const GroupElement ri = x.right.inverse();
  return {spinor_action(ri, -x.v), x.left.inverse(), ri};
}

PoincareElement q_project(const QElement& x) { return {x.v, x.right}; }

QElement p_act_on_q(const PoincareElement& p, const QElement& x) {
  return {p.v + spinor_action(p.g, x.v), x.left, p.g * x.right};
}

double max_diff(const QElement& x, const QElement& y) {
  return std::max({max_abs_diff(x.v, y.v), x.left.max_diff(y.left), x.right.max_diff(y.right)});
}

QFn tilde_lift(PFn f) {
  return [f = std::move(f)](const QElement& x) {
    return f(spinor_action(x.left, x.v), x.left * x.right);
  };
}

PFn h_map(PFn f) {
  return [f = std::move(f)](const Vec4& v, const GroupElement& g) {
    return f(spinor_action(g, v), g);
  };
}

PKFn upsilon_lift_p(PFn f) {
  return [f = std::move(f)](const Vec4& v, const GroupElement& g, const KElement& k1) {
    return f(v, g * k1.matrix());
  };
}

PFn check_p(PFn f) {
  return [f = std::move(f)](const Vec4& v, const GroupElement& g) {
    const PoincareElement inv = poincare_inv({v, g});
    return std::conj(f(inv.v, inv.g));
  };
}

PFn translate_p(PFn f, const PoincareElement& p) {
  const PoincareElement pi = poincare_inv(p);
  return [f = std::move(f), pi](const Vec4& v, const GroupElement& g) {
    const PoincareElement x = poincare_mul(pi, {v, g});
    return f(x.v, x.g);
  };
}

double tilde_invariance_defect(const QFn& ftilde, const std::vector<QElement>& points,
                               const std::vector<GroupElement>& qs) {
  if (points.size() != qs.size()) throw DimensionMismatch("one q per sample point expected");
  double worst = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const QElement& x = points[i];
    const GroupElement qi = qs[i].inverse();
    const Complex lhs = ftilde({spinor_action(qi, x.v), x.left, qi * x.right});
    const Complex rhs = ftilde({x.v, x.left * qi, x.right});
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

PQuadrature tensor_p_quadrature(const std::array<LineGrid, 4>& v, const GroupGrid& g) {
  PQuadrature q;
  const double vcell = v[0].h() * v[1].h() * v[2].h() * v[3].h();
  std::vector<Vec4> vs;
  for (int a = 0; a < v[0].m; ++a)
    for (int b = 0; b < v[1].m; ++b)
      for (int c = 0; c < v[2].m; ++c)
        for (int d = 0; d < v[3].m; ++d) vs.push_back({v[0].node(a), v[1].node(b), v[2].node(c), v[3].node(d)});
  for (std::size_t ik = 0; ik < g.k.size(); ++ik)
    for (int i1 = 0; i1 < g.n1.m; ++i1)
      for (int i2 = 0; i2 < g.n2.m; ++i2)
        for (int it = 0; it < g.t.m; ++it) {
          const NakCoords x = g.coords(ik, i1, i2, it);
          const GroupElement ge = compose_nak(x);
          const double w = g.k.weights[ik] * g.cell() * measure_density(Reading::Haar, x.t) * vcell;
          for (const Vec4& vv : vs) {
            q.v.push_back(vv);
            q.g.push_back(ge);
            q.weight.push_back(w);
          }
        }
  return q;
}

void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) j(i, i - 1) = j(i - 1, i) = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  x.resize(n);
  w.resize(n);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
}

void gauss_hermite_r4(int n, double s, std::vector<Vec4>& v, std::vector<double>& w) {
  std::vector<double> x, wx;
  gauss_hermite(n, x, wx);
  for (int i = 0; i < n; ++i) {
    wx[i] *= s * std::sqrt(2.0) * std::exp(x[i] * x[i]);
    x[i] *= s * std::sqrt(2.0);
  }
  v.clear();
  w.clear();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          v.push_back({x[a], x[b], x[c], x[d]});
          w.push_back(wx[a] * wx[b] * wx[c] * wx[d]);
        }
}

PQuadrature mixed_p_quadrature(const std::vector<Vec4>& v, const std::vector<double>& wv,
                               const GroupGrid& g) {
  PQuadrature q;
  for (std::size_t ik = 0; ik < g.k.size(); ++ik)
    for (int i1 = 0; i1 < g.n1.m; ++i1)
      for (int i2 = 0; i2 < g.n2.m; ++i2)
        for (int it = 0; it < g.t.m; ++it) {
          const NakCoords x = g.coords(ik, i1, i2, it);
          const GroupElement ge = compose_nak(x);
          const double w = g.k.weights[ik] * g.cell() * measure_density(Reading::Haar, x.t);
          for (std::size_t i = 0; i < v.size(); ++i) {
            q.v.push_back(v[i]);
            q.g.push_back(ge);
            q.weight.push_back(w * wv[i]);
          }
        }
  return q;
}

PQuadrature gauss_hermite_p_quadrature(int nv, double sv, int nn, double sn, int nt, double st,
                                       const KQuadrature& k) {
  // Lebesgue rule on R: nodes s sqrt2 x_i, weights s sqrt2 w_i e^{x_i^2}.
  auto rule = [](int n, double s, std::vector<double>& x, std::vector<double>& w) {
    gauss_hermite(n, x, w);
    for (int i = 0; i < n; ++i) {
      w[i] *= s * std::sqrt(2.0) * std::exp(x[i] * x[i]);
      x[i] *= s * std::sqrt(2.0);
    }
  };
  std::vector<double> xv, wv, xn, wn, xt, wt;
  rule(nv, sv, xv, wv);
  rule(nn, sn, xn, wn);
  rule(nt, st, xt, wt);
  PQuadrature q;
  for (std::size_t ik = 0; ik < k.size(); ++ik)
    for (int a = 0; a < nn; ++a)
      for (int b = 0; b < nn; ++b)
        for (int c = 0; c < nt; ++c) {
          const NakCoords x{Complex(xn[a], xn[b]), xt[c], k.nodes[ik]};
          const GroupElement ge = compose_nak(x);
          const double wg = k.weights[ik] * wn[a] * wn[b] * wt[c] * measure_density(Reading::Haar, xt[c]);
          for (int i0 = 0; i0 < nv; ++i0)
            for (int i1 = 0; i1 < nv; ++i1)
              for (int i2 = 0; i2 < nv; ++i2)
                for (int i3 = 0; i3 < nv; ++i3) {
                  q.v.push_back({xv[i0], xv[i1], xv[i2], xv[i3]});
                  q.g.push_back(ge);
                  q.weight.push_back(wg * wv[i0] * wv[i1] * wv[i2] * wv[i3]);
                }
        }
  return q;
}

namespace {

// Sums fixed-size chunks independently, then adds chunk totals in order, so
// both backends give the same bits.
template <class Term>
Complex chunked_sum(Backend backend, std::size_t n, Term&& term) {
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Complex> partial(chunks);
  parallel_for(backend, static_cast<std::int64_t>(chunks), [&](std::int64_t c) {
    Complex s = 0.0;
    const std::size_t hi = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < hi; ++i) s += term(i);
    partial[c] = s;
  });
  Complex total = 0.0;
  for (const Complex& p : partial) total += p;
  return total;
}

}  // namespace

QFn convolve_p(PFn psi, QFn ftilde, std::shared_ptr<const PQuadrature> quad, Backend backend) {
  if (!psi || !ftilde) throw RequiresClosedForm("convolution needs evaluators");
  return [psi = std::move(psi), ftilde = std::move(ftilde), quad, backend](const QElement& x) {
    const PQuadrature& q = *quad;
    return chunked_sum(backend, q.size(), [&](std::size_t i) {
      const PoincareElement pinv = poincare_inv({q.v[i], q.g[i]});
      return q.weight[i] * ftilde(p_act_on_q(pinv, x)) * psi(q.v[i], q.g[i]);
    });
  };
}

QFn convolve_c(PFn psi, QFn ftilde, std::shared_ptr<const PQuadrature> quad, Backend backend) {
  if (!psi || !ftilde) throw RequiresClosedForm("convolution needs evaluators");
  return [psi = std::move(psi), ftilde = std::move(ftilde), quad, backend](const QElement& x) {
    const PQuadrature& q = *quad;
    return chunked_sum(backend, q.size(), [&](std::size_t i) {
      return q.weight[i] * ftilde({x.v - q.v[i], x.left * q.g[i].inverse(), x.right}) *
             psi(q.v[i], q.g[i]);
    });
  };
}

PKFn convolve_c_lifted(PFn phi, PKFn big_phi, std::shared_ptr<const PQuadrature> quad,
                       Backend backend) {
  if (!phi || !big_phi) throw RequiresClosedForm("convolution needs evaluators");
  return [phi = std::move(phi), big_phi = std::move(big_phi), quad, backend](
             const Vec4& v, const GroupElement& g, const KElement& k1) {
    const PQuadrature& q = *quad;
    return chunked_sum(backend, q.size(), [&](std::size_t i) {
      return q.weight[i] * big_phi(v - q.v[i], g * q.g[i].inverse(), k1) * phi(q.v[i], q.g[i]);
    });
  };
}

CMatrix PSpectralTable::matrix(int two_j, std::size_t eta_index, std::size_t freq_index) const {
  return v_transform[eta_index] * g_transform.matrix(two_j, freq_index);
}

PSpectralTable poincare_fourier(const SampledPFunction& f, const std::array<LineGrid, 4>& eta,
                                const FrequencyGrid& freq, int two_jmax, Backend backend) {
  PSpectralTable s;
  s.eta = eta;
  s.v_transform = f.separable ? ft_r4(f.v_separable, eta) : ft_r4(f.v_dense, eta);
  s.g_transform = sl2c_fourier(f.g_part, freq, two_jmax, backend);
  return s;
}

double v_norm_squared(const SampledPFunction& f) {
  if (!f.separable) {
    const auto& g = f.v_dense.grids;
    return grid_norm_squared(f.v_dense.values, g[0].h() * g[1].h() * g[2].h() * g[3].h());
  }
  double total = 1.0;
  for (int a = 0; a < 4; ++a) total *= grid_norm_squared(f.v_separable.factors[a], f.v_separable.grids[a].h());
  return total;
}

PlancherelResult plancherel_p(const SampledPFunction& f, const std::array<LineGrid, 4>& eta,
                              const FrequencyGrid& freq, int two_jmax, Reading r,
                              int two_pi_power, Backend backend) {
  const PSpectralTable s = poincare_fourier(f, eta, freq, two_jmax, backend);
  PlancherelResult p;
  p.lhs = v_norm_squared(f) * group_norm_squared(f.g_part, r);
  double eta_sum = 0;
  for (const Complex& z : s.v_transform) eta_sum += std::norm(z);
  // The 7-dimensional frequency sum factors into the eta sum times the (lambda, xi) sum.
  p.rhs = eta_sum * s.eta_cell() * spectral_side(s.g_transform, 0) *
          std::pow(2 * std::numbers::pi, -two_pi_power);
  const double gap = std::abs(p.lhs - p.rhs);
  p.residual = p.lhs > 0 ? gap / p.lhs : gap;
  return p;
}

double real_symmetry_defect(const PSpectralTable& s) {
  const int m0 = s.eta[0].m, m1 = s.eta[1].m, m2 = s.eta[2].m, m3 = s.eta[3].m;
  const FrequencyGrid& fr = s.g_transform.freq;
  double worst = 0;
  for (int tj = 0; tj <= s.g_transform.two_jmax; ++tj) {
    const int d = tj + 1;
    for (int il = 0; il < fr.lambda.m; ++il)
      for (int k1 = 0; k1 < fr.xi1.m; ++k1)
        for (int k2 = 0; k2 < fr.xi2.m; ++k2) {
          const CMatrix gp = s.g_transform.matrix(tj, fr.index(il, k1, k2));
          const CMatrix gm = s.g_transform.matrix(
              tj, fr.index(fr.lambda.m - 1 - il, fr.xi1.m - 1 - k1, fr.xi2.m - 1 - k2));
          for (int a = 0; a < m0; ++a)
            for (int b = 0; b < m1; ++b)
              for (int c = 0; c < m2; ++c)
                for (int e = 0; e < m3; ++e) {
                  const std::size_t i = ((static_cast<std::size_t>(a) * m1 + b) * m2 + c) * m3 + e;
                  const std::size_t j =
                      ((static_cast<std::size_t>(m0 - 1 - a) * m1 + (m1 - 1 - b)) * m2 + (m2 - 1 - c)) *
                          m3 + (m3 - 1 - e);
                  const Complex vp = s.v_transform[i];
                  const Complex vm = s.v_transform[j];
                  for (int r = 0; r < d; ++r)
                    for (int q = 0; q < d; ++q) {
                      const double sign = ((q - r) % 2 == 0) ? 1.0 : -1.0;
                      const Complex expect = sign * std::conj(vp * gp(d - 1 - r, d - 1 - q));
                      worst = std::max(worst, std::abs(vm * gm(r, q) - expect));
                    }
                }
        }
  }
  return worst;
}

}  // namespace harmonics
