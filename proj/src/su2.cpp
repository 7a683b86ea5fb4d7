#include "harmonics/su2.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "harmonics/errors.hpp"

namespace harmonics {

namespace {

struct Term {
  int p_alpha, p_beta, p_nbeta, p_calpha;
  double coef;
};

// Expansion of the spin-j symmetric power of [[alpha, -conj(beta)], [beta, conj(alpha)]].
struct WignerTable {
  std::vector<Term> terms;
  std::vector<int> offset;  // (dim*dim + 1) entries
};

double log_factorial(int n) { return std::lgamma(n + 1.0); }

WignerTable make_table(int two_j) {
  WignerTable t;
  const int d = two_j + 1;
  t.offset.reserve(d * d + 1);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      t.offset.push_back(static_cast<int>(t.terms.size()));
      const double norm = 0.5 * (log_factorial(two_j - r) + log_factorial(r) +
                                 log_factorial(two_j - c) + log_factorial(c));
      const int klo = std::max(0, r - c);
      const int khi = std::min(two_j - c, r);
      for (int k = klo; k <= khi; ++k) {
        Term term{two_j - c - k, k, c - r + k, r - k, 0.0};
        term.coef = std::exp(norm - log_factorial(k) - log_factorial(term.p_alpha) -
                             log_factorial(term.p_nbeta) - log_factorial(term.p_calpha));
        t.terms.push_back(term);
      }
    }
  }
  t.offset.push_back(static_cast<int>(t.terms.size()));
  return t;
}

const WignerTable& table_for(int two_j) {
  static std::array<std::once_flag, kMaxTwoJ + 1> flags;
  static std::array<WignerTable, kMaxTwoJ + 1> tables;
  std::call_once(flags[two_j], [two_j] { tables[two_j] = make_table(two_j); });
  return tables[two_j];
}

void check_two_j(int two_j) {
  if (two_j < 0 || two_j > kMaxTwoJ) {
    throw BandlimitExceeded("two_j = " + std::to_string(two_j) + " outside [0, " +
                            std::to_string(kMaxTwoJ) + "]");
  }
}

}  // namespace

void wigner_d_into(int two_j, const KElement& k, Complex* out) {
  check_two_j(two_j);
  const WignerTable& t = table_for(two_j);
  std::array<Complex, kMaxTwoJ + 1> pa, pb, pn, pc;
  const Complex a = k.alpha();
  const Complex b = k.beta();
  const Complex nb = -std::conj(b);
  const Complex ca = std::conj(a);
  pa[0] = pb[0] = pn[0] = pc[0] = 1.0;
  for (int i = 1; i <= two_j; ++i) {
    pa[i] = pa[i - 1] * a;
    pb[i] = pb[i - 1] * b;
    pn[i] = pn[i - 1] * nb;
    pc[i] = pc[i - 1] * ca;
  }
  const int dd = (two_j + 1) * (two_j + 1);
  for (int e = 0; e < dd; ++e) {
    Complex s = 0.0;
    for (int i = t.offset[e]; i < t.offset[e + 1]; ++i) {
      const Term& tm = t.terms[i];
      s += tm.coef * pa[tm.p_alpha] * pb[tm.p_beta] * pn[tm.p_nbeta] * pc[tm.p_calpha];
    }
    out[e] = s;
  }
}

CMatrix wigner_d(int two_j, const KElement& k) {
  check_two_j(two_j);
  const int d = two_j + 1;
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(d, d);
  wigner_d_into(two_j, k, m.data());
  return m;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int l = 1; l <= n; ++l) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * l - 1.0) * z * p1 - (l - 1.0) * p2) / l;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = 0.0;
    for (int l = 1; l <= n; ++l) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * l - 1.0) * z * p1 - (l - 1.0) * p2) / l;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

KQuadrature build_k_quadrature(int two_jmax) {
  check_two_j(two_jmax);
  KQuadrature q;
  q.design_two_jmax = two_jmax;
  const int n_phi = 2 * two_jmax + 1;
  const int n_psi = 2 * two_jmax + 1;
  const int n_theta = two_jmax / 2 + 1;
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  const double pi = std::numbers::pi;
  q.nodes.reserve(static_cast<std::size_t>(n_phi) * n_psi * n_theta);
  for (int ip = 0; ip < n_phi; ++ip) {
    const double phi = 2 * pi * ip / n_phi;
    for (int it = 0; it < n_theta; ++it) {
      const double theta = std::acos(x[it]);
      for (int is = 0; is < n_psi; ++is) {
        const double psi = 4 * pi * is / n_psi;
        q.nodes.push_back(KElement::from_euler(phi, theta, psi));
        q.weights.push_back(w[it] / (2.0 * n_phi * n_psi));
      }
    }
  }
  return q;
}

KSpectrum KSpectrum::zeros(int two_jmax) {
  check_two_j(two_jmax);
  KSpectrum s;
  s.two_jmax = two_jmax;
  for (int tj = 0; tj <= two_jmax; ++tj) s.blocks.push_back(CMatrix::Zero(tj + 1, tj + 1));
  return s;
}

KSpectrum peter_weyl_forward(const KQuadrature& q, std::span<const Complex> samples,
                             int two_jmax) {
  if (samples.size() != q.size()) {
    throw GridMismatch("expected " + std::to_string(q.size()) + " samples, got " +
                       std::to_string(samples.size()));
  }
  if (two_jmax > q.design_two_jmax) {
    throw BandlimitExceeded("quadrature designed for two_jmax = " +
                            std::to_string(q.design_two_jmax));
  }
  KSpectrum s = KSpectrum::zeros(two_jmax);
  std::vector<Complex> buf((two_jmax + 1) * (two_jmax + 1));
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Complex wf = q.weights[i] * samples[i];
    for (int tj = 0; tj <= two_jmax; ++tj) {
      const int d = tj + 1;
      wigner_d_into(tj, q.nodes[i], buf.data());
      // Adjoint: entry (r, c) takes conj(D(c, r)).
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) s.blocks[tj](r, c) += wf * std::conj(buf[c * d + r]);
    }
  }
  return s;
}

Complex peter_weyl_inverse(const KSpectrum& s, const KElement& k) {
  Complex total = 0.0;
  std::vector<Complex> buf((s.two_jmax + 1) * (s.two_jmax + 1));
  for (int tj = 0; tj <= s.two_jmax; ++tj) {
    const int d = tj + 1;
    wigner_d_into(tj, k, buf.data());
    Complex tr = 0.0;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) tr += s.blocks[tj](r, c) * buf[c * d + r];
    total += static_cast<double>(d) * tr;
  }
  return total;
}

std::vector<Complex> sample_on(const KQuadrature& q,
                               const std::function<Complex(const KElement&)>& f) {
  std::vector<Complex> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = f(q.nodes[i]);
  return out;
}

double k_norm_squared(const KQuadrature& q, std::span<const Complex> samples) {
  if (samples.size() != q.size()) throw GridMismatch("sample count differs from node count");
  double s = 0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::norm(samples[i]);
  return s;
}

double spectral_norm_squared(const KSpectrum& s) {
  double total = 0;
  for (int tj = 0; tj <= s.two_jmax; ++tj) total += (tj + 1) * s.blocks[tj].squaredNorm();
  return total;
}

double plancherel_k_residual(const KQuadrature& q, std::span<const Complex> samples,
                             int two_jmax) {
  const double lhs = k_norm_squared(q, samples);
  const double rhs = spectral_norm_squared(peter_weyl_forward(q, samples, two_jmax));
  const double gap = std::abs(lhs - rhs);
  return lhs > 0 ? gap / lhs : gap;
}

KSpectrum casimir_apply(const KSpectrum& s) {
  KSpectrum out = s;
  for (int tj = 0; tj <= s.two_jmax; ++tj) {
    const double j = 0.5 * tj;
    out.blocks[tj] *= -j * (j + 1);
  }
  return out;
}

KSpectrum sobolev_operator_apply(const KSpectrum& s, int l) {
  KSpectrum out = s;
  for (int tj = 0; tj <= s.two_jmax; ++tj) {
    const double j = 0.5 * tj;
    out.blocks[tj] *= std::pow(1.0 + j * (j + 1), l);
  }
  return out;
}

double sobolev_seminorm(const KSpectrum& s, int l) {
  return std::sqrt(spectral_norm_squared(sobolev_operator_apply(s, l)));
}

Complex convolve_k(const KQuadrature& q, const std::function<Complex(const KElement&)>& f,
                   const std::function<Complex(const KElement&)>& phi, const KElement& x) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const KElement& y = q.nodes[i];
    s += q.weights[i] * f(y.inverse() * x) * phi(y);
  }
  return s;
}

}  // namespace harmonics
