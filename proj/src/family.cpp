#include "harmonics/family.hpp"

#include <cmath>
#include <numbers>

namespace harmonics {

Complex random_complex(Rng& rng, double spread) {
  std::normal_distribution<double> nd(0.0, spread);
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

GroupElement random_group_element(Rng& rng, double spread) {
  for (;;) {
    const Complex a = random_complex(rng, spread);
    const Complex b = random_complex(rng, spread);
    const Complex c = random_complex(rng, spread);
    const Complex d = random_complex(rng, spread);
    const Complex det = a * d - b * c;
    if (std::abs(det) < 1e-3) continue;
    const Complex s = std::sqrt(det);
    return GroupElement::make(a / s, b / s, c / s, d / s);
  }
}

KElement random_k_element(Rng& rng) {
  for (;;) {
    const Complex a = random_complex(rng);
    const Complex b = random_complex(rng);
    if (std::norm(a) + std::norm(b) > 1e-8) return KElement(a, b);
  }
}

Complex GaussianWigner::k_part(const KElement& k) const {
  Complex total = 0.0;
  thread_local std::vector<Complex> buf;
  for (int tj = 0; tj <= two_jmax(); ++tj) {
    const CMatrix& c = coefficients[tj];
    if (c.size() == 0) continue;
    const int d = tj + 1;
    buf.resize(d * d);
    wigner_d_into(tj, k, buf.data());
    for (int r = 0; r < d; ++r)
      for (int q = 0; q < d; ++q) total += c(q, r) * buf[r * d + q];
  }
  return total;
}

Complex GaussianWigner::operator()(const NakCoords& x) const {
  const double radial = std::exp(-std::norm(x.n) / (2 * sigma * sigma) - x.t * x.t / (2 * tau * tau));
  return radial * k_part(x.k);
}

GroupFn GaussianWigner::as_function() const {
  GaussianWigner copy = *this;
  return [copy](const NakCoords& x) { return copy(x); };
}

double GaussianWigner::norm_squared(Reading r) const {
  // int |e^{-|n|^2/2s^2}|^2 dn = pi s^2; int e^{-t^2/t0^2} w(t) dt below.
  const double n_part = std::numbers::pi * sigma * sigma;
  double t_part = std::sqrt(std::numbers::pi) * tau;
  if (r == Reading::Haar) t_part *= std::exp(4.0 * tau * tau);
  double k = 0;
  for (int tj = 0; tj <= two_jmax(); ++tj)
    if (coefficients[tj].size() != 0) k += coefficients[tj].squaredNorm() / (tj + 1);
  return n_part * t_part * k;
}

CMatrix GaussianWigner::transform(int two_j, double lambda, Complex xi) const {
  const int d = two_j + 1;
  if (two_j > two_jmax() || coefficients[two_j].size() == 0) return CMatrix::Zero(d, d);
  const double pi = std::numbers::pi;
  const double scalar = 2 * pi * sigma * sigma * std::exp(-sigma * sigma * std::norm(xi) / 2) *
                        std::sqrt(2 * pi) * tau * std::exp(-tau * tau * lambda * lambda / 2);
  return coefficients[two_j] * (scalar / d);
}

DecayCertificate GaussianWigner::certificate(const GroupGrid& g) const {
  // |f|^2 is Gaussian with standard deviation sigma / sqrt 2 per n-axis and tau / sqrt 2 in t.
  const double s = sigma / std::sqrt(2.0);
  const double st = tau / std::sqrt(2.0);
  const double e = gaussian_tail(s, g.n1.L - std::abs(g.n1.offset)) +
                   gaussian_tail(s, g.n2.L - std::abs(g.n2.offset)) +
                   gaussian_tail(st, g.t.L - std::abs(g.t.offset));
  return {e};
}

std::vector<GaussianWigner> make_gaussian_wigner_family(std::uint64_t seed, int members,
                                                        double sigma, double tau,
                                                        int two_jmax) {
  Rng rng(seed);
  std::vector<GaussianWigner> out;
  for (int i = 0; i < members; ++i) {
    GaussianWigner f;
    f.sigma = sigma;
    f.tau = tau;
    for (int tj = 0; tj <= two_jmax; ++tj) {
      CMatrix c(tj + 1, tj + 1);
      for (int r = 0; r <= tj; ++r)
        for (int q = 0; q <= tj; ++q) c(r, q) = random_complex(rng, 1.0 / std::sqrt(2.0));
      f.coefficients.push_back(c);
    }
    out.push_back(std::move(f));
  }
  return out;
}

Complex MatrixGaussian::operator()(const GroupElement& g) const {
  const double tr = std::norm(g.a()) + std::norm(g.b()) + std::norm(g.c()) + std::norm(g.d());
  const Complex lin = u + w[0] * g.a() + w[1] * g.b() + w[2] * g.c() + w[3] * g.d();
  return std::exp(-c * (tr - 2.0)) * lin;
}

GroupFn MatrixGaussian::as_function() const {
  MatrixGaussian copy = *this;
  return [copy](const NakCoords& x) { return copy(compose_nak(x)); };
}

MatrixGaussian random_matrix_gaussian(Rng& rng, double c) {
  MatrixGaussian f;
  f.c = c;
  f.u = 1.0 + 0.25 * random_complex(rng);
  for (auto& z : f.w) z = 0.5 * random_complex(rng);
  return f;
}

GroupGrid make_group_grid(const LineGrid& n, const LineGrid& t, int k_two_jmax) {
  return {n, n, t, build_k_quadrature(k_two_jmax)};
}

FrequencyGrid make_frequency_grid(const LineGrid& lambda, const LineGrid& xi) {
  return {lambda, xi, xi};
}

}  // namespace harmonics
