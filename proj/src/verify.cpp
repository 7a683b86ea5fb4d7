#include "harmonics/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "harmonics/errors.hpp"
#include "harmonics/minkowski.hpp"
#include "harmonics/poincare.hpp"
#include "harmonics/su2.hpp"

namespace harmonics {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::vector<IdentityInfo> build_catalog() {
  using K = RowKind;
  return {
      {"iwasawa.kan_roundtrip", 1, "g = k a(t) n(z) recomposed from its factors", K::Bound, 1e-12},
      {"iwasawa.nak_roundtrip", 1, "g = n(z) a(t) k recomposed from its factors", K::Bound, 1e-12},
      {"haar.left_invariance", 2, "int f(g0 g) dg = int f(g) dg, dg = e^{-4t} dz dt dk", K::Bound, 1e-6},
      {"haar.left_invariance_exponent2", 2, "same integral with e^{-2t} is not invariant", K::Guard, 1e-2},
      {"haar.unimodular", 2, "int |f(g^-1)|^2 dg = int |f(g)|^2 dg", K::Info, 0},
      {"k.schur_orthogonality", 3, "int D^j_ab conj(D^j'_cd) dk = delta / (2j+1), j <= 3", K::Bound, 1e-12},
      {"k.inversion_roundtrip", 3, "f(k) = sum_j d_j tr[Tf(j) D^j(k)]", K::Bound, 1e-10},
      {"k.plancherel", 3, "int |f|^2 dk = sum_j d_j ||Tf(j)||_HS^2", K::Bound, 1e-10},
      {"k.inversion_at_identity", 3, "f(e) = sum_j d_j tr Tf(j)", K::Bound, 1e-10},
      {"g.factorization", 4, "TF(lift(f) * fcheck) = TFf TFf^dagger", K::Bound, 1e-6},
      {"g.plancherel", 4, "int |f|^2 dz dt dk = (2pi)^-3 sum_j d_j int ||TFf||_HS^2", K::Bound, 1e-6},
      {"g.inversion_at_identity", 4, "f(e) = (2pi)^-3 sum_j d_j int tr TFf", K::Bound, 1e-6},
      {"g.plancherel_guard", 4, "Plancherel balance without (2pi)^-3", K::Guard, 1e-2},
      {"g.plancherel_guard_factor", 4, "unnormalized spectral side / int |f|^2 = (2pi)^3", K::Bound, 1e-6},
      {"g.norm_chain", 4, "||f||^2 direct = (lift(f) * fcheck)(e, e) = spectral side", K::Bound, 1e-5},
      {"g.plancherel_haar", 4, "Plancherel balance with e^{-4t} on the group side", K::Info, 0},
      {"minkowski.det", 5, "det M(v) = t^2 - x^2 - y^2 - z^2", K::Bound, 1e-14},
      {"spinor.homomorphism", 5, "Lambda(g1 g2) = Lambda(g1) Lambda(g2)", K::Bound, 1e-12},
      {"spinor.image", 5, "Lambda(g) in SO+(3,1) (count of misses)", K::Bound, 0},
      {"spinor.kernel", 5, "Lambda(-g) = Lambda(g), Lambda(-I) = Lambda(I) = I", K::Bound, 1e-14},
      {"spinor.boost", 5, "Lambda(a(s/2)) has cosh s, sinh s in the (t, z) block", K::Bound, 1e-13},
      {"poincare.associativity", 6, "(pq)r = p(qr), (v, g)(v', g') = (v + g.v', g g')", K::Bound, 1e-11},
      {"poincare.inverse", 6, "p p^-1 = p^-1 p = (0, I)", K::Bound, 1e-11},
      {"poincare.tilde_invariance", 6, "ftilde(q^-1.v, L, q^-1 R) = ftilde(v, L q^-1, R)", K::Bound, 1e-12},
      {"poincare.convolution_equality", 6, "psi * ftilde = psi *_c ftilde on Q", K::Bound, 1e-6},
      {"poincare.norm_identity", 6, "||F||^2 = (F *_c lift(h(Fcheck)))(0, I, I)", K::Bound, 1e-5},
      {"poincare.plancherel", 6, "int |F|^2 dv dg = (2pi)^-7 sum_j d_j int ||TF||_HS^2", K::Bound, 1e-5},
      {"poincare.plancherel_guard", 6, "Plancherel balance without (2pi)^-7", K::Guard, 1e-2},
      {"poincare.plancherel_guard_factor", 6, "unnormalized spectral side / int |F|^2 = (2pi)^7", K::Bound, 1e-5},
  };
}

Rng sub_rng(std::uint64_t seed, std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag)};
  return Rng(seq);
}

using Clock = std::chrono::steady_clock;

class RowBuilder {
 public:
  explicit RowBuilder(const VerifyConfig& cfg) : timing_(cfg.timing), start_(Clock::now()) {}

  void add(const std::string& id, double residual) {
    const IdentityInfo& info = identity_info(id);
    ReportRow r;
    r.identity = info.id;
    r.reference = info.reference;
    r.residual = residual;
    r.tolerance = info.tolerance;
    r.kind = info.kind;
    r.criterion = info.criterion;
    const auto now = Clock::now();
    r.ms = timing_ ? std::chrono::duration<double, std::milli>(now - start_).count() : 0.0;
    start_ = now;
    report_.rows.push_back(r);
  }

  Report take() { return std::move(report_); }

 private:
  bool timing_;
  Clock::time_point start_;
  Report report_;
};

// n ~ N(0, 1) per component, t ~ N(0, 1/2), k uniform: entries stay O(10).
GroupElement moderate_element(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const Complex n(nd(rng), nd(rng));
  const double t = 0.5 * nd(rng);
  return compose_nak({n, t, random_k_element(rng)});
}

Vec4 random_vec4(Rng& rng, double spread) {
  std::normal_distribution<double> nd(0.0, spread);
  Vec4 v;
  for (double& x : v) x = nd(rng);
  return v;
}

std::vector<GaussianWigner> family(const VerifyConfig& cfg, int two_jmax) {
  return make_gaussian_wigner_family(cfg.family.coefficient_seed, cfg.family.members,
                                     cfg.family.sigma, cfg.family.tau, two_jmax);
}

// Quadrature grids for the Haar checks on matrix Gaussians with c = 1.
const LineGrid kHaarW{7.0, 48};
const LineGrid kHaarT{3.0, 36};
constexpr double kHaarC = 1.0;

}  // namespace

const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> catalog = build_catalog();
  return catalog;
}

const IdentityInfo& identity_info(const std::string& id) {
  for (const auto& info : identity_catalog())
    if (info.id == id) return info;
  throw std::logic_error("unknown identity " + id);
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0 ? std::abs(a - b) / scale : 0.0;
}

void validate(const VerifyConfig& cfg) {
  if (cfg.jmax_twice < 0) throw ConfigError("jmax_twice must be >= 0");
  if (cfg.jmax_twice > Caps::kMaxJmaxTwice) {
    throw CapExceeded("jmax_twice " + std::to_string(cfg.jmax_twice) + " exceeds cap " +
                      std::to_string(Caps::kMaxJmaxTwice));
  }
  if (cfg.family.members < 1) throw ConfigError("family.members must be >= 1");
  if (cfg.family.members > Caps::kMaxMembers) {
    throw CapExceeded("family.members exceeds cap " + std::to_string(Caps::kMaxMembers));
  }
  if (!(cfg.family.sigma > 0) || !(cfg.family.tau > 0)) {
    throw ConfigError("family.sigma and family.tau must be positive");
  }
  const std::pair<const char*, const LineGrid*> grids[] = {
      {"n", &cfg.grids.n},       {"t", &cfg.grids.t},     {"lambda", &cfg.grids.lambda},
      {"xi", &cfg.grids.xi},     {"eta", &cfg.grids.eta}, {"v", &cfg.grids.v}};
  for (const auto& [name, g] : grids) {
    if (g->m > Caps::kMaxGridPoints) {
      throw CapExceeded(std::string("grid ") + name + " has m = " + std::to_string(g->m) +
                        "; cap is " + std::to_string(Caps::kMaxGridPoints));
    }
  }
}

Complex left_translated_integral(const GroupFn& f, const GroupElement& g0, double two_rho,
                                 const LineGrid& w, const LineGrid& t, const KQuadrature& k,
                                 Backend backend) {
  // z = e^t w gives dz = e^{2t} dw, so the weight becomes e^{(2 - two_rho) t}.
  std::vector<Complex> per_t(t.m);
  parallel_for(backend, t.m, [&](std::int64_t it) {
    const double tt = t.node(static_cast<int>(it));
    const double et = std::exp(tt);
    Complex s = 0.0;
    for (std::size_t ik = 0; ik < k.size(); ++ik) {
      Complex sk = 0.0;
      for (int i1 = 0; i1 < w.m; ++i1)
        for (int i2 = 0; i2 < w.m; ++i2) {
          const NakCoords x{et * Complex(w.node(i1), w.node(i2)), tt, k.nodes[ik]};
          sk += f(nak_decompose(g0 * compose_nak(x)));
        }
      s += k.weights[ik] * sk;
    }
    per_t[it] = s * std::exp((2.0 - two_rho) * tt);
  });
  Complex total = 0.0;
  for (const Complex& z : per_t) total += z;
  return total * (w.h() * w.h() * t.h());
}

Report verify_iwasawa(const VerifyConfig& cfg) {
  RowBuilder rows(cfg);
  Rng rng = sub_rng(cfg.seed, 1);
  std::vector<GroupElement> gs;
  for (int i = 0; i < 1000; ++i) gs.push_back(random_group_element(rng));
  double kan = 0;
  for (const auto& g : gs) kan = std::max(kan, g.max_diff(compose_iwasawa(iwasawa_decompose(g))));
  rows.add("iwasawa.kan_roundtrip", kan);
  double nak = 0;
  for (const auto& g : gs) nak = std::max(nak, g.max_diff(compose_nak(nak_decompose(g))));
  rows.add("iwasawa.nak_roundtrip", nak);
  return rows.take();
}

Report verify_haar(const VerifyConfig& cfg) {
  RowBuilder rows(cfg);
  Rng rng = sub_rng(cfg.seed, 2);
  const MatrixGaussian mg = random_matrix_gaussian(rng, kHaarC);
  const GroupFn f = mg.as_function();
  // Moderate translations: |Re n|, |Im n| <= 1/2, |t| <= 1/4, k uniform.
  std::uniform_real_distribution<double> ud(-0.5, 0.5);
  std::vector<GroupElement> g0s;
  for (int i = 0; i < 20; ++i) {
    const Complex n(ud(rng), ud(rng));
    const double t = 0.5 * ud(rng);
    g0s.push_back(compose_nak({n, t, random_k_element(rng)}));
  }
  // The right K-dependence has spin <= 1/2, so the two_jmax = 1 rule is exact in k.
  const KQuadrature k = build_k_quadrature(1);
  for (const double two_rho : {4.0, 2.0}) {
    const Complex base = left_translated_integral(f, GroupElement::identity(), two_rho, kHaarW, kHaarT, k);
    double worst = 0;
    for (const auto& g0 : g0s) {
      const Complex moved = left_translated_integral(f, g0, two_rho, kHaarW, kHaarT, k);
      worst = std::max(worst, std::abs(moved - base) / std::abs(base));
    }
    rows.add(two_rho == 4.0 ? "haar.left_invariance" : "haar.left_invariance_exponent2", worst);
  }
  const GroupFn sq = [f](const NakCoords& x) { return Complex(std::norm(f(x))); };
  const GroupFn sq_check = [f](const NakCoords& x) {
    return Complex(std::norm(f(nak_decompose(compose_nak(x).inverse()))));
  };
  const double a = left_translated_integral(sq, GroupElement::identity(), 4.0, kHaarW, kHaarT, k).real();
  const double b = left_translated_integral(sq_check, GroupElement::identity(), 4.0, kHaarW, kHaarT, k).real();
  rows.add("haar.unimodular", relative_gap(a, b));
  return rows.take();
}

Report verify_peter_weyl(const VerifyConfig& cfg) {
  RowBuilder rows(cfg);
  {
    constexpr int kSchurTwoJ = 6;
    const KQuadrature q = build_k_quadrature(kSchurTwoJ);
    std::vector<std::vector<CMatrix>> d(kSchurTwoJ + 1);
    for (int tj = 0; tj <= kSchurTwoJ; ++tj)
      for (const auto& node : q.nodes) d[tj].push_back(wigner_d(tj, node));
    double worst = 0;
    for (int j1 = 0; j1 <= kSchurTwoJ; ++j1)
      for (int j2 = 0; j2 <= kSchurTwoJ; ++j2)
        for (int a = 0; a <= j1; ++a)
          for (int b = 0; b <= j1; ++b)
            for (int c = 0; c <= j2; ++c)
              for (int e = 0; e <= j2; ++e) {
                Complex s = 0.0;
                for (std::size_t i = 0; i < q.size(); ++i)
                  s += q.weights[i] * d[j1][i](a, b) * std::conj(d[j2][i](c, e));
                const double expect = (j1 == j2 && a == c && b == e) ? 1.0 / (j1 + 1) : 0.0;
                worst = std::max(worst, std::abs(s - expect));
              }
    rows.add("k.schur_orthogonality", worst);
  }

  Rng rng = sub_rng(cfg.seed, 3);
  const int band = cfg.jmax_twice;
  const KQuadrature q = build_k_quadrature(band);
  double roundtrip = 0, plancherel = 0, at_identity = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BandlimitedK f{KSpectrum::zeros(band)};
    for (auto& blk : f.coefficients.blocks)
      for (int r = 0; r < blk.rows(); ++r)
        for (int c = 0; c < blk.cols(); ++c) blk(r, c) = random_complex(rng, 1.0 / std::sqrt(2.0));
    const auto samples = sample_on(q, f);
    const KSpectrum spec = peter_weyl_forward(q, samples, band);
    double scale = 1.0, err = 0;
    for (int i = 0; i < 20; ++i) {
      const KElement k = random_k_element(rng);
      const Complex exact = f(k);
      scale = std::max(scale, std::abs(exact));
      err = std::max(err, std::abs(peter_weyl_inverse(spec, k) - exact));
    }
    roundtrip = std::max(roundtrip, err / scale);
    plancherel = std::max(plancherel, plancherel_k_residual(q, samples, band));
    Complex trace_sum = 0.0;
    for (int tj = 0; tj <= band; ++tj) trace_sum += static_cast<double>(tj + 1) * spec.blocks[tj].trace();
    const Complex fe = f(KElement::identity());
    at_identity = std::max(at_identity, std::abs(trace_sum - fe) / std::max(1.0, std::abs(fe)));
  }
  rows.add("k.inversion_roundtrip", roundtrip);
  rows.add("k.plancherel", plancherel);
  rows.add("k.inversion_at_identity", at_identity);
  return rows.take();
}

namespace {

// Lattice-matched grids for the factorization identity: the inner (psi) grid,
// the outer grid for the convolution and the grid for f share the step h, and
// the outer nodes sit on h Z while the others sit on h/2 + h Z. The discrete
// convolution then transforms exactly into the product of discrete transforms,
// leaving only the truncation of the Gaussian tails.
constexpr double kFactorStep = 2.5;
constexpr int kFactorInner = 8;
constexpr int kFactorOuter = 8;
constexpr int kFactorSelf = 16;
// Spin band of the factorization check (j <= 1/2).
constexpr int kFactorTwoJ = 1;

GaussianWigner truncate_band(const GaussianWigner& f, int two_jmax) {
  GaussianWigner g = f;
  if (g.two_jmax() > two_jmax) g.coefficients.resize(two_jmax + 1);
  return g;
}

}  // namespace

namespace {

void sl2c_factorization(const VerifyConfig& cfg, RowBuilder& rows) {
  const auto fam = family(cfg, kFactorTwoJ);
  {
    const double h = kFactorStep;
    const LineGrid inner(h * kFactorInner / 2, kFactorInner);
    const LineGrid outer(h * kFactorOuter / 2, kFactorOuter, h / 2);
    const LineGrid self(h * kFactorSelf / 2, kFactorSelf);
    // The discrete transforms have period 2 pi / h; stay inside half a period.
    const double w = 0.5 * std::numbers::pi / h;
    const FrequencyGrid freq = make_frequency_grid(LineGrid(w, 8), LineGrid(w, 8));
    const GroupGrid self_grid = make_group_grid(self, self, kFactorTwoJ);
    const GroupGrid inner_grid = make_group_grid(inner, inner, kFactorTwoJ);
    const GroupGrid outer_grid = make_group_grid(outer, outer, kFactorTwoJ);
    double worst = 0;
    for (const auto& member : fam) {
      const GaussianWigner f = truncate_band(member, kFactorTwoJ);
      const GroupFn fn = f.as_function();
      const SpectralTable tf = sl2c_fourier(sample_group_function(self_grid, fn), freq, kFactorTwoJ);
      const SampledGroupFunction psi = fcheck(Reading::Product, sample_group_function(inner_grid, fn));
      const SampledGroupFunction h_samples = lifted_convolution(Reading::Product, fn, psi, outer_grid);
      const SpectralTable th = sl2c_fourier(h_samples, freq, kFactorTwoJ);
      worst = std::max(worst, max_table_difference(th, gram_table(tf)));
    }
    rows.add("g.factorization", worst);
  }
}

void sl2c_plancherel(const VerifyConfig& cfg, RowBuilder& rows) {
  const auto fam = family(cfg, cfg.jmax_twice);
  const GroupGrid grid = make_group_grid(cfg.grids.n, cfg.grids.t, cfg.jmax_twice);
  const FrequencyGrid freq = make_frequency_grid(cfg.grids.lambda, cfg.grids.xi);
  double plancherel = 0, inversion = 0, guard = 1.0, guard_factor = 0, chain = 0, haar = 0;
  for (const auto& f : fam) {
    const SampledGroupFunction s = sample_group_function(grid, f.as_function(), f.certificate(grid));
    const SpectralTable table = sl2c_fourier(s, freq, cfg.jmax_twice);
    const double direct = group_norm_squared(s, Reading::Product);
    const double spectral = spectral_side(table, 3);
    const double unnormalized = spectral_side(table, 0);
    plancherel = std::max(plancherel, std::abs(direct - spectral) / direct);
    const Complex fe = f.value_at_identity();
    inversion = std::max(inversion, std::abs(inversion_at_identity(table) - fe) / std::abs(fe));
    guard = std::min(guard, relative_gap(direct, unnormalized));
    guard_factor = std::max(guard_factor, std::abs(unnormalized / (direct * std::pow(kTwoPi, 3)) - 1.0));
    const SampledGroupFunction check = fcheck(Reading::Product, s);
    const double via_conv = lifted_convolution_at_identity(Reading::Product, s.closed_form, check).real();
    chain = std::max({chain, relative_gap(direct, via_conv), relative_gap(direct, spectral),
                      relative_gap(via_conv, spectral)});
    haar = std::max(haar, relative_gap(group_norm_squared(s, Reading::Haar), spectral));
  }
  rows.add("g.plancherel", plancherel);
  rows.add("g.inversion_at_identity", inversion);
  rows.add("g.plancherel_guard", guard);
  rows.add("g.plancherel_guard_factor", guard_factor);
  rows.add("g.norm_chain", chain);
  rows.add("g.plancherel_haar", haar);
}

}  // namespace

Report verify_sl2c(const VerifyConfig& cfg) {
  RowBuilder rows(cfg);
  sl2c_factorization(cfg, rows);
  sl2c_plancherel(cfg, rows);
  return rows.take();
}

Report verify_minkowski(const VerifyConfig& cfg) {
  RowBuilder rows(cfg);
  Rng rng = sub_rng(cfg.seed, 5);
  {
    std::uniform_int_distribution<int> ui(-64, 64);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      const Vec4 v{ui(rng) / 8.0, ui(rng) / 8.0, ui(rng) / 8.0, ui(rng) / 8.0};
      const Complex det = vec_to_hermitian(v).determinant();
      worst = std::max(worst, std::abs(det - minkowski_square(v)));
    }
    rows.add("minkowski.det", worst);
  }
  std::vector<GroupElement> g1s, g2s;
  for (int i = 0; i < 1000; ++i) {
    g1s.push_back(moderate_element(rng));
    g2s.push_back(moderate_element(rng));
  }
  {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      const Lorentz4 prod = covering_map(g1s[i]) * covering_map(g2s[i]);
      const Lorentz4 direct = covering_map(g1s[i] * g2s[i]);
      // Entries grow like |g|^4; compare relative to the largest entry.
      worst = std::max(worst, (prod - direct).cwiseAbs().maxCoeff() / std::max(1.0, prod.cwiseAbs().maxCoeff()));
    }
    rows.add("spinor.homomorphism", worst);
  }
  {
    int misses = 0;
    for (int i = 0; i < 1000; ++i) {
      if (classify_lorentz(covering_map(g1s[i])) != LorentzClass::SO31Plus) ++misses;
      if (classify_lorentz(covering_map(g1s[i] * g2s[i])) != LorentzClass::SO31Plus) ++misses;
    }
    rows.add("spinor.image", misses);
  }
  {
    const Lorentz4 id = Lorentz4::Identity();
    double worst = std::max((covering_map(GroupElement::identity()) - id).cwiseAbs().maxCoeff(),
                            (covering_map(-GroupElement::identity()) - id).cwiseAbs().maxCoeff());
    for (int i = 0; i < 100; ++i)
      worst = std::max(worst, (covering_map(-g1s[i]) - covering_map(g1s[i])).cwiseAbs().maxCoeff());
    rows.add("spinor.kernel", worst);
  }
  {
    double worst = 0;
    for (const double s : {-2.0, -0.5, 0.1, 0.75, 1.5, 2.0}) {
      Lorentz4 expect = Lorentz4::Identity();
      expect(0, 0) = expect(3, 3) = std::cosh(s);
      expect(0, 3) = expect(3, 0) = std::sinh(s);
      worst = std::max(worst, (covering_map(GroupElement::a_of(s / 2)) - expect).cwiseAbs().maxCoeff());
    }
    rows.add("spinor.boost", worst);
  }
  return rows.take();
}

namespace {

double scale_of(const PoincareElement& p) {
  double m = std::max(1.0, p.g.max_abs());
  for (double x : p.v) m = std::max(m, std::abs(x));
  return m;
}

// F(v, g) = exp(-|v|^2 / (2 s^2)) m(g) with a matrix Gaussian m.
PFn gaussian_times_matrix(double s, const MatrixGaussian& m) {
  return [s, m](const Vec4& v, const GroupElement& g) {
    double r2 = 0;
    for (double x : v) r2 += x * x;
    return std::exp(-r2 / (2 * s * s)) * m(g);
  };
}

QElement moderate_q(Rng& rng) {
  return {random_vec4(rng, 1.0), moderate_element(rng), moderate_element(rng)};
}

// Spin band of the Poincare test functions (j <= 1).
constexpr int kPoincareTwoJ = 2;
constexpr double kPoincareSigmaV = 1.0;

// Spacetime Plancherel on the separable family: Gaussian v-part times a family member.
void poincare_plancherel(const VerifyConfig& cfg, RowBuilder& rows) {
  const SampledPFunction f = poincare_test_function(cfg);
  const std::array<LineGrid, 4> eta{cfg.grids.eta, cfg.grids.eta, cfg.grids.eta, cfg.grids.eta};
  const FrequencyGrid freq = make_frequency_grid(cfg.grids.lambda, cfg.grids.xi);
  const PlancherelResult p = plancherel_p(f, eta, freq, kPoincareTwoJ, Reading::Product, 7);
  rows.add("poincare.plancherel", p.residual);
  const double unnormalized = p.rhs * std::pow(kTwoPi, 7);
  rows.add("poincare.plancherel_guard", relative_gap(p.lhs, unnormalized));
  rows.add("poincare.plancherel_guard_factor", std::abs(unnormalized / (p.lhs * std::pow(kTwoPi, 7)) - 1.0));
}

void poincare_convolutions(const VerifyConfig& cfg, RowBuilder& rows) {
  Rng rng = sub_rng(cfg.seed, 7);
  {
    auto quad = std::make_shared<const PQuadrature>(
        gauss_hermite_p_quadrature(2, 1.0, 3, 0.7, 3, 0.5, build_k_quadrature(1)));
    double worst = 0;
    for (int pair = 0; pair < 10; ++pair) {
      const PFn psi = gaussian_times_matrix(1.0, random_matrix_gaussian(rng, 0.5));
      const QFn ft = tilde_lift(gaussian_times_matrix(1.5, random_matrix_gaussian(rng, 0.5)));
      const QFn semi = convolve_p(psi, ft, quad);
      const QFn central = convolve_c(psi, ft, quad);
      double gap = 0, scale = 0;
      for (int i = 0; i < 50; ++i) {
        const QElement x = moderate_q(rng);
        const Complex a = semi(x);
        gap = std::max(gap, std::abs(a - central(x)));
        scale = std::max(scale, std::abs(a));
      }
      worst = std::max(worst, scale > 0 ? gap / scale : gap);
    }
    rows.add("poincare.convolution_equality", worst);
  }
  const GaussianWigner g_part = truncate_band(family(cfg, kPoincareTwoJ).front(), kPoincareTwoJ);
  {
    // Gauss-Hermite in v is exact for the Gaussian |F|^2; the group side uses a
    // midpoint grid in (z, t) centred where e^{-t^2 / tau^2} e^{-4t} peaks.
    const double tau = g_part.tau;
    const LineGrid n_grid(6.0 * g_part.sigma, 16);
    const LineGrid t_grid(6.0 * tau, 16, -2.0 * tau * tau);
    const GroupGrid grid = make_group_grid(n_grid, t_grid, kPoincareTwoJ);
    std::vector<Vec4> vs;
    std::vector<double> ws;
    gauss_hermite_r4(2, kPoincareSigmaV / std::sqrt(2.0), vs, ws);
    auto quad = std::make_shared<const PQuadrature>(mixed_p_quadrature(vs, ws, grid));
    const double sv = kPoincareSigmaV;
    const PFn big_f = [g_part, sv](const Vec4& v, const GroupElement& g) {
      double r2 = 0;
      for (double x : v) r2 += x * x;
      return std::exp(-r2 / (2 * sv * sv)) * g_part(nak_decompose(g));
    };
    const PKFn lifted = upsilon_lift_p(h_map(check_p(big_f)));
    const Complex value =
        convolve_c_lifted(big_f, lifted, quad)({0, 0, 0, 0}, GroupElement::identity(), KElement::identity());
    // int exp(-|v|^2 / s^2) dv over R^4 = pi^2 s^4.
    const double exact = std::pow(std::numbers::pi, 2) * std::pow(sv, 4) * g_part.norm_squared(Reading::Haar);
    rows.add("poincare.norm_identity", std::abs(value - exact) / exact);
  }
}

}  // namespace

Report verify_poincare(const VerifyConfig& cfg) {
  RowBuilder rows(cfg);
  Rng rng = sub_rng(cfg.seed, 6);
  {
    double assoc = 0, inv = 0;
    const PoincareElement e{{0, 0, 0, 0}, GroupElement::identity()};
    for (int i = 0; i < 1000; ++i) {
      const PoincareElement p{random_vec4(rng, 1.0), moderate_element(rng)};
      const PoincareElement q{random_vec4(rng, 1.0), moderate_element(rng)};
      const PoincareElement r{random_vec4(rng, 1.0), moderate_element(rng)};
      const PoincareElement left = poincare_mul(poincare_mul(p, q), r);
      const PoincareElement right = poincare_mul(p, poincare_mul(q, r));
      assoc = std::max(assoc, max_diff(left, right) / scale_of(left));
      const PoincareElement pi = poincare_inv(p);
      inv = std::max({inv, max_diff(poincare_mul(p, pi), e) / scale_of(p),
                      max_diff(poincare_mul(pi, p), e) / scale_of(p)});
    }
    rows.add("poincare.associativity", assoc);
    rows.add("poincare.inverse", inv);
  }
  {
    const QFn ft = tilde_lift(gaussian_times_matrix(2.0, random_matrix_gaussian(rng, 0.25)));
    std::vector<QElement> points;
    std::vector<GroupElement> qs;
    for (int i = 0; i < 500; ++i) {
      points.push_back(moderate_q(rng));
      qs.push_back(moderate_element(rng));
    }
    rows.add("poincare.tilde_invariance", tilde_invariance_defect(ft, points, qs));
  }
  poincare_convolutions(cfg, rows);
  poincare_plancherel(cfg, rows);
  return rows.take();
}

Report verify_all(const VerifyConfig& cfg) {
  validate(cfg);
  Report r = verify_iwasawa(cfg);
  r.append(verify_haar(cfg));
  r.append(verify_peter_weyl(cfg));
  r.append(verify_sl2c(cfg));
  r.append(verify_minkowski(cfg));
  r.append(verify_poincare(cfg));
  return r;
}

SampledGroupFunction sl2c_test_function(const VerifyConfig& cfg, int member) {
  const auto fam = family(cfg, cfg.jmax_twice);
  if (member < 0 || member >= static_cast<int>(fam.size())) throw ConfigError("family member out of range");
  const GroupGrid grid = make_group_grid(cfg.grids.n, cfg.grids.t, cfg.jmax_twice);
  return sample_group_function(grid, fam[member].as_function(), fam[member].certificate(grid));
}

SampledPFunction poincare_test_function(const VerifyConfig& cfg) {
  const GaussianWigner g_part = truncate_band(family(cfg, kPoincareTwoJ).front(), kPoincareTwoJ);
  SampledPFunction f;
  f.separable = true;
  for (int a = 0; a < 4; ++a) {
    f.v_separable.grids[a] = cfg.grids.v;
    for (double x : cfg.grids.v.nodes())
      f.v_separable.factors[a].push_back(std::exp(-x * x / (2 * kPoincareSigmaV * kPoincareSigmaV)));
  }
  const GroupGrid grid = make_group_grid(cfg.grids.n, cfg.grids.t, kPoincareTwoJ);
  f.g_part = sample_group_function(grid, g_part.as_function(), g_part.certificate(grid));
  const double sv = kPoincareSigmaV;
  f.closed_form = [g_part, sv](const Vec4& v, const GroupElement& g) {
    double r2 = 0;
    for (double x : v) r2 += x * x;
    return std::exp(-r2 / (2 * sv * sv)) * g_part(nak_decompose(g));
  };
  return f;
}

int poincare_test_band() { return kPoincareTwoJ; }

Report convolution_report(const VerifyConfig& cfg, const std::string& target) {
  validate(cfg);
  RowBuilder rows(cfg);
  if (target == "g") {
    sl2c_factorization(cfg, rows);
  } else if (target == "p") {
    poincare_convolutions(cfg, rows);
  } else {
    throw ConfigError("convolve target must be g or p; got '" + target + "'");
  }
  return rows.take();
}

Report plancherel_report(const VerifyConfig& cfg, const std::string& target) {
  validate(cfg);
  if (target == "k") {
    Report full = verify_peter_weyl(cfg);
    Report out;
    for (const auto& row : full.rows)
      if (row.identity == "k.plancherel") out.rows.push_back(row);
    return out;
  }
  if (target == "g" || target == "p") {
    RowBuilder rows(cfg);
    if (target == "g") {
      sl2c_plancherel(cfg, rows);
    } else {
      poincare_plancherel(cfg, rows);
    }
    return rows.take();
  }
  throw ConfigError("plancherel target must be k, g or p; got '" + target + "'");
}

}  // namespace harmonics
