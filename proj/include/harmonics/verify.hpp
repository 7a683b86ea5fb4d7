#pragma once

// The identity suite behind `harmonics verify-all`: each check produces report
// rows with a residual and a pinned tolerance.

#include <cstdint>
#include <string>
#include <vector>

#include "harmonics/abelian.hpp"
#include "harmonics/family.hpp"
#include "harmonics/poincare.hpp"
#include "harmonics/report.hpp"
#include "harmonics/slc.hpp"

namespace harmonics {

struct FamilyParams {
  double sigma = 1.0;
  double tau = 1.0;
  std::uint64_t coefficient_seed = 11;
  int members = 3;
};

struct GridParams {
  LineGrid n{6.0, 24};
  LineGrid t{6.0, 24};
  LineGrid lambda{6.5, 18};
  LineGrid xi{6.5, 18};
  LineGrid eta{6.5, 18};
  LineGrid v{6.0, 24};
};

struct VerifyConfig {
  std::uint64_t seed = 20240601;
  /// Spin band of the SL(2,C) and Poincare test families (twice the largest j).
  int jmax_twice = 4;
  FamilyParams family;
  GridParams grids;
  /// Records per-row wall time; off by default so reports are byte-stable.
  bool timing = false;
};

/// Limits applied to configs before any work starts; CapExceeded past them.
struct Caps {
  static constexpr int kMaxJmaxTwice = 8;
  static constexpr int kMaxGridPoints = 64;
  static constexpr int kMaxMembers = 16;
};

/// Throws CapExceeded or ConfigError.
void validate(const VerifyConfig& cfg);

struct IdentityInfo {
  std::string id;
  int criterion = 0;
  std::string reference;
  RowKind kind = RowKind::Bound;
  double tolerance = 0;
};

/// Every row verify-all can emit, in emission order.
const std::vector<IdentityInfo>& identity_catalog();
const IdentityInfo& identity_info(const std::string& id);

/// Relative spread |a - b| / max(|a|, |b|); 0 when both vanish.
double relative_gap(double a, double b);

/// int f(g0 g) e^{-two_rho t} dg in n a(t) k coordinates. The n-plane is sampled as
/// n = e^t w on `w` x `w`, which keeps the Gaussian width fixed across t.
Complex left_translated_integral(const GroupFn& f, const GroupElement& g0, double two_rho,
                                 const LineGrid& w, const LineGrid& t, const KQuadrature& k,
                                 Backend backend = default_backend());

Report verify_iwasawa(const VerifyConfig& cfg);
Report verify_haar(const VerifyConfig& cfg);
Report verify_peter_weyl(const VerifyConfig& cfg);
Report verify_sl2c(const VerifyConfig& cfg);
Report verify_minkowski(const VerifyConfig& cfg);
Report verify_poincare(const VerifyConfig& cfg);

/// Every check in catalog order.
Report verify_all(const VerifyConfig& cfg);

/// Family member `member` sampled on the configured (n, t) grid with band jmax_twice.
SampledGroupFunction sl2c_test_function(const VerifyConfig& cfg, int member = 0);
/// Gaussian in v times the first family member cut to the Poincare band.
SampledPFunction poincare_test_function(const VerifyConfig& cfg);
/// Spin band (twice j) of poincare_test_function.
int poincare_test_band();

/// Convolution identities alone: `g` runs the factorization check, `p` the
/// convolution equality and the norm identity.
Report convolution_report(const VerifyConfig& cfg, const std::string& target);

/// Single-target Plancherel runs used by `harmonics plancherel`.
Report plancherel_report(const VerifyConfig& cfg, const std::string& target);

}  // namespace harmonics
