#pragma once

// JSON and CSV encodings of the library's value types.

#include <json.hpp>
#include <string>

#include "harmonics/lie_core.hpp"
#include "harmonics/minkowski.hpp"
#include "harmonics/poincare.hpp"
#include "harmonics/slc.hpp"
#include "harmonics/su2.hpp"

namespace harmonics {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
/// Accepts [re, im] or a bare real number.
Complex complex_from_json(const nlohmann::json& j);

/// {"a":[re,im],"b":[re,im],"c":[re,im],"d":[re,im]}
Json to_json(const GroupElement& g);
/// Throws ConfigError on bad shape, DeterminantError on bad determinant.
GroupElement group_element_from_json(const nlohmann::json& j);

/// {"euler":[phi,theta,psi],"t":t,"n":[re,im]}
Json to_json(const IwasawaFactors& f);
IwasawaFactors iwasawa_from_json(const nlohmann::json& j);

/// {"two_j": int, "re": [[..]], "im": [[..]]}
Json matrix_block_to_json(int two_j, const CMatrix& m);
/// {"jmax_twice": int, "blocks": [...]}
Json to_json(const KSpectrum& s);
KSpectrum kspectrum_from_json(const nlohmann::json& j);

/// [t, x, y, z]
Json to_json(const Vec4& v);
/// Row-major 4x4.
Json to_json(const Lorentz4& l);

/// Full SpectralTable dump: grids plus one block list per frequency node.
Json to_json(const SpectralTable& s);
/// Per-frequency Hilbert-Schmidt norms: two_j,lambda,xi1,xi2,hs_norm
std::string spectral_table_csv(const SpectralTable& s);

/// two_j,eta1,eta2,eta3,eta4,lambda,xi1,xi2,hs_norm
std::string p_spectral_table_csv(const PSpectralTable& s, std::size_t max_rows);
Json to_json(const PSpectralTable& s, std::size_t max_rows);

}  // namespace harmonics
