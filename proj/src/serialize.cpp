#include "harmonics/serialize.hpp"

#include <sstream>

#include "harmonics/errors.hpp"
#include "harmonics/report.hpp"

namespace harmonics {

namespace {
// Adding +0.0 maps -0.0 to 0.0 so round values print without a sign.
double unsigned_zero(double x) { return x + 0.0; }
}  // namespace

Json complex_to_json(Complex z) { return Json::array({unsigned_zero(z.real()), unsigned_zero(z.imag())}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError("expected a complex number as [re, im], got " + j.dump());
}

Json to_json(const GroupElement& g) {
  Json o;
  o["a"] = complex_to_json(g.a());
  o["b"] = complex_to_json(g.b());
  o["c"] = complex_to_json(g.c());
  o["d"] = complex_to_json(g.d());
  return o;
}

GroupElement group_element_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("group element must be a JSON object");
  for (const char* key : {"a", "b", "c", "d"})
    if (!j.contains(key)) throw ConfigError(std::string("group element missing key ") + key);
  return GroupElement::make(complex_from_json(j["a"]), complex_from_json(j["b"]),
                            complex_from_json(j["c"]), complex_from_json(j["d"]));
}

Json to_json(const IwasawaFactors& f) {
  const EulerAngles e = f.k.euler();
  Json o;
  o["euler"] = Json::array({unsigned_zero(e.phi), unsigned_zero(e.theta), unsigned_zero(e.psi)});
  o["t"] = unsigned_zero(f.t);
  o["n"] = complex_to_json(f.n);
  return o;
}

IwasawaFactors iwasawa_from_json(const nlohmann::json& j) {
  try {
    IwasawaFactors f;
    const auto& e = j.at("euler");
    f.k = KElement::from_euler(e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>());
    f.t = j.at("t").get<double>();
    f.n = complex_from_json(j.at("n"));
    return f;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("bad Iwasawa factors: ") + ex.what());
  }
}

Json matrix_block_to_json(int two_j, const CMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ri = Json::array();
    for (int c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  Json o;
  o["two_j"] = two_j;
  o["re"] = re;
  o["im"] = im;
  return o;
}

Json to_json(const KSpectrum& s) {
  Json o;
  o["jmax_twice"] = s.two_jmax;
  Json blocks = Json::array();
  for (int tj = 0; tj <= s.two_jmax; ++tj) blocks.push_back(matrix_block_to_json(tj, s.blocks[tj]));
  o["blocks"] = blocks;
  return o;
}

KSpectrum kspectrum_from_json(const nlohmann::json& j) {
  try {
    KSpectrum s = KSpectrum::zeros(j.at("jmax_twice").get<int>());
    for (const auto& b : j.at("blocks")) {
      const int tj = b.at("two_j").get<int>();
      if (tj < 0 || tj > s.two_jmax) throw ConfigError("block index outside jmax_twice");
      const int d = tj + 1;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          s.blocks[tj](r, c) = {b.at("re").at(r).at(c).get<double>(), b.at("im").at(r).at(c).get<double>()};
    }
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("bad spectrum: ") + ex.what());
  }
}

Json to_json(const Vec4& v) { return Json::array({v[0], v[1], v[2], v[3]}); }

Json to_json(const Lorentz4& l) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) rows.push_back(Json::array({l(r, 0), l(r, 1), l(r, 2), l(r, 3)}));
  return rows;
}

namespace {

Json grid_json(const LineGrid& g) {
  Json o;
  o["L"] = g.L;
  o["m"] = g.m;
  if (g.offset != 0.0) o["offset"] = g.offset;
  return o;
}

}  // namespace

Json to_json(const SpectralTable& s) {
  Json o;
  o["jmax_twice"] = s.two_jmax;
  o["lambda"] = grid_json(s.freq.lambda);
  o["xi1"] = grid_json(s.freq.xi1);
  o["xi2"] = grid_json(s.freq.xi2);
  Json nodes = Json::array();
  for (int il = 0; il < s.freq.lambda.m; ++il)
    for (int k1 = 0; k1 < s.freq.xi1.m; ++k1)
      for (int k2 = 0; k2 < s.freq.xi2.m; ++k2) {
        const std::size_t f = s.freq.index(il, k1, k2);
        Json node;
        node["lambda"] = s.freq.lambda.node(il);
        node["xi"] = Json::array({s.freq.xi1.node(k1), s.freq.xi2.node(k2)});
        Json blocks = Json::array();
        for (int tj = 0; tj <= s.two_jmax; ++tj) blocks.push_back(matrix_block_to_json(tj, s.matrix(tj, f)));
        node["blocks"] = blocks;
        nodes.push_back(node);
      }
  o["nodes"] = nodes;
  return o;
}

std::string spectral_table_csv(const SpectralTable& s) {
  std::ostringstream os;
  os << "two_j,lambda,xi1,xi2,hs_norm\n";
  for (int tj = 0; tj <= s.two_jmax; ++tj)
    for (int il = 0; il < s.freq.lambda.m; ++il)
      for (int k1 = 0; k1 < s.freq.xi1.m; ++k1)
        for (int k2 = 0; k2 < s.freq.xi2.m; ++k2) {
          const double hs = s.matrix(tj, s.freq.index(il, k1, k2)).norm();
          os << tj << ',' << format_number(s.freq.lambda.node(il)) << ','
             << format_number(s.freq.xi1.node(k1)) << ',' << format_number(s.freq.xi2.node(k2))
             << ',' << format_number(hs) << "\n";
        }
  return os.str();
}

namespace {

std::size_t p_rows(const PSpectralTable& s) {
  return s.eta_size() * s.g_transform.freq.size() * (s.g_transform.two_jmax + 1);
}

}  // namespace

std::string p_spectral_table_csv(const PSpectralTable& s, std::size_t max_rows) {
  if (p_rows(s) > max_rows) {
    throw CapExceeded("table has " + std::to_string(p_rows(s)) + " rows; cap is " +
                      std::to_string(max_rows));
  }
  const FrequencyGrid& fr = s.g_transform.freq;
  std::ostringstream os;
  os << "two_j,eta1,eta2,eta3,eta4,lambda,xi1,xi2,hs_norm\n";
  std::vector<double> g_hs(fr.size());
  for (int tj = 0; tj <= s.g_transform.two_jmax; ++tj) {
    for (std::size_t f = 0; f < fr.size(); ++f) g_hs[f] = s.g_transform.matrix(tj, f).norm();
    std::size_t e = 0;
    for (int a = 0; a < s.eta[0].m; ++a)
      for (int b = 0; b < s.eta[1].m; ++b)
        for (int c = 0; c < s.eta[2].m; ++c)
          for (int d = 0; d < s.eta[3].m; ++d, ++e) {
            const std::string eta_text = format_number(s.eta[0].node(a)) + ',' +
                                         format_number(s.eta[1].node(b)) + ',' +
                                         format_number(s.eta[2].node(c)) + ',' +
                                         format_number(s.eta[3].node(d));
            const double vabs = std::abs(s.v_transform[e]);
            for (int il = 0; il < fr.lambda.m; ++il)
              for (int k1 = 0; k1 < fr.xi1.m; ++k1)
                for (int k2 = 0; k2 < fr.xi2.m; ++k2) {
                  os << tj << ',' << eta_text << ',' << format_number(fr.lambda.node(il)) << ','
                     << format_number(fr.xi1.node(k1)) << ',' << format_number(fr.xi2.node(k2))
                     << ',' << format_number(vabs * g_hs[fr.index(il, k1, k2)]) << "\n";
                }
          }
  }
  return os.str();
}

Json to_json(const PSpectralTable& s, std::size_t max_rows) {
  if (p_rows(s) > max_rows) {
    throw CapExceeded("table has " + std::to_string(p_rows(s)) + " entries; cap is " +
                      std::to_string(max_rows));
  }
  Json o;
  Json eta = Json::array();
  for (const auto& g : s.eta) eta.push_back(grid_json(g));
  o["eta"] = eta;
  Json vt = Json::array();
  for (const Complex& z : s.v_transform) vt.push_back(complex_to_json(z));
  o["eta_factor"] = vt;
  o["group_factor"] = to_json(s.g_transform);
  return o;
}

}  // namespace harmonics
