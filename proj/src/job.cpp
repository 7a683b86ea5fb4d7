#include "harmonics/job.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "harmonics/errors.hpp"
#include "harmonics/family.hpp"
#include "harmonics/serialize.hpp"

namespace harmonics {

namespace {

using nlohmann::json;

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get_as(const json& v, const std::string& name) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for " + name + ": " + v.dump());
  }
}

LineGrid grid_from_json(const json& j, const std::string& name) {
  expect_keys(j, "grids." + name, {"L", "m", "offset"});
  if (!j.contains("L") || !j.contains("m")) throw ConfigError("grids." + name + " needs L and m");
  const double offset = j.contains("offset") ? get_as<double>(j["offset"], name + ".offset") : 0.0;
  try {
    return LineGrid(get_as<double>(j["L"], name + ".L"), get_as<int>(j["m"], name + ".m"), offset);
  } catch (const GridMismatch& e) {
    throw ConfigError("grids." + name + ": " + e.what());
  }
}

EulerAngles euler_from_json(const json& j) {
  if (j.is_string()) return parse_euler(j.get<std::string>());
  if (!j.is_array() || j.size() != 3) throw ConfigError("euler must be [phi, theta, psi]");
  return {get_as<double>(j[0], "euler"), get_as<double>(j[1], "euler"), get_as<double>(j[2], "euler")};
}

ReportFormat format_from_string(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw ConfigError("format must be csv or json; got '" + s + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_document(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + " is not valid JSON: " + e.what());
  }
}

json input_document(const JobConfig& cfg) {
  if (cfg.input_data) return *cfg.input_data;
  if (!cfg.input_path.empty()) return parse_document(read_file(cfg.input_path), cfg.input_path);
  throw ConfigError(cfg.command + " needs --input <file> or --data <json>");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int report_status(const Report& r) { return r.all_pass() ? kExitOk : kExitCheckFailed; }

JobResult emit(const JobConfig& cfg, const Report& r) {
  emit_report(r, cfg.out_path, cfg.format);
  return {report_status(r)};
}

JobResult run_decompose(const JobConfig& cfg) {
  const GroupElement g = group_element_from_json(input_document(cfg));
  write_text(cfg.out_path, dump(to_json(iwasawa_decompose(g))));
  return {};
}

JobResult run_wigner(const JobConfig& cfg) {
  if (!cfg.euler) throw ConfigError("wigner needs --euler phi,theta,psi");
  if (cfg.two_j < 0) throw ConfigError("two_j must be >= 0");
  if (cfg.two_j > kMaxTwoJ) throw CapExceeded("two_j exceeds cap " + std::to_string(kMaxTwoJ));
  const KElement k = KElement::from_euler(*cfg.euler);
  write_text(cfg.out_path, dump(matrix_block_to_json(cfg.two_j, wigner_d(cfg.two_j, k))));
  return {};
}

// Forward transform of a bandlimited function on the exact quadrature. The
// function comes from a KSpectrum input, or from seeded Gaussian coefficients.
JobResult run_transform_k(const JobConfig& cfg) {
  BandlimitedK f;
  if (cfg.input_data || !cfg.input_path.empty()) {
    f.coefficients = kspectrum_from_json(input_document(cfg));
  } else {
    validate(cfg.verify);
    f.coefficients = KSpectrum::zeros(cfg.verify.jmax_twice);
    Rng rng(cfg.verify.seed);
    for (auto& blk : f.coefficients.blocks)
      for (int r = 0; r < blk.rows(); ++r)
        for (int c = 0; c < blk.cols(); ++c) blk(r, c) = random_complex(rng, 1.0 / std::sqrt(2.0));
  }
  const int band = f.coefficients.two_jmax;
  if (band > Caps::kMaxJmaxTwice) throw CapExceeded("jmax_twice exceeds cap " + std::to_string(Caps::kMaxJmaxTwice));
  const KQuadrature q = build_k_quadrature(band);
  const KSpectrum s = peter_weyl_forward(q, sample_on(q, f), band);
  write_text(cfg.out_path, dump(to_json(s)));
  return {};
}

JobResult run_transform_g(const JobConfig& cfg) {
  validate(cfg.verify);
  const FrequencyGrid freq = make_frequency_grid(cfg.verify.grids.lambda, cfg.verify.grids.xi);
  const std::size_t rows = freq.size() * static_cast<std::size_t>(cfg.verify.jmax_twice + 1);
  if (rows > kMaxTableRows) throw CapExceeded("spectral table would have " + std::to_string(rows) + " rows");
  const SpectralTable t = sl2c_fourier(sl2c_test_function(cfg.verify), freq, cfg.verify.jmax_twice);
  write_text(cfg.out_path, cfg.format == ReportFormat::Json ? dump(to_json(t)) : spectral_table_csv(t));
  return {};
}

JobResult run_transform_p(const JobConfig& cfg) {
  validate(cfg.verify);
  const auto& g = cfg.verify.grids;
  const std::array<LineGrid, 4> eta{g.eta, g.eta, g.eta, g.eta};
  const FrequencyGrid freq = make_frequency_grid(g.lambda, g.xi);
  const PSpectralTable t = poincare_fourier(poincare_test_function(cfg.verify), eta, freq, poincare_test_band());
  if (cfg.full || (cfg.format_set && cfg.format == ReportFormat::Json)) {
    write_text(cfg.out_path, dump(to_json(t, kMaxTableRows)));
  } else {
    write_text(cfg.out_path, p_spectral_table_csv(t, kMaxTableRows));
  }
  return {};
}

JobResult run_lorentz(const JobConfig& cfg) {
  const json doc = input_document(cfg);
  json g_doc = doc;
  std::optional<Vec4> v;
  if (doc.is_object() && doc.contains("g")) {
    expect_keys(doc, "lorentz input", {"g", "v"});
    g_doc = doc["g"];
    if (doc.contains("v")) {
      const json& jv = doc["v"];
      if (!jv.is_array() || jv.size() != 4) throw ConfigError("v must be [t, x, y, z]");
      v = Vec4{get_as<double>(jv[0], "v"), get_as<double>(jv[1], "v"), get_as<double>(jv[2], "v"),
               get_as<double>(jv[3], "v")};
    }
  }
  const GroupElement g = group_element_from_json(g_doc);
  const Lorentz4 m = covering_map(g);
  Json out;
  out["matrix"] = to_json(m);
  out["class"] = to_string(classify_lorentz(m));
  if (v) out["image"] = to_json(spinor_action(g, *v));
  write_text(cfg.out_path, dump(out));
  return {};
}

}  // namespace

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> cmds = {"decompose", "wigner",  "transform-k", "transform-g",
                                                "transform-p", "plancherel", "lorentz", "convolve",
                                                "verify-all"};
  return cmds;
}

EulerAngles parse_euler(const std::string& text) {
  EulerAngles e;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> e.phi >> c1 >> e.theta >> c2 >> e.psi) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof()) {
    throw ConfigError("euler must be phi,theta,psi; got '" + text + "'");
  }
  return e;
}

JobConfig apply_config(const json& doc, JobConfig cfg) {
  expect_keys(doc, "config",
              {"command", "seed", "jmax_twice", "grids", "family", "input", "data", "euler", "two_j",
               "target", "output", "full", "timing"});
  if (doc.contains("command")) cfg.command = get_as<std::string>(doc["command"], "command");
  if (doc.contains("seed")) cfg.verify.seed = get_as<std::uint64_t>(doc["seed"], "seed");
  if (doc.contains("jmax_twice")) cfg.verify.jmax_twice = get_as<int>(doc["jmax_twice"], "jmax_twice");
  if (doc.contains("grids")) {
    const json& g = doc["grids"];
    expect_keys(g, "grids", {"n", "t", "lambda", "xi", "eta", "v"});
    GridParams& p = cfg.verify.grids;
    const std::pair<const char*, LineGrid*> slots[] = {{"n", &p.n},     {"t", &p.t},     {"lambda", &p.lambda},
                                                       {"xi", &p.xi},   {"eta", &p.eta}, {"v", &p.v}};
    for (const auto& [name, slot] : slots)
      if (g.contains(name)) *slot = grid_from_json(g[name], name);
  }
  if (doc.contains("family")) {
    const json& f = doc["family"];
    expect_keys(f, "family", {"sigma", "tau", "coefficient_seed", "members"});
    FamilyParams& p = cfg.verify.family;
    if (f.contains("sigma")) p.sigma = get_as<double>(f["sigma"], "family.sigma");
    if (f.contains("tau")) p.tau = get_as<double>(f["tau"], "family.tau");
    if (f.contains("coefficient_seed")) p.coefficient_seed = get_as<std::uint64_t>(f["coefficient_seed"], "family.coefficient_seed");
    if (f.contains("members")) p.members = get_as<int>(f["members"], "family.members");
  }
  if (doc.contains("input")) {
    const json& in = doc["input"];
    if (in.is_string()) {
      cfg.input_path = in.get<std::string>();
      cfg.input_data.reset();
    } else {
      cfg.input_data = in;
    }
  }
  if (doc.contains("data")) cfg.input_data = doc["data"];
  if (doc.contains("euler")) cfg.euler = euler_from_json(doc["euler"]);
  if (doc.contains("two_j")) cfg.two_j = get_as<int>(doc["two_j"], "two_j");
  if (doc.contains("target")) cfg.target = get_as<std::string>(doc["target"], "target");
  if (doc.contains("full")) cfg.full = get_as<bool>(doc["full"], "full");
  if (doc.contains("timing")) cfg.verify.timing = get_as<bool>(doc["timing"], "timing");
  if (doc.contains("output")) {
    const json& o = doc["output"];
    expect_keys(o, "output", {"path", "format"});
    if (o.contains("path")) cfg.out_path = get_as<std::string>(o["path"], "output.path");
    if (o.contains("format")) {
      cfg.format = format_from_string(get_as<std::string>(o["format"], "output.format"));
      cfg.format_set = true;
    }
  }
  return cfg;
}

JobConfig load_config_file(const std::string& path, JobConfig base) {
  return apply_config(parse_document(read_file(path), path), std::move(base));
}

JobResult run_job(const JobConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "decompose") return run_decompose(cfg);
  if (c == "wigner") return run_wigner(cfg);
  if (c == "transform-k") return run_transform_k(cfg);
  if (c == "transform-g") return run_transform_g(cfg);
  if (c == "transform-p") return run_transform_p(cfg);
  if (c == "lorentz") return run_lorentz(cfg);
  if (c == "plancherel") return emit(cfg, plancherel_report(cfg.verify, cfg.target.empty() ? "k" : cfg.target));
  if (c == "convolve") return emit(cfg, convolution_report(cfg.verify, cfg.target.empty() ? "g" : cfg.target));
  if (c == "verify-all") return emit(cfg, verify_all(cfg.verify));
  throw ConfigError(c.empty() ? "no command given" : "unknown command '" + c + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const CapExceeded*>(&e) || dynamic_cast<const SizeExceeded*>(&e) ||
      dynamic_cast<const BandlimitExceeded*>(&e))
    return kExitCap;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const GridMismatch*>(&e)) return kExitConfig;
  return kExitNumeric;
}

}  // namespace harmonics
