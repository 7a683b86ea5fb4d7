#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harmonics/errors.hpp"
#include "harmonics/family.hpp"
#include "harmonics/job.hpp"
#include "harmonics/serialize.hpp"

using namespace harmonics;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("harmonics_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config keys map onto the job") {
  const json doc = json::parse(R"({
    "command": "plancherel", "seed": 5, "jmax_twice": 2, "target": "k",
    "grids": {"n": {"L": 4, "m": 8}, "eta": {"L": 2, "m": 10, "offset": 0.1}},
    "family": {"sigma": 0.5, "members": 2},
    "output": {"path": "x.csv", "format": "json"}, "euler": [0.1, 0.2, 0.3]
  })");
  const JobConfig c = apply_config(doc);
  CHECK(c.command == "plancherel");
  CHECK(c.verify.seed == 5);
  CHECK(c.verify.jmax_twice == 2);
  CHECK(c.verify.grids.n.m == 8);
  CHECK(c.verify.grids.eta.offset == 0.1);
  CHECK(c.verify.grids.t.m == 24);
  CHECK(c.verify.family.sigma == 0.5);
  CHECK(c.format == ReportFormat::Json);
  CHECK(c.out_path == "x.csv");
  CHECK(c.euler->theta == 0.2);
}

TEST_CASE("bad configs are rejected") {
  CHECK_THROWS_AS(apply_config(json::parse(R"({"sed": 1})")), ConfigError);
  CHECK_THROWS_AS(apply_config(json::parse(R"({"grids": {"n": {"L": 1}}})")), ConfigError);
  CHECK_THROWS_AS(apply_config(json::parse(R"({"grids": {"n": {"L": 1, "m": 7}}})")), ConfigError);
  CHECK_THROWS_AS(apply_config(json::parse(R"({"seed": "abc"})")), ConfigError);
  CHECK_THROWS_AS(apply_config(json::parse(R"({"output": {"format": "xml"}})")), ConfigError);
  CHECK_THROWS_AS(parse_euler("1,2"), ConfigError);
  CHECK(parse_euler("1, 2 ,3").psi == 3.0);
}

TEST_CASE("caps raise CapExceeded and map to their exit code") {
  JobConfig c;
  c.command = "verify-all";
  c.verify.jmax_twice = Caps::kMaxJmaxTwice + 2;
  try {
    run_job(c);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(exit_code_for(e) == kExitCap);
  }
  c.verify.jmax_twice = 2;
  c.verify.grids.xi = LineGrid(1.0, Caps::kMaxGridPoints + 2);
  CHECK_THROWS_AS(run_job(c), CapExceeded);
  CHECK(exit_code_for(ConfigError("x")) == kExitConfig);
  CHECK(exit_code_for(IoError("x")) == kExitIo);
  CHECK(exit_code_for(DeterminantError("x")) == kExitNumeric);
}

TEST_CASE("decompose on the identity writes zero factors") {
  JobConfig c;
  c.command = "decompose";
  c.input_data = json::parse(R"({"a":[1,0],"b":[0,0],"c":[0,0],"d":[1,0]})");
  c.out_path = temp_path("decompose.json");
  CHECK(run_job(c).exit_code == kExitOk);
  const json out = json::parse(slurp(c.out_path));
  CHECK(out["euler"] == json::array({0.0, 0.0, 0.0}));
  CHECK(out["t"] == 0.0);
  CHECK(out["n"] == json::array({0.0, 0.0}));
  CHECK(slurp(c.out_path).find("-0.0") == std::string::npos);
  std::remove(c.out_path.c_str());
}

TEST_CASE("missing input and unwritable output") {
  JobConfig c;
  c.command = "decompose";
  CHECK_THROWS_AS(run_job(c), ConfigError);
  c.input_path = temp_path("does_not_exist.json");
  CHECK_THROWS_AS(run_job(c), IoError);
  c.input_path.clear();
  c.input_data = json::parse(R"({"a":1,"b":0,"c":0,"d":1})");
  c.out_path = "/nonexistent_dir/out.json";
  CHECK_THROWS_AS(run_job(c), IoError);
}

TEST_CASE("plancherel on K with jmax_twice 4 stays below 1e-10") {
  JobConfig c;
  c.command = "plancherel";
  c.target = "k";
  c.verify.jmax_twice = 4;
  c.out_path = temp_path("plancherel_k.csv");
  CHECK(run_job(c).exit_code == kExitOk);
  const Report r = parse_csv_report(slurp(c.out_path));
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].identity == "k.plancherel");
  CHECK(r.rows[0].residual <= 1e-10);
  std::remove(c.out_path.c_str());
}

TEST_CASE("value types serialize and parse back") {
  Rng rng(2);
  const GroupElement g = random_group_element(rng);
  CHECK(group_element_from_json(json::parse(to_json(g).dump())).max_diff(g) < 1e-15);
  const IwasawaFactors f = iwasawa_decompose(g);
  const IwasawaFactors back = iwasawa_from_json(json::parse(to_json(f).dump()));
  CHECK(compose_iwasawa(back).max_diff(g) < 1e-12);
  KSpectrum s = KSpectrum::zeros(2);
  s.blocks[1](0, 1) = {0.5, -1.5};
  s.blocks[2](2, 0) = {3.0, 0.25};
  const KSpectrum s2 = kspectrum_from_json(json::parse(to_json(s).dump()));
  for (int tj = 0; tj <= 2; ++tj) CHECK(s2.blocks[tj] == s.blocks[tj]);
  CHECK_THROWS_AS(group_element_from_json(json::parse(R"({"a":1})")), ConfigError);
  CHECK(to_json(Vec4{1, 2, 3, 4}).dump() == "[1.0,2.0,3.0,4.0]");
}

TEST_CASE("transform-k on a spectrum input reproduces it") {
  KSpectrum s = KSpectrum::zeros(1);
  s.blocks[0](0, 0) = 2.0;
  s.blocks[1](1, 0) = {0.0, 1.0};
  JobConfig c;
  c.command = "transform-k";
  c.input_data = json::parse(to_json(s).dump());
  c.out_path = temp_path("transform_k.json");
  CHECK(run_job(c).exit_code == kExitOk);
  const KSpectrum out = kspectrum_from_json(json::parse(slurp(c.out_path)));
  for (int tj = 0; tj <= 1; ++tj) CHECK((out.blocks[tj] - s.blocks[tj]).cwiseAbs().maxCoeff() < 1e-14);
  std::remove(c.out_path.c_str());
}
