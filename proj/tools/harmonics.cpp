// harmonics: command-line front end for the transforms and the identity suite.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "harmonics/errors.hpp"
#include "harmonics/job.hpp"
#include "harmonics/kernels.hpp"

namespace {

using namespace harmonics;

void apply_thread_env() {
  const char* env = std::getenv("HARMONICS_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError(std::string("HARMONICS_THREADS must be a positive integer, got '") + env + "'");
  set_thread_limit(static_cast<int>(n));
}

void list_identities() {
  for (const auto& info : identity_catalog()) {
    std::printf("%s\t%d\t%s\t%s\n", info.id.c_str(), info.criterion,
                info.kind == RowKind::Guard ? "guard" : info.kind == RowKind::Info ? "info" : "bound",
                info.reference.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on SU(2), SL(2,C) and the Poincare group"};
  app.set_version_flag("--version", "harmonics 1.0");

  std::string command, config_path, out, format, seed_text, data, input, euler, target;
  int jmax_twice = 0, two_j = 0;
  bool full = false, timing = false, list = false;

  std::string commands;
  for (const auto& c : job_commands()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "One of: " + commands);
  app.add_option("--config", config_path, "JSON job file; flags given on the command line win");
  auto* out_opt = app.add_option("--out", out, "Output file (default stdout)");
  auto* format_opt = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", seed_text, "Master seed (unsigned 64-bit)");
  auto* jmax_opt = app.add_option("--jmax-twice", jmax_twice, "Spin band, twice the largest j");
  auto* data_opt = app.add_option("--data", data, "Inline JSON input document");
  auto* input_opt = app.add_option("--input", input, "Path of a JSON input document");
  auto* euler_opt = app.add_option("--euler", euler, "phi,theta,psi in radians (wigner)");
  auto* two_j_opt = app.add_option("--two-j", two_j, "Twice the spin (wigner)");
  auto* target_opt = app.add_option("--target", target, "k, g or p (plancherel); g or p (convolve)");
  app.add_flag("--full", full, "transform-p: write the full JSON table instead of CSV");
  app.add_flag("--timing", timing, "Fill the ms column of reports");
  app.add_flag("--list-identities", list, "Print every identity verify-all checks and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    apply_thread_env();
    if (list) {
      list_identities();
      return kExitOk;
    }
    JobConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    if (!command.empty()) cfg.command = command;
    if (out_opt->count()) cfg.out_path = out;
    if (format_opt->count()) {
      cfg.format = format == "json" ? ReportFormat::Json : ReportFormat::Csv;
      cfg.format_set = true;
    }
    if (seed_opt->count()) {
      try {
        std::size_t used = 0;
        cfg.verify.seed = std::stoull(seed_text, &used);
        if (used != seed_text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("--seed must be an unsigned integer, got '" + seed_text + "'");
      }
    }
    if (jmax_opt->count()) cfg.verify.jmax_twice = jmax_twice;
    if (data_opt->count()) {
      try {
        cfg.input_data = nlohmann::json::parse(data);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("--data is not valid JSON: ") + e.what());
      }
    }
    if (input_opt->count()) {
      cfg.input_path = input;
      if (!data_opt->count()) cfg.input_data.reset();
    }
    if (euler_opt->count()) cfg.euler = parse_euler(euler);
    if (two_j_opt->count()) cfg.two_j = two_j;
    if (target_opt->count()) cfg.target = target;
    if (full) cfg.full = true;
    if (timing) cfg.verify.timing = true;
    return run_job(cfg).exit_code;
  } catch (const std::exception& e) {
    std::cerr << "harmonics: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
