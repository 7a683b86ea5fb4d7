#pragma once

// Batch jobs: the JSON config schema, flag overrides and command dispatch
// behind the `harmonics` executable.

#include <json.hpp>
#include <optional>
#include <string>

#include "harmonics/lie_core.hpp"
#include "harmonics/report.hpp"
#include "harmonics/verify.hpp"

namespace harmonics {

struct JobConfig {
  std::string command;
  VerifyConfig verify;
  /// Input document: a path (`input` string) or an inline JSON value (`data`).
  std::string input_path;
  std::optional<nlohmann::json> input_data;
  std::optional<EulerAngles> euler;
  int two_j = 1;
  std::string target;
  std::string out_path;
  ReportFormat format = ReportFormat::Csv;
  /// True when the format came from config or a flag rather than the default.
  bool format_set = false;
  bool full = false;
};

/// Largest table a transform command will write.
inline constexpr std::size_t kMaxTableRows = std::size_t{1} << 24;

/// Commands in the order they are documented.
const std::vector<std::string>& job_commands();

/// Applies a config document on top of `base`. Throws ConfigError on unknown keys or bad types.
JobConfig apply_config(const nlohmann::json& doc, JobConfig base = {});
JobConfig load_config_file(const std::string& path, JobConfig base = {});

/// Parses "phi,theta,psi".
EulerAngles parse_euler(const std::string& text);

struct JobResult {
  int exit_code = 0;
};

/// Runs the command and writes its output to cfg.out_path (stdout when empty).
JobResult run_job(const JobConfig& cfg);

/// Exit status for an exception escaping run_job.
int exit_code_for(const std::exception& e);

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitNumeric = 5;

}  // namespace harmonics
