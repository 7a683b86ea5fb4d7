#pragma once

// Residual reports: rows of (identity, reference, residual, tolerance, pass, ms)
// written as CSV or JSON with fixed formatting so equal inputs give equal bytes.

#include <string>
#include <vector>

namespace harmonics {

enum class RowKind {
  /// Passes when residual <= tolerance.
  Bound,
  /// Passes when residual > tolerance; used for guard checks that must fail.
  Guard,
  /// Reported only; never affects the exit status.
  Info,
};

struct ReportRow {
  std::string identity;
  std::string reference;
  double residual = 0;
  double tolerance = 0;
  RowKind kind = RowKind::Bound;
  double ms = 0;
  /// Acceptance criterion the row belongs to (0 when none).
  int criterion = 0;

  bool passed() const;
  std::string tolerance_text() const;
  std::string pass_text() const;
};

struct Report {
  std::vector<ReportRow> rows;

  bool all_pass() const;
  void append(const Report& other);
};

enum class ReportFormat { Csv, Json };

inline constexpr const char* kCsvHeader = "identity,paper_ref,residual,tolerance,pass,ms";

std::string format_number(double x);
std::string to_csv(const Report& r);
std::string to_json(const Report& r);
/// Writes to `path`, or stdout when path is empty. Throws IoError.
void emit_report(const Report& r, const std::string& path, ReportFormat format);

/// Parse-back of the CSV and JSON forms; kinds and numbers are recovered from the text.
Report parse_csv_report(const std::string& text);
Report parse_json_report(const std::string& text);

}  // namespace harmonics
