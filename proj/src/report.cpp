#include "harmonics/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "harmonics/errors.hpp"

namespace harmonics {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

bool ReportRow::passed() const {
  switch (kind) {
    case RowKind::Bound:
      return residual <= tolerance;
    case RowKind::Guard:
      return residual > tolerance;
    case RowKind::Info:
      return true;
  }
  return false;
}

std::string ReportRow::tolerance_text() const {
  switch (kind) {
    case RowKind::Bound:
      return format_number(tolerance);
    case RowKind::Guard:
      return ">" + format_number(tolerance);
    case RowKind::Info:
      return "-";
  }
  return "-";
}

std::string ReportRow::pass_text() const {
  if (kind == RowKind::Info) return "info";
  return passed() ? "true" : "false";
}

bool Report::all_pass() const {
  for (const auto& r : rows)
    if (!r.passed()) return false;
  return true;
}

void Report::append(const Report& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string ms_text(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

ReportRow row_from_fields(const std::string& identity, const std::string& ref,
                          const std::string& residual, const std::string& tolerance,
                          const std::string& pass, const std::string& ms) {
  ReportRow r;
  r.identity = identity;
  r.reference = ref;
  r.residual = std::stod(residual);
  r.ms = std::stod(ms);
  if (pass == "info" || tolerance == "-") {
    r.kind = RowKind::Info;
  } else if (!tolerance.empty() && tolerance[0] == '>') {
    r.kind = RowKind::Guard;
    r.tolerance = std::stod(tolerance.substr(1));
  } else {
    r.tolerance = std::stod(tolerance);
  }
  return r;
}

}  // namespace

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.identity) << ',' << csv_field(row.reference) << ','
       << format_number(row.residual) << ',' << row.tolerance_text() << ',' << row.pass_text()
       << ',' << ms_text(row.ms) << "\n";
  }
  return os.str();
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["identity"] = row.identity;
    o["paper_ref"] = row.reference;
    // Numbers are rounded through the CSV text so both formats carry the same digits.
    o["residual"] = std::stod(format_number(row.residual));
    o["tolerance"] = row.tolerance_text();
    o["pass"] = row.pass_text();
    o["ms"] = std::stod(ms_text(row.ms));
    arr.push_back(o);
  }
  return arr.dump(2) + "\n";
}

void emit_report(const Report& r, const std::string& path, ReportFormat format) {
  const std::string text = format == ReportFormat::Csv ? to_csv(r) : to_json(r);
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

Report parse_csv_report(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw IoError("missing report header");
  Report r;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw IoError("malformed report row: " + line);
    r.rows.push_back(row_from_fields(f[0], f[1], f[2], f[3], f[4], f[5]));
  }
  return r;
}

Report parse_json_report(const std::string& text) {
  Report r;
  try {
    const auto arr = nlohmann::json::parse(text);
    for (const auto& o : arr) {
      r.rows.push_back(row_from_fields(o.at("identity"), o.at("paper_ref"),
                                       format_number(o.at("residual").get<double>()),
                                       o.at("tolerance"), o.at("pass"),
                                       ms_text(o.at("ms").get<double>())));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed JSON report: ") + e.what());
  }
  return r;
}

}  // namespace harmonics
