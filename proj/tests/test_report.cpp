#include <doctest.h>

#include "harmonics/report.hpp"

using namespace harmonics;

TEST_CASE("empty report is the header line alone") {
  CHECK(to_csv(Report{}) == std::string(kCsvHeader) + "\n");
  CHECK(parse_csv_report(to_csv(Report{})).rows.empty());
}

TEST_CASE("rows survive a CSV and JSON round trip") {
  Report r;
  ReportRow a;
  a.identity = "x.one";
  a.reference = "int |f|^2, with commas";
  a.residual = 1.25e-11;
  a.tolerance = 1e-10;
  r.rows.push_back(a);
  ReportRow g = a;
  g.identity = "x.guard";
  g.reference = "quote \" inside";
  g.kind = RowKind::Guard;
  g.residual = 0.5;
  g.tolerance = 1e-2;
  r.rows.push_back(g);
  for (const Report& back : {parse_csv_report(to_csv(r)), parse_json_report(to_json(r))}) {
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0].identity == "x.one");
    CHECK(back.rows[0].reference == a.reference);
    CHECK(back.rows[0].residual == doctest::Approx(1.25e-11));
    CHECK(back.rows[1].kind == RowKind::Guard);
    CHECK(back.rows[1].reference == g.reference);
    CHECK(back.rows[1].passed());
  }
  CHECK(to_csv(parse_csv_report(to_csv(r))) == to_csv(r));
}

TEST_CASE("pass rules per kind") {
  ReportRow r;
  r.residual = 1e-3;
  r.tolerance = 1e-2;
  CHECK(r.passed());
  r.kind = RowKind::Guard;
  CHECK_FALSE(r.passed());
  r.kind = RowKind::Info;
  CHECK(r.passed());
  CHECK(r.pass_text() == "info");
  CHECK(format_number(0.0) == "0.000000e+00");
}
