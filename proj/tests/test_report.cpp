#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "curvlab/audit.hpp"
#include "curvlab/report.hpp"

using namespace curvlab;
using Json = nlohmann::json;

namespace {

RunConfig small(const std::string& preset, int samples = 3) {
  RunConfig c;
  c.preset = preset;
  c.samples = samples;
  return c;
}

const AuditReport& vbds_report() {
  static const AuditReport r = run(small("vbds"));
  return r;
}

std::string error_of(const std::string& text) {
  try {
    parse_metric_text(text);
  } catch (const std::runtime_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("JSON schema") {
  const Json j = Json::parse(to_json(vbds_report()));
  for (const char* k : {"meta", "verdicts", "fixtures", "discrepancies"}) CHECK(j.contains(k));
  const Json& meta = j["meta"];
  CHECK(meta["schema_version"] == kSchemaVersion);
  CHECK(meta["engine_version"] == kEngineVersion);
  CHECK(meta["config"]["seed"] == 42);
  CHECK(meta["points"].size() == 3);
  CHECK(meta["exit_code"] == 0);
  CHECK(meta.contains("timings_s"));
  CHECK_FALSE(Json::parse(to_json(vbds_report(), false))["meta"].contains("timings_s"));
  for (const auto& v : j["verdicts"]) {
    for (const char* k : {"name", "suite", "status", "degenerate", "max_residual", "coefficient_names", "points",
                          "reference"})
      CHECK(v.contains(k));
    for (const auto& p : v["points"]) CHECK(p["coefficients"].size() == v["coefficient_names"].size());
  }
  CHECK(j["fixtures"].size() == vbds_report().fixtures.size());
}

TEST_CASE("doubles print with 17 significant digits") {
  const Json j = Json::parse(to_json(vbds_report()));
  const double x = vbds_report().points[0][1];
  CHECK(j["meta"]["points"][0][1].get<double>() == x);  // exact round trip
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  CHECK(to_json(vbds_report()).find(buf) != std::string::npos);
}

TEST_CASE("non-finite values serialize as null") {
  AuditReport r = vbds_report();
  r.verdicts.resize(1);
  r.verdicts[0].max_residual = std::nan("");
  r.verdicts[0].coefficient_names = {"x"};
  r.verdicts[0].coefficients.assign(r.verdicts[0].points.size(), {INFINITY});
  const Json j = Json::parse(to_json(r));
  CHECK(j["verdicts"][0]["max_residual"].is_null());
  CHECK(j["verdicts"][0]["points"][0]["coefficients"][0].is_null());
}

TEST_CASE("output is deterministic without timings") {
  RunConfig c = small("vaidya");
  CHECK(to_json(run(c), false) == to_json(run(c), false));
  c.jobs = 3;
  CHECK(to_json(run(c), false) == to_json(run(small("vaidya")), false));
}

TEST_CASE("text and JSON carry the same verdicts") {
  const std::string text = to_text(vbds_report());
  const Json j = Json::parse(to_json(vbds_report()));
  for (const auto& v : j["verdicts"]) {
    const std::string line = "  " + v["name"].get<std::string>() + ": " + v["status"].get<std::string>();
    CHECK_MESSAGE(text.find(line) != std::string::npos, line);
  }
  CHECK(text.find("engine invariants: pass") != std::string::npos);
}

TEST_CASE("metric file grammar") {
  const MetricSpec m = parse_metric_text(
      "# Cartesian Minkowski\n"
      "g_11 = 1\n"
      "g_22 = -1   # trailing comment\n"
      "g_33 = -1\n"
      "g_44 = -1\n"
      "g_12 = 0\n"
      "g_21 = 0\n");
  CHECK(m.preset == "inline");
  CHECK_FALSE(m.vbds_family);
  CHECK(evaluate(m.grid[3][3], Point{}) == -1.0);

  const MetricSpec off = parse_metric_text("g_11 = 1 - 2/r\ng_12 = -1\ng_33 = -r^2\ng_44 = -r^2*sin(theta)^2\n");
  CHECK(evaluate(off.grid[1][0], Point{}) == -1.0);

  const MetricSpec fam = parse_metric_text("param lambda = 0.2\nparam m = 1 + t\n");
  CHECK(fam.vbds_family);
  CHECK(fam.params.lambda == 0.2);
  CHECK(evaluate(fam.params.mass, Point{0.5, 2, 1, 0}) == 1.5);
  CHECK(parse_metric_text("param λ = 0.3\n").params.lambda == 0.3);
  CHECK(parse_metric_text("").vbds_family);
}

TEST_CASE("metric file errors carry line and column") {
  CHECK(error_of("g_11 = 1\ng_22 = 1 +* 2\n").rfind("line 2, column ", 0) == 0);
  CHECK(error_of("g_11 = 1\ng_12 = r\ng_21 = t\n").find("conflicting values for g_21") != std::string::npos);
  CHECK(error_of("g_12 = r\ng_21 = r\n").empty());
  CHECK(error_of("  bogus\n") == "line 1, column 3: expected '='");
  CHECK(error_of("param lambda = r\n").find("lambda must be a number") != std::string::npos);
  CHECK(error_of("param mu = 1\n").find("unknown parameter") != std::string::npos);
  CHECK(error_of("g_15 = 1\n").find("expected") != std::string::npos);
  CHECK(error_of("g_11 = mass\n").find("unknown identifier") != std::string::npos);
  CHECK_THROWS_AS(load_metric_file("/nonexistent/metric.txt"), std::runtime_error);
}

TEST_CASE("inline metric from a file runs end to end") {
  const auto path = std::filesystem::temp_directory_path() / "curvlab_cartesian.metric";
  std::ofstream(path) << "g_11 = 1\ng_22 = -1\ng_33 = -1\ng_44 = -1\n";
  RunConfig c;
  c.metric_file = path.string();
  c.samples = 2;
  const AuditReport r = run(c);
  std::filesystem::remove(path);
  CHECK(r.invariants_pass());
  CHECK(exit_code(r) == 0);
  CHECK(r.fixtures.empty());
  const StructureVerdict* flat = r.find("Ricci flat");
  REQUIRE(flat);
  CHECK(flat->status == Status::holds);
}

TEST_CASE("Minkowski marks ratio-type verdicts degenerate") {
  const AuditReport r = run(small("minkowski", 2));
  CHECK(r.invariants_pass());
  for (const char* n : {"R.R = F Q(g,R)", "C.C = F Q(g,C)", "generalized Roter type", "Einstein level"}) {
    const StructureVerdict* v = r.find(n);
    REQUIRE(v);
    CHECK_MESSAGE(v->degenerate, n);
  }
}

TEST_CASE("exit codes") {
  AuditReport r = vbds_report();
  CHECK(exit_code(r) == 0);
  r.skipped_points = 1;  // 1 of 3 > 20%
  CHECK(exit_code(r) == 2);
  r = vbds_report();
  for (auto& v : r.verdicts)
    if (v.invariant) {
      v.status = Status::fails;
      break;
    }
  CHECK_FALSE(r.invariants_pass());
  CHECK(exit_code(r) == 2);
}

TEST_CASE("run configuration errors") {
  RunConfig c = small("vbds");
  c.samples = 0;
  CHECK_THROWS_AS(run(c), std::invalid_argument);
  c = small("vbds");
  c.suites = {"nosuch"};
  CHECK_THROWS_AS(run(c), std::invalid_argument);
  CHECK_THROWS_AS(run(small("nosuch")), std::invalid_argument);
}

TEST_CASE("suite selection") {
  RunConfig c = small("vbds");
  c.suites = {"curvature"};
  const AuditReport r = run(c);
  REQUIRE_FALSE(r.verdicts.empty());
  for (const auto& v : r.verdicts) CHECK(v.suite == "curvature");
}

TEST_CASE("compare") {
  const CompareReport same = compare(small("vbds", 2), small("vbds", 2));
  for (const auto& row : same.rows) CHECK_MESSAGE(!row.differs, row.name);
  const CompareReport d = compare(small("vbds", 2), small("vaidya_bonner", 2));
  bool kappa = false;
  for (const auto& row : d.rows)
    if (row.name == "scalar curvature") kappa = row.differs;
  CHECK(kappa);
  const std::string text = to_text(d);
  CHECK(text.find("[differences]") != std::string::npos);
  CHECK(Json::parse(to_json(d, false)).contains("comparison"));
}
