#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/classify.hpp"
#include "curvlab/spacetimes.hpp"

namespace curvlab {

inline constexpr const char* kEngineVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { text, json };

const std::vector<std::string>& suite_names();

struct RunConfig {
  std::string preset = "vbds";
  std::optional<std::string> metric_file;
  PresetOverrides overrides;
  int samples = 32;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  OutputFormat format = OutputFormat::text;
  std::vector<std::string> suites;  // empty: every suite except compare
  std::optional<std::string> compare_with;
  int jobs = 1;
};

struct FixtureRow {
  std::string tensor;
  std::vector<int> indices;
  std::string source;
  Trust trust;
  double max_deviation = 0.0;  // |engine - closed form| / max(1, |closed form|)
  int worst_point = -1;
  double engine_value = 0.0;   // at the worst point
  double fixture_value = 0.0;
  bool passed = true;
};

struct Discrepancy {
  std::string kind;  // "fixture" | "claim"
  std::string name;
  std::string detail;
  double max_deviation = 0.0;
  bool required = false;
};

struct AuditReport {
  std::string engine_version = kEngineVersion;
  RunConfig config;
  std::string metric_label;
  std::vector<Point> points;
  int skipped_points = 0;
  std::vector<std::string> warnings;
  std::vector<StructureVerdict> verdicts;
  std::vector<FixtureRow> fixtures;
  std::vector<Discrepancy> discrepancies;
  std::map<std::string, double> timings;  // seconds

  const StructureVerdict* find(const std::string& name) const;
  bool invariants_pass() const;
};

// Metric file: "g_ij = <expr>" lines (1-based i, j) and "param lambda|m|q = ..." lines;
// '#' starts a comment. Without g lines the file describes the VBdS family.
MetricSpec parse_metric_text(const std::string& text);
MetricSpec load_metric_file(const std::string& path);
MetricSpec resolve_metric(const RunConfig& config);

AuditReport run(const RunConfig& config);

// 0: engine invariants hold; 2: an invariant failed or too many points were skipped.
int exit_code(const AuditReport& report);

struct CompareRow {
  std::string name;
  std::string a, b;
  bool differs = false;
};
struct CompareReport {
  AuditReport a, b;
  std::vector<CompareRow> rows;
};
CompareReport compare(const RunConfig& a, const RunConfig& b);

}  // namespace curvlab
