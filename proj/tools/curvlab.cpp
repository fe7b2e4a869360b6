// curvlab: sample a metric, run the curvature audits and print a report.
#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "curvlab/report.hpp"

using namespace curvlab;

namespace {

RunConfig other_side(const RunConfig& base, const std::string& what) {
  RunConfig b = base;
  b.overrides = {};
  if (std::filesystem::exists(what)) {
    b.metric_file = what;
  } else {
    b.metric_file.reset();
    b.preset = what;
  }
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature laboratory: classify and audit a closed-form spacetime metric"};
  RunConfig cfg;
  std::string metric_file, mass, charge, format = "text", compare_with;
  std::optional<double> lambda;

  app.add_option("--preset", cfg.preset, "Built-in metric")
      ->check(CLI::IsMember(preset_names()))
      ->capture_default_str();
  app.add_option("--metric-file", metric_file, "Metric file (g_ij = <expr>, param lambda|m|q = ...)")
      ->check(CLI::ExistingFile);
  app.add_option("--lambda", lambda, "Cosmological parameter of the VBdS family");
  app.add_option("--mass", mass, "Mass profile m(t) as an expression in t");
  app.add_option("--charge", charge, "Charge profile q(t) as an expression in t");
  app.add_option("--samples", cfg.samples, "Number of sample points")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Fit and proportionality tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--suite", cfg.suites, "Suite to run (repeatable)")->check(CLI::IsMember(suite_names()));
  app.add_option("--compare-with", compare_with, "Preset name or metric file for side-by-side comparison");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!metric_file.empty()) cfg.metric_file = metric_file;
    cfg.overrides.lambda = lambda;
    if (!mass.empty()) cfg.overrides.mass = parse_expr(mass);
    if (!charge.empty()) cfg.overrides.charge = parse_expr(charge);
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::text;

    const bool compare_mode = !compare_with.empty() || std::find(cfg.suites.begin(), cfg.suites.end(), "compare") != cfg.suites.end();
    if (compare_mode) {
      if (compare_with.empty()) compare_with = "vaidya_bonner";
      cfg.suites.erase(std::remove(cfg.suites.begin(), cfg.suites.end(), "compare"), cfg.suites.end());
      cfg.compare_with = compare_with;
      const CompareReport rep = compare(cfg, other_side(cfg, compare_with));
      std::cout << (cfg.format == OutputFormat::json ? to_json(rep) : to_text(rep));
      return std::max(exit_code(rep.a), exit_code(rep.b));
    }
    const AuditReport rep = run(cfg);
    std::cout << (cfg.format == OutputFormat::json ? to_json(rep) : to_text(rep));
    return exit_code(rep);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
