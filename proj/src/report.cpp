#include "curvlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace curvlab {
namespace {

using Json = nlohmann::ordered_json;

void dump(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short numeric rows stay on one line
      bool flat = j.size() <= 12;
      for (const auto& x : j) flat = flat && (x.is_number() || x.is_null() || x.is_string());
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& x : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        dump(x, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::string render(const Json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

Json status_json(const std::optional<Status>& s) { return s ? Json(status_name(*s)) : Json(nullptr); }

Json verdict_json(const StructureVerdict& v) {
  Json j;
  j["name"] = v.name;
  j["suite"] = v.suite;
  j["status"] = status_name(v.status);
  j["degenerate"] = v.degenerate;
  j["constraint_surface"] = v.constraint_surface;
  j["invariant"] = v.invariant;
  j["max_residual"] = v.max_residual;
  j["coefficient_names"] = v.coefficient_names;
  Json pts = Json::array();
  for (std::size_t i = 0; i < v.points.size(); ++i) {
    Json p;
    p["index"] = v.points[i];
    p["residual"] = v.residuals[i];
    p["coefficients"] = v.coefficients[i];
    if (i < v.target_values.size()) p["targets"] = v.target_values[i];
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  Json c;
  c["claimed"] = status_json(v.claimed);
  c["gating"] = v.gating;
  c["targets"] = v.targets;
  c["target_tolerance"] = v.target_tolerance;
  c["max_target_deviation"] = v.max_target_deviation;
  c["agrees"] = v.agrees ? Json(*v.agrees) : Json(nullptr);
  j["reference"] = std::move(c);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json report_json(const AuditReport& r, bool with_timings) {
  Json j;
  Json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["engine_version"] = r.engine_version;
  Json cfg;
  cfg["metric"] = r.metric_label;
  cfg["preset"] = r.config.metric_file ? Json(nullptr) : Json(r.config.preset);
  cfg["metric_file"] = r.config.metric_file ? Json(*r.config.metric_file) : Json(nullptr);
  cfg["lambda"] = r.config.overrides.lambda ? Json(*r.config.overrides.lambda) : Json(nullptr);
  cfg["mass"] = r.config.overrides.mass ? Json(unparse(*r.config.overrides.mass)) : Json(nullptr);
  cfg["charge"] = r.config.overrides.charge ? Json(unparse(*r.config.overrides.charge)) : Json(nullptr);
  cfg["samples"] = r.config.samples;
  cfg["seed"] = r.config.seed;
  cfg["tol"] = r.config.tol;
  cfg["suites"] = r.config.suites;
  meta["config"] = std::move(cfg);
  Json pts = Json::array();
  for (const auto& p : r.points) pts.push_back(Json::array({p[0], p[1], p[2], p[3]}));
  meta["points"] = std::move(pts);
  meta["skipped_points"] = r.skipped_points;
  meta["warnings"] = r.warnings;
  meta["invariants_pass"] = r.invariants_pass();
  meta["exit_code"] = exit_code(r);
  if (with_timings) {
    Json t;
    for (const auto& [k, v] : r.timings) t[k] = v;
    meta["timings_s"] = std::move(t);
  }
  j["meta"] = std::move(meta);

  Json vs = Json::array();
  for (const auto& v : r.verdicts) vs.push_back(verdict_json(v));
  j["verdicts"] = std::move(vs);

  Json fx = Json::array();
  for (const auto& f : r.fixtures) {
    Json e;
    e["tensor"] = f.tensor;
    e["indices"] = f.indices;
    e["trust"] = f.trust == Trust::required ? "required" : "audit";
    e["closed_form"] = f.source;
    e["max_deviation"] = f.max_deviation;
    e["worst_point"] = f.worst_point;
    e["engine"] = f.engine_value;
    e["closed_form_value"] = f.fixture_value;
    e["passed"] = f.passed;
    fx.push_back(std::move(e));
  }
  j["fixtures"] = std::move(fx);

  Json ds = Json::array();
  for (const auto& d : r.discrepancies) {
    Json e;
    e["kind"] = d.kind;
    e["name"] = d.name;
    e["required"] = d.required;
    e["max_deviation"] = d.max_deviation;
    e["detail"] = d.detail;
    ds.push_back(std::move(e));
  }
  j["discrepancies"] = std::move(ds);
  return j;
}

std::string coefficient_summary(const StructureVerdict& v) {
  std::string s;
  for (std::size_t i = 0; i < v.coefficient_names.size(); ++i) {
    double lo = INFINITY, hi = -INFINITY;
    bool finite = true;
    for (const auto& c : v.coefficients) {
      if (!std::isfinite(c[i])) finite = false;
      lo = std::min(lo, c[i]);
      hi = std::max(hi, c[i]);
    }
    char buf[96];
    if (!finite)
      std::snprintf(buf, sizeof buf, "%s undefined", v.coefficient_names[i].c_str());
    else if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi)))
      std::snprintf(buf, sizeof buf, "%s = %.10g", v.coefficient_names[i].c_str(), hi);
    else
      std::snprintf(buf, sizeof buf, "%s in [%.6g, %.6g]", v.coefficient_names[i].c_str(), lo, hi);
    if (!s.empty()) s += ", ";
    s += buf;
  }
  return s;
}

}  // namespace

std::string to_json(const AuditReport& r, bool with_timings) { return render(report_json(r, with_timings)); }

std::string to_text(const AuditReport& r) {
  std::ostringstream out;
  out << "curvlab " << r.engine_version << "  metric: " << r.metric_label << "  samples: " << r.config.samples
      << "  seed: " << r.config.seed << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  std::string suite;
  for (const auto& v : r.verdicts) {
    if (v.suite != suite) {
      suite = v.suite;
      out << "\n[" << suite << "]\n";
    }
    char res[32];
    std::snprintf(res, sizeof res, "%.3g", v.max_residual);
    out << "  " << v.name << ": " << status_name(v.status);
    if (v.degenerate) out << " (degenerate)";
    out << "  residual " << res;
    const std::string cs = coefficient_summary(v);
    if (!cs.empty()) out << "  " << cs;
    if (v.claimed) {
      out << "  | reference: " << status_name(*v.claimed);
      for (std::size_t i = 0; i < v.targets.size(); ++i) out << (i ? ", " : " with ") << v.targets[i];
      out << (v.agrees && *v.agrees ? "  [agrees]" : "  [DIFFERS]");
    }
    if (!v.note.empty()) out << "  (" << v.note << ")";
    out << "\n";
  }
  if (!r.fixtures.empty()) {
    int req = 0, req_ok = 0, aud = 0, aud_ok = 0;
    for (const auto& f : r.fixtures) {
      (f.trust == Trust::required ? req : aud)++;
      if (f.passed) (f.trust == Trust::required ? req_ok : aud_ok)++;
    }
    out << "\n[fixture table]\n  required: " << req_ok << "/" << req << " match, audit-only: " << aud_ok << "/"
        << aud << " match\n";
  }
  if (!r.discrepancies.empty()) {
    out << "\n[discrepancies]\n";
    for (const auto& d : r.discrepancies)
      out << "  " << d.kind << (d.required ? " (required)" : "") << " " << d.name << ": " << d.detail << "\n";
  }
  out << "\nengine invariants: " << (r.invariants_pass() ? "pass" : "FAIL") << "\n";
  return out.str();
}

std::string to_json(const CompareReport& c, bool with_timings) {
  Json j;
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    Json e;
    e["name"] = r.name;
    e["a"] = r.a;
    e["b"] = r.b;
    e["differs"] = r.differs;
    rows.push_back(std::move(e));
  }
  j["comparison"] = std::move(rows);
  j["a"] = report_json(c.a, with_timings);
  j["b"] = report_json(c.b, with_timings);
  return render(j);
}

std::string to_text(const CompareReport& c) {
  std::ostringstream out;
  out << "comparing " << c.a.metric_label << " (a) with " << c.b.metric_label << " (b)\n";
  out << "\n[differences]\n";
  int n = 0;
  for (const auto& r : c.rows)
    if (r.differs) {
      out << "  " << r.name << ": " << r.a << "  vs  " << r.b << "\n";
      ++n;
    }
  if (n == 0) out << "  none\n";
  out << "\n[shared]\n";
  for (const auto& r : c.rows)
    if (!r.differs) out << "  " << r.name << ": " << r.a << " (both)\n";
  return out.str();
}

}  // namespace curvlab
