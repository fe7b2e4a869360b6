// Acceptance run: one PASS/FAIL line per criterion at the stated tolerances.
// Criteria that the reference data cannot meet still run and print FAIL with the
// measured numbers; the process exits nonzero if any criterion fails.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "curvlab/audit.hpp"
#include "curvlab/report.hpp"
#include "support.hpp"

using namespace curvlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Check {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

std::map<std::string, AuditReport> g_reports;

const AuditReport& report(const std::string& preset) {
  auto it = g_reports.find(preset);
  if (it == g_reports.end()) {
    RunConfig c;  // 32 points, seed 42, demo parameters
    c.preset = preset;
    it = g_reports.emplace(preset, run(c)).first;
  }
  return it->second;
}

const StructureVerdict* verdict(Check& ck, const std::string& preset, const std::string& name) {
  const StructureVerdict* v = report(preset).find(name);
  ck.require(v != nullptr, preset + ": no record for \"" + name + "\"");
  return v;
}

double target_dev(const StructureVerdict& v, std::size_t i) {
  return i < v.max_target_deviation.size() ? v.max_target_deviation[i] : kInf;
}

double min_residual(const StructureVerdict& v) {
  double m = kInf;
  for (double r : v.residuals) m = std::min(m, r);
  return m;
}

// Verdict holds and every listed target is met within tol.
void require_targets(Check& ck, const std::string& preset, const std::string& name, double tol) {
  const StructureVerdict* v = verdict(ck, preset, name);
  if (!v) return;
  ck.require(v->status == Status::holds, preset + " " + name + ": " + status_name(v->status) + " (residual " +
                                             fmt(v->max_residual) + ")");
  for (std::size_t i = 0; i < v->targets.size(); ++i) {
    const double d = target_dev(*v, i);
    ck.require(d < tol, preset + " " + name + ": " + v->coefficient_names.at(i) + " vs " + v->targets[i] +
                            " deviates " + fmt(d));
  }
}

void require_status(Check& ck, const std::string& preset, const std::string& name, Status want) {
  const StructureVerdict* v = verdict(ck, preset, name);
  if (v) ck.require(v->status == want, preset + " " + name + ": " + status_name(v->status));
}

MetricSpec preset_spec(const std::string& name) { return preset(name); }

template <class F>
double max_over_points(const std::string& preset, F&& f) {
  const MetricSpec spec = preset_spec(preset);
  double worst = 0.0;
  for (const Point& p : report(preset).points) worst = std::max(worst, f(build_pack(metric_at_point(spec.grid, p))));
  return worst;
}


int g_failures = 0;

void emit(int id, const std::string& title, const Check& ck, const std::string& summary) {
  std::cout << (ck.ok ? "PASS" : "FAIL") << "  " << (id < 10 ? " " : "") << id << "  " << title;
  if (!summary.empty()) std::cout << ": " << summary;
  std::cout << "\n";
  for (const auto& n : ck.notes) std::cout << "          " << n << "\n";
  if (!ck.ok) ++g_failures;
}

void criterion_invariants() {
  Check ck;
  double worst = 0.0;
  for (const auto& name : preset_names())
    for (const auto& v : report(name).verdicts) {
      if (!v.invariant) continue;
      worst = std::max(worst, v.max_residual);
      ck.require(v.max_residual < 1e-10, name + " " + v.name + ": residual " + fmt(v.max_residual));
    }
  emit(1, "engine invariants on all presets", ck, "worst residual " + fmt(worst));
}

void criterion_jets() {
  Check ck;
  const testing::JetFdStats st = testing::jet_fd_check(20240611, 100);
  ck.require(st.accepted == 100, "only " + std::to_string(st.accepted) + " trees usable");
  ck.require(st.worst12 < 1e-6, "order 1-2 deviation " + fmt(st.worst12) + " on " + st.worst_tree);
  ck.require(st.worst3 < 1e-4, "order 3 deviation " + fmt(st.worst3) + " on " + st.worst_tree);
  emit(2, "jet partials vs central differences", ck,
       "100 trees, worst " + fmt(st.worst12) + " (orders 1-2), " + fmt(st.worst3) + " (order 3)");
}

void criterion_fixtures() {
  Check ck;
  int req = 0, ok = 0, audit_logged = 0;
  for (const auto& name : preset_names()) {
    const AuditReport& r = report(name);
    for (const auto& f : r.fixtures) {
      if (f.trust != Trust::required) continue;
      ++req;
      if (f.passed) {
        ++ok;
        continue;
      }
      std::ostringstream s;
      s << name << " " << f.tensor;
      for (int i : f.indices) s << i;
      s << " = " << f.source << ": deviation " << fmt(f.max_deviation) << " (engine " << f.engine_value
        << ", closed form " << f.fixture_value << ")";
      ck.require(false, s.str());
    }
    for (const auto& d : r.discrepancies) audit_logged += d.kind == "fixture" && !d.required;
    ck.require(exit_code(r) == 0, name + ": audit-only discrepancies changed the exit code");
  }
  emit(3, "required reference components", ck,
       std::to_string(ok) + "/" + std::to_string(req) + " match, " + std::to_string(audit_logged) +
           " audit-only discrepancies logged");
}

void criterion_scalar_curvature() {
  Check ck;
  const double lam = preset_spec("vbds").params.lambda;
  const double dv = max_over_points("vbds", [&](const CurvaturePack& p) { return std::abs(p.kappa.value() - 4 * lam); });
  ck.require(dv < 1e-11, "vbds |kappa - 4 lambda| = " + fmt(dv));
  for (const char* n : {"vaidya_bonner", "vaidya"}) {
    const double d = max_over_points(n, [](const CurvaturePack& p) { return std::abs(p.kappa.value()); });
    ck.require(d < 1e-11, std::string(n) + " |kappa| = " + fmt(d));
  }
  const double s = max_over_points("schwarzschild", [](const CurvaturePack& p) { return norm(values(p.s)); });
  ck.require(s < 1e-10, "schwarzschild |S| = " + fmt(s));
  emit(4, "scalar curvature and Ricci flatness", ck, "|kappa - 4 lambda| " + fmt(dv) + ", Schwarzschild |S| " + fmt(s));
}

void criterion_quasi_einstein() {
  Check ck;
  require_targets(ck, "vbds", "2-quasi-Einstein", 1e-8);
  require_targets(ck, "vaidya", "Ricci simple", 1e-8);
  emit(5, "quasi-Einstein rank and phi", ck, "");
}

void criterion_einstein_level() {
  Check ck;
  require_targets(ck, "vbds", "Ein(3)", 1e-7);
  require_targets(ck, "vaidya_bonner", "Ein(3)", 1e-7);
  emit(6, "Einstein level and minimal-polynomial coefficients", ck, "");
}

void criterion_roter() {
  Check ck;
  double gen = kInf, rot = 0.0;
  if (const auto* v = verdict(ck, "vbds", "generalized Roter type")) gen = v->max_residual;
  if (const auto* v = verdict(ck, "vbds", "Roter type")) rot = min_residual(*v);
  ck.require(gen < 1e-8, "generalized residual " + fmt(gen));
  ck.require(rot > 1e-3, "3-term residual " + fmt(rot));
  emit(7, "Roter decomposition", ck, "generalized residual " + fmt(gen) + ", 3-term residual >= " + fmt(rot));
}

void criterion_pseudosymmetry() {
  Check ck;
  require_targets(ck, "vbds", "C.C = F Q(g,C)", 1e-8);
  require_targets(ck, "vbds", "har.C = F Q(g,C)", 1e-8);
  require_targets(ck, "vbds", "R.R in span of Q(S,R), Q(g,C)", 1e-7);
  require_status(ck, "vbds", "R.R = F Q(g,R)", Status::fails);
  require_status(ck, "vbds", "R.R = F Q(S,R)", Status::fails);
  require_targets(ck, "schwarzschild", "R.R = F Q(g,R)", 1e-9);
  const double div = max_over_points("schwarzschild", [](const CurvaturePack& p) { return norm(divergence_r(p)); });
  ck.require(div < 1e-10, "schwarzschild |div R| = " + fmt(div));
  emit(8, "pseudosymmetry factors", ck, "Schwarzschild |div R| " + fmt(div));
}

void criterion_recurrence() {
  Check ck;
  const MetricSpec spec = preset_spec("vbds");
  int used = 0;
  for (const Point& p : report("vbds").points) {
    const ProfileValues pv = profile_at(spec.params, p);
    used += std::abs(p[1] * pv.m - pv.q * pv.q) > 1e-3;
  }
  ck.require(used == static_cast<int>(report("vbds").points.size()), "points with |rm - q^2| <= 1e-3 were sampled");
  double res = kInf;
  if (const auto* v = verdict(ck, "vbds", "conformal 2-forms recurrent")) res = v->max_residual;
  ck.require(res < 1e-8, "solver residual " + fmt(res));
  require_targets(ck, "vbds", "conformal 2-forms recurrent", 1e-7);
  emit(9, "conformal 2-form recurrence", ck, std::to_string(used) + " points, residual " + fmt(res));
}

void criterion_compatibility() {
  Check ck;
  double worst = 0.0;
  for (const char* lhs : {"Ricci tensor", "energy-momentum tensor"})
    for (const char* w : {"R", "C", "P", "cir(R)", "har(R)"}) {
      const std::string name = std::string(lhs) + " compatible with " + w;
      if (const auto* v = verdict(ck, "vbds", name)) {
        worst = std::max(worst, v->max_residual);
        ck.require(v->max_residual < 1e-9, name + ": residual " + fmt(v->max_residual));
      }
    }
  double gr = kInf;
  if (const auto* v = verdict(ck, "vbds", "metric compatible with R")) gr = v->max_residual;
  ck.require(gr < 1e-11, "metric compatible with R: residual " + fmt(gr));
  emit(10, "Ricci and energy-momentum compatibility", ck, "worst " + fmt(worst) + ", metric " + fmt(gr));
}

void criterion_killing() {
  Check ck;
  const MetricSpec spec = preset_spec("vbds");
  std::array<double, kDim> lo, hi;
  lo.fill(kInf);
  hi.fill(0.0);
  for (const Point& p : report("vbds").points) {
    const MetricAtPoint m = metric_at_point(spec.grid, p);
    for (int c = 0; c < kDim; ++c) {
      const double n = norm(values(lie_derivative(m.g, c)));
      lo[c] = std::min(lo[c], n);
      hi[c] = std::max(hi[c], n);
    }
  }
  ck.require(hi[3] < 1e-12, "|L_phi g| = " + fmt(hi[3]));
  const char* dir[] = {"t", "r", "theta"};
  for (int c = 0; c < 3; ++c) ck.require(lo[c] > 1e-3, std::string("|L_") + dir[c] + " g| = " + fmt(lo[c]));
  emit(11, "Killing directions", ck,
       "|L_phi g| " + fmt(hi[3]) + "; min |L g| along t, r, theta " + fmt(lo[0]) + ", " + fmt(lo[1]) + ", " +
           fmt(lo[2]));
}

void criterion_solitons() {
  Check ck;
  std::string sign = "?";
  if (const auto* v = verdict(ck, "vbds", "almost eta-Yamabe soliton along d/dt")) {
    double amax = 0.0, rlo = kInf, rhi = -kInf;
    for (const auto& c : v->coefficients) {
      amax = std::max(amax, std::abs(c[0]));
      rlo = std::min(rlo, c[3]);
      rhi = std::max(rhi, c[3]);
    }
    ck.require(v->max_residual < 1e-8, "eta-Yamabe residual " + fmt(v->max_residual));
    ck.require(amax < 1e-9, "eta-Yamabe |a| = " + fmt(amax));
    // the eta x eta coefficient must be +-((q^2)' - 2rm')/2 with one sign at every point
    const bool consistent = std::abs(std::abs(rlo) - 1) < 1e-8 && std::abs(std::abs(rhi) - 1) < 1e-8 && rlo * rhi > 0;
    ck.require(consistent, "eta-Yamabe coefficient ratio in [" + fmt(rlo) + ", " + fmt(rhi) + "]");
    if (consistent) sign = rlo > 0 ? "+" : "-";
  }
  double inh_res = kInf, z1 = kInf;
  if (const auto* v = verdict(ck, "vbds", "generalized conharmonic curvature inheritance along d/dtheta")) {
    inh_res = v->max_residual;
    z1 = target_dev(*v, 0);
  }
  ck.require(inh_res < 1e-8, "inheritance along d/dtheta: residual " + fmt(inh_res));
  ck.require(z1 < 1e-7, "inheritance zeta1 vs 2cos(theta)/sin(theta)^2 deviates " + fmt(z1));
  if (const auto* v = verdict(ck, "vbds", "conharmonic curvature inheritance along d/dtheta on rm = q^2")) {
    double zmax = 0.0;
    for (const auto& c : v->coefficients)
      for (int i = 1; i < 4; ++i) zmax = std::max(zmax, std::abs(c[i]));
    ck.require(!v->points.empty(), "no rm = q^2 constraint points");
    ck.require(v->max_residual < 1e-8, "rm = q^2 inheritance residual " + fmt(v->max_residual));
    ck.require(zmax < 1e-8, "rm = q^2 max |zeta2..4| = " + fmt(zmax));
  }
  // non-gating comparisons: they must exist and carry an agreement flag
  for (const char* n : {"almost Ricci soliton along d/dr on its constraint surface",
                        "Q(T,R) decomposition at the calibrated Lambda"})
    if (const auto* v = verdict(ck, "vbds", n)) ck.require(v->agrees.has_value(), std::string(n) + ": no agreement record");
  emit(12, "soliton and inheritance audits", ck,
       "eta x eta sign " + sign + ", inheritance residual " + fmt(inh_res) + ", zeta1 deviation " + fmt(z1));
}

void criterion_determinism() {
  Check ck;
  RunConfig c;
  const std::string a = to_json(run(c), false), b = to_json(run(c), false);
  c.jobs = 4;
  const std::string p = to_json(run(c), false);
  ck.require(a == b, "repeated runs differ");
  ck.require(a == p, "parallel run differs from serial run");
  emit(13, "deterministic JSON", ck, std::to_string(a.size()) + " bytes");
}

}  // namespace

int main() {
  try {
    criterion_invariants();
    criterion_jets();
    criterion_fixtures();
    criterion_scalar_curvature();
    criterion_quasi_einstein();
    criterion_einstein_level();
    criterion_roter();
    criterion_pseudosymmetry();
    criterion_recurrence();
    criterion_compatibility();
    criterion_killing();
    criterion_solitons();
    criterion_determinism();
  } catch (const std::exception& e) {
    std::cout << "FAIL  acceptance run aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (13 - g_failures) << "/13 criteria pass\n";
  return g_failures == 0 ? 0 : 1;
}
