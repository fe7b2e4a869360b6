#include "curvlab/audit.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace curvlab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInvariantTol = 1e-10;
constexpr double kCompatTol = 1e-9;
constexpr double kKillingTol = 1e-12;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- reference claims -------------------------------------------------------

struct ClaimDef {
  const char* presets;  // space separated
  const char* name;
  Status status;
  std::vector<const char*> targets;
  double tolerance;
  bool gating;
};

const std::vector<ClaimDef>& claim_table() {
  using S = Status;
  static const std::vector<ClaimDef> table = {
      // curvature
      {"vbds vaidya_bonner vaidya schwarzschild minkowski", "scalar curvature", S::holds, {"4*lam"}, 1e-11, true},
      {"schwarzschild minkowski", "Ricci flat", S::holds, {}, 0, true},
      {"vbds", "Ricci flat", S::fails, {}, 0, false},
      {"minkowski", "flat", S::holds, {}, 0, true},
      {"schwarzschild", "divergence-free Riemann tensor", S::holds, {}, 0, true},

      // Ricci structure
      {"vbds", "2-quasi-Einstein", S::holds, {"(r^4*lam + q^2)/r^4", "2"}, 1e-8, true},
      {"vaidya_bonner", "2-quasi-Einstein", S::holds, {"-(q^2)/r^4", "2"}, 1e-8, false},
      {"vaidya", "Ricci simple", S::holds, {"0", "1"}, 1e-8, true},
      {"vbds", "Einstein", S::fails, {}, 0, false},
      {"vbds", "quasi-Einstein", S::fails, {}, 0, false},
      {"vbds", "Ein(3)", S::holds,
       {"3", "(q^2 - 3*r^4*lam)/r^4", "(3*r^4*lam + q^2)*(r^4*lam - q^2)/r^8",
        "-(((r^4*lam - q^2)^2)*(r^4*lam + q^2))/r^12"},
       1e-7, true},
      {"vaidya_bonner", "Ein(3)", S::holds, {"3", "-(q^2)/r^4", "-(q^4)/r^8", "q^6/r^12"}, 1e-7, true},
      {"vbds", "Ein(2)", S::fails, {}, 0, false},
      {"vbds vaidya_bonner", "generalized Roter type", S::holds, {}, 0, true},
      {"vbds", "Roter type", S::fails, {}, 0, true},
      {"vbds", "generalized Roter coefficients", S::holds,
       {"1", "1",
        "r^4*(9*r^17*lam^4*m - 9*r^13*lam^4*q^2 - 2*r^9*lam^2*(2*r^3*(12 + 7*lam) - 15*m)*q^4 - "
        "30*r^8*lam^2*q^6 + 3*r*(4*r^3*lam + 3*m)*q^8 - 9*q^10)/(12*(q^6 - r^8*q^2*lam^2)^2)",
        "r^4*(9*r^9*lam^2*m - 9*r^5*lam*(r^3*lam + 2*m)*q^2 - r*(4*r^3*(6 - lam) + 3*m)*q^4 - "
        "3*q^6)/(12*q^4*(r^4*lam + q^2)^2)",
        "r^8*(-18*r^17*lam^4*m + 18*r^13*lam^3*(r^3*lam + m)*q^2 + r^9*lam^2*(r^3*(48 + 7*lam) - "
        "30*m)*q^4 + 3*r^5*lam*(11*r^3*lam - 6*m)*q^6 + 9*r^4*lam*q^8 - 3*q^10)/(6*q^4*(q^2 - "
        "r^4*lam)^2*(r^4*lam + q^2)^3)",
        "r^13*(9*r^12*lam^3*m - 9*r^8*lam^2*(r^3*lam + m)*q^2 + 9*r^4*lam*(-2*r^3 + m)*q^4 + r^3*(6 - "
        "7*lam + 3*m)*q^6)/(6*q^4*(q^2 - r^4*lam)^2*(r^4*lam + q^2)^3)"},
       1e-7, false},

      // pseudosymmetry
      {"vbds", "semisymmetric (R.R = 0)", S::fails, {}, 0, false},
      {"vbds", "R.R = F Q(g,R)", S::fails, {}, 0, true},
      {"schwarzschild", "R.R = F Q(g,R)", S::holds, {"m/r^3"}, 1e-9, true},
      {"vbds", "R.R = F Q(S,R)", S::fails, {}, 0, true},
      {"vbds", "C.C = F Q(g,C)", S::holds, {"-(r*m - q^2)/r^4"}, 1e-8, true},
      {"vaidya_bonner", "C.C = F Q(g,C)", S::holds, {}, 0, false},
      {"vaidya", "C.C = F Q(g,C)", S::holds, {"m/r^3"}, 1e-8, false},
      {"vbds", "C.har = F Q(g,har)", S::holds, {"-(r*m - q^2)/r^4"}, 1e-8, false},
      {"vbds", "har.C = F Q(g,C)", S::holds, {"-(2*r^4*lam + 3*r*m - 3*q^2)/(3*r^4)"}, 1e-8, true},
      {"vbds", "har.har = F Q(g,har)", S::holds, {"-(2*r^4*lam + 3*r*m - 3*q^2)/(3*r^4)"}, 1e-8, false},
      {"vbds", "C.R = F Q(g,R)", S::fails, {}, 0, false},
      {"vbds", "R.R in span of Q(S,R), Q(g,C)", S::holds,
       {"1", "-(2*r^5*lam*m + 3*r^2*m^2 - 2*r^4*lam*q^2 - 6*r*m*q^2 + 2*q^4)/(3*r^4*(r*m - q^2))"}, 1e-7, true},
      {"vaidya_bonner", "R.R in span of Q(S,R), Q(g,C)", S::holds,
       {"1", "(3*r^2*m^2 - 6*r*m*q^2 + 2*q^4)/(3*r^4*(r*m - q^2))"}, 1e-7, false},
      {"vaidya", "R.R in span of Q(S,R), Q(g,C)", S::holds, {"1", "m/r^3"}, 1e-7, false},
      {"vbds", "R.C + C.R in span of Q(S,C), Q(g,C)", S::holds, {"1", "-2*(r^4*lam + 3*r*m - 3*q^2)/(3*r^4)"},
       1e-7, false},
      {"vaidya_bonner", "R.C + C.R in span of Q(S,C), Q(g,C)", S::holds, {"1", "2*(r*m - q^2)/r^4"}, 1e-7,
       false},
      {"vaidya", "R.C + C.R in span of Q(S,C), Q(g,C)", S::holds, {"1", "2*m/r^3"}, 1e-7, false},

      // compatibility
      {"vbds", "Ricci tensor compatible with R", S::holds, {}, 0, true},
      {"vbds", "Ricci tensor compatible with C", S::holds, {}, 0, true},
      {"vbds", "Ricci tensor compatible with P", S::holds, {}, 0, true},
      {"vbds", "Ricci tensor compatible with cir(R)", S::holds, {}, 0, true},
      {"vbds", "Ricci tensor compatible with har(R)", S::holds, {}, 0, true},
      {"vaidya_bonner", "Ricci tensor compatible with R", S::holds, {}, 0, false},
      {"vaidya_bonner", "Ricci tensor compatible with C", S::holds, {}, 0, false},
      {"vaidya_bonner", "Ricci tensor compatible with P", S::holds, {}, 0, false},
      {"vaidya_bonner", "Ricci tensor compatible with cir(R)", S::fails, {}, 0, false},
      {"vaidya_bonner", "Ricci tensor compatible with har(R)", S::fails, {}, 0, false},
      {"vaidya", "Ricci tensor compatible with R", S::holds, {}, 0, false},
      {"vaidya", "Ricci tensor compatible with C", S::holds, {}, 0, false},
      {"vbds schwarzschild", "R-compatible tensors of the displayed form", S::holds, {}, 0, false},
      {"vbds", "C-compatible tensors of the displayed form", S::holds, {}, 0, false},
      {"vbds", "cir(R)-compatible tensors of the displayed form", S::holds, {}, 0, false},
      {"vbds", "har(R)-compatible tensors of the displayed form", S::holds, {}, 0, false},
      {"vbds", "P-compatible tensors of the displayed form", S::holds, {}, 0, false},

      // recurrence, Venzi, weak symmetry
      {"vbds vaidya_bonner", "conformal 2-forms recurrent", S::holds,
       {"(r*mp - q2p)/(r*m - q^2)", "q^2/(r^2*m - r*q^2)", "0", "0"}, 1e-7, true},
      {"vaidya", "conformal 2-forms recurrent", S::holds,
       {"(r*mp - q2p)/(r*m - q^2)", "q^2/(r^2*m - r*q^2)", "0", "0"}, 1e-7, false},
      {"vaidya", "conformal 2-forms recurrent, reduced one-form", S::holds, {"m/mp", "0", "0", "0"}, 1e-7, false},
      {"vbds", "Venzi space for R", S::fails, {}, 0, false},
      {"vbds", "Venzi space for C", S::fails, {}, 0, false},
      {"vbds", "Venzi space for har(R)", S::fails, {}, 0, false},
      {"vbds", "Venzi space for cir(R)", S::fails, {}, 0, false},
      {"vbds", "Venzi space for P", S::fails, {}, 0, false},
      {"vbds", "weakly symmetric", S::fails, {}, 0, false},
      {"vbds", "Chaki pseudosymmetric", S::fails, {}, 0, false},
      {"vbds", "recurrent", S::fails, {}, 0, false},

      // symmetries and solitons
      {"vbds vaidya_bonner", "Killing along d/dphi", S::holds, {}, 0, true},
      {"vbds vaidya_bonner", "Killing along d/dt", S::fails, {}, 0, true},
      {"vbds vaidya_bonner", "Killing along d/dr", S::fails, {}, 0, true},
      {"vbds vaidya_bonner", "Killing along d/dtheta", S::fails, {}, 0, true},
      {"vbds vaidya_bonner", "almost eta-Yamabe soliton along d/dt", S::holds,
       {"0", "0", "(q2p - 2*r*mp)/2", "1"}, 1e-8, false},
      {"vbds", "almost eta-Yamabe soliton along d/dtheta", S::fails, {}, 0, false},
      {"vaidya_bonner", "almost eta-Yamabe soliton along d/dtheta", S::holds, {}, 0, false},
      {"vbds", "almost Ricci soliton along d/dr on its constraint surface", S::holds_on_constraint_surface,
       {"-(r^3)/(2*q^2)", "-(r^7 + q^4)/(2*r*q^4)"}, 1e-7, false},
      {"vaidya_bonner", "almost Ricci soliton along d/dr on its constraint surface", S::fails, {}, 0, false},
      {"vbds", "generalized conharmonic curvature inheritance along d/dtheta", S::holds,
       {"2*cos(theta)/sin(theta)^2",
        "-3*cos(theta)*(r*m - q^2)*(3*r*m - 5*q^2)^2/(16*r^4*q^4*sin(theta)^2)",
        "-3*cos(theta)*(r*m - q^2)*(3*r*m - 5*q^2)/(4*q^4*sin(theta)^2)",
        "-3*r^4*cos(theta)*(r*m - q^2)/(4*q^4*sin(theta)^2)"},
       1e-7, true},
      {"vaidya_bonner", "generalized conharmonic curvature inheritance along d/dtheta", S::fails, {}, 0, false},
      {"vbds", "conharmonic curvature inheritance along d/dtheta on rm = q^2", S::holds_on_constraint_surface,
       {"2*cos(theta)/sin(theta)^2", "0", "0", "0"}, 1e-8, true},

      // energy-momentum
      {"vbds vaidya_bonner", "Q(T,R) decomposition at Lambda = 0", S::holds, {"-2*lam", "1"}, 1e-8, false},
      {"vbds vaidya_bonner", "Q(T,R) decomposition at Lambda = lambda", S::holds, {"-2*lam", "1"}, 1e-8, false},
      {"vbds vaidya_bonner", "Q(T,R) decomposition at Lambda = 2 lambda", S::holds, {"-2*lam", "1"}, 1e-8, false},
      {"vbds vaidya_bonner", "Q(T,R) decomposition at the calibrated Lambda", S::holds, {"-2*lam", "1"}, 1e-8,
       false},
      {"vbds", "T_12 at the calibrated Lambda", S::holds, {"lam + q^2/r^4"}, 1e-8, false},
      {"vbds vaidya_bonner", "energy-momentum tensor compatible with R", S::holds, {}, 0, true},
      {"vbds vaidya_bonner", "energy-momentum tensor compatible with C", S::holds, {}, 0, true},
      {"vbds vaidya_bonner", "energy-momentum tensor compatible with P", S::holds, {}, 0, true},
      {"vbds vaidya_bonner", "energy-momentum tensor compatible with cir(R)", S::holds, {}, 0, true},
      {"vbds vaidya_bonner", "energy-momentum tensor compatible with har(R)", S::holds, {}, 0, true},

      // fixtures
      {"vbds vaidya_bonner vaidya schwarzschild minkowski", "required reference components", S::holds, {}, 0,
       true},
  };
  return table;
}

const ClaimDef* find_claim(const std::string& preset, const std::string& name) {
  for (const auto& c : claim_table()) {
    if (name != c.name) continue;
    std::istringstream in(c.presets);
    for (std::string p; in >> p;)
      if (p == preset) return &c;
  }
  return nullptr;
}

// ---- per-point evaluation -----------------------------------------------------

enum class JobKind { main, ricci_surface, flat_surface, eta_points };

struct Job {
  JobKind kind;
  int index;  // position in the main sample set
  Point x;
  MetricSpec spec;
};

struct FixtureSample {
  std::size_t entry;
  double engine, fixture;
};

struct JobResult {
  bool skipped = false;
  std::string warning;
  std::vector<StructureVerdict> verdicts;
  std::vector<FixtureSample> fixtures;
};

bool suite_on(const RunConfig& c, const char* name) {
  if (c.suites.empty()) return std::string(name) != "compare";
  return std::find(c.suites.begin(), c.suites.end(), name) != c.suites.end();
}

class Emitter {
 public:
  Emitter(const Job& job, double tol) : job_(job), tol_(tol) {
    if (job.spec.vbds_family) bindings_ = closed_form_bindings(job.spec.params, job.x);
  }

  StructureVerdict& add(const std::string& suite, const std::string& name, std::vector<std::string> coef_names,
                        std::vector<double> coefs, double residual, bool holds, bool degenerate = false,
                        bool invariant = false) {
    StructureVerdict v;
    v.name = name;
    v.suite = suite;
    v.status = holds ? Status::holds : Status::fails;
    v.constraint_surface = job_.kind != JobKind::main && job_.kind != JobKind::eta_points;
    v.coefficient_names = std::move(coef_names);
    v.points = {job_.index};
    v.coefficients = {std::move(coefs)};
    v.residuals = {residual};
    v.max_residual = residual;
    v.degenerate = degenerate;
    v.invariant = invariant;
    if (job_.spec.vbds_family) {
      if (const ClaimDef* c = find_claim(job_.spec.preset, name)) {
        v.claimed = c->status;
        v.gating = c->gating;
        v.target_tolerance = c->tolerance;
        for (const char* t : c->targets) v.targets.emplace_back(t);
        std::vector<double> tv;
        for (const char* t : c->targets) tv.push_back(evaluate(parse_expr(t, bindings_), job_.x));
        v.target_values = {std::move(tv)};
      }
    }
    out_.push_back(std::move(v));
    return out_.back();
  }

  // Convenience for "value below a floor" style checks.
  StructureVerdict& measure(const std::string& suite, const std::string& name, double value, double limit,
                            bool invariant = false) {
    return add(suite, name, {}, {}, value, value < limit, false, invariant);
  }

  double tol() const { return tol_; }
  std::vector<StructureVerdict>& out() { return out_; }

 private:
  const Job& job_;
  double tol_;
  Bindings bindings_;
  std::vector<StructureVerdict> out_;
};

std::vector<double> vec4(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

double max_over(const ValueTensor& x, auto&& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(f(x.unflat(i))));
  return m;
}

struct Values {
  ValueTensor g, gi, s, s2, r, r13, c, c13, har, har13, cir, p;
};

Values values_of(const CurvaturePack& pk) {
  Values v;
  v.g = values(pk.metric.g);
  v.gi = values(pk.metric.g_inv);
  v.s = values(pk.s);
  v.s2 = values(pk.s2);
  v.r = values(pk.r04);
  v.r13 = values(pk.r13);
  v.c = values(pk.c);
  v.c13 = raise_first(v.c, v.g, v.gi);
  v.har = values(pk.har);
  v.har13 = raise_first(v.har, v.g, v.gi);
  v.cir = values(pk.cir);
  v.p = values(pk.p);
  return v;
}

void curvature_suite(Emitter& em, const CurvaturePack& pk, const Values& v) {
  const std::string su = "curvature";
  const ValueTensor& r = v.r;
  const double sr = std::max(1.0, max_abs(r));
  auto rel = [&](double x, double scale) { return x / std::max(1.0, scale); };

  em.measure(su, "Riemann antisymmetry in the first pair",
             rel(max_over(r, [&](const Indices& i) { return r(i[0], i[1], i[2], i[3]) + r(i[1], i[0], i[2], i[3]); }),
                 sr),
             kInvariantTol, true);
  em.measure(su, "Riemann antisymmetry in the second pair",
             rel(max_over(r, [&](const Indices& i) { return r(i[0], i[1], i[2], i[3]) + r(i[0], i[1], i[3], i[2]); }),
                 sr),
             kInvariantTol, true);
  em.measure(su, "Riemann pair symmetry",
             rel(max_over(r, [&](const Indices& i) { return r(i[0], i[1], i[2], i[3]) - r(i[2], i[3], i[0], i[1]); }),
                 sr),
             kInvariantTol, true);
  em.measure(su, "first Bianchi identity",
             rel(max_over(r,
                          [&](const Indices& i) {
                            return r(i[0], i[1], i[2], i[3]) + r(i[0], i[2], i[3], i[1]) + r(i[0], i[3], i[1], i[2]);
                          }),
                 sr),
             kInvariantTol, true);
  const ValueTensor& nr = pk.nabla_r;
  em.measure(su, "second Bianchi identity",
             rel(max_over(nr,
                          [&](const Indices& i) {
                            return nr(i[0], i[1], i[2], i[3], i[4]) + nr(i[0], i[1], i[3], i[4], i[2]) +
                                   nr(i[0], i[1], i[4], i[2], i[3]);
                          }),
                 max_abs(nr)),
             kInvariantTol, true);
  const ValueTensor ng = values(covariant_derivative(pk.metric.g, pk.gamma));
  em.measure(su, "metric compatibility of the connection", rel(max_abs(ng), max_abs(values(pk.gamma))),
             kInvariantTol, true);
  em.measure(su, "R.g = 0", rel(max_abs(curv_action(v.r13, v.g)), sr * max_abs(v.g)), kInvariantTol, true);

  double trace = 0.0;
  for (int f = 0; f < kDim; ++f)
    for (int s = 0; s < kDim; ++s) {
      double a = 0, b = 0, c = 0;
      for (int x = 0; x < kDim; ++x)
        for (int y = 0; y < kDim; ++y) {
          a += v.gi(x, y) * v.c(x, f, s, y);  // first with last
          b += v.gi(x, y) * v.c(x, f, y, s);  // first with third
          c += v.gi(x, y) * v.c(f, x, s, y);  // second with last
        }
      trace = std::max({trace, std::abs(a), std::abs(b), std::abs(c)});
    }
  em.measure(su, "Weyl tensor trace-free", rel(trace, max_abs(v.c) * max_abs(v.gi)), kInvariantTol, true);

  const ValueTensor gg = kulkarni_nomizu(v.g, v.g);
  const double kappa = pk.kappa.value();
  em.measure(su, "har(R) = C - (kappa/12) g^g", rel(max_abs(v.har - (v.c - gg * (kappa / 12.0))), max_abs(v.har)),
             kInvariantTol, true);
  em.measure(su, "cir(R) = R - (kappa/24) g^g", rel(max_abs(v.cir - (r - gg * (kappa / 24.0))), max_abs(v.cir)),
             kInvariantTol, true);

  double kappa_r = 0.0;
  for (int e = 0; e < kDim; ++e)
    for (int f = 0; f < kDim; ++f)
      for (int s = 0; s < kDim; ++s)
        for (int t = 0; t < kDim; ++t) kappa_r += v.gi(e, t) * v.gi(f, s) * r(e, f, s, t);
  em.measure(su, "scalar curvature from S matches the double contraction of R", rel(std::abs(kappa_r - kappa), kappa),
             kInvariantTol, true);

  const ValueTensor qgr = tachibana_q(v.g, r);
  em.measure(su, "Q(g,R) antisymmetric in its last pair",
             rel(max_over(qgr,
                          [&](const Indices& i) {
                            return qgr(i[0], i[1], i[2], i[3], i[4], i[5]) + qgr(i[0], i[1], i[2], i[3], i[5], i[4]);
                          }),
                 max_abs(qgr)),
             kInvariantTol, true);

  // g^{ed} nabla_d R_efst = nabla_t S_fs - nabla_s S_ft with S contracted on the outer slots
  const ValueTensor div = divergence_r(pk);
  const ValueTensor ns = values(covariant_derivative(pk.s, pk.gamma));
  em.measure(su, "contracted second Bianchi identity",
             rel(max_over(div, [&](const Indices& i) { return div(i[0], i[1], i[2]) - (ns(i[0], i[1], i[2]) - ns(i[0], i[2], i[1])); }),
                 max_abs(ns)),
             kInvariantTol, true);

  em.add(su, "scalar curvature", {"kappa"}, {kappa}, 0.0, true);
  em.add(su, "Ricci flat", {"max|S|"}, {max_abs(v.s)}, max_abs(v.s), max_abs(v.s) < kInvariantTol);
  em.add(su, "flat", {"max|R|"}, {max_abs(r)}, max_abs(r), max_abs(r) < 1e-12);
  em.add(su, "divergence-free Riemann tensor", {"max|div R|"}, {max_abs(div)}, max_abs(div),
         max_abs(div) < kInvariantTol);
}

// Compatible-form family: arbitrary H11, H12, H22, H33, H34 = H43, H44 and
// H21 = H12 + kappa H22.
const char* const kFamilyKappa[] = {
    "-3*r*(2*r*mp - q2p)/(2*l2)",                   // R
    "0",                                            // C
    "r*(2*r*mp - q2p)/(2*(r*m - q^2))",             // cir
    "0",                                            // har
    "3*r*(2*r*mp - q2p)/(2*(3*r*m - 2*q^2))",       // P
};

double family_residual(const ValueTensor& w, const Eigen::Matrix4d& gi, double kappa) {
  const double params[2][6] = {{0.7, -1.3, 0.4, 1.1, -0.6, 0.9}, {-0.2, 0.5, 1.7, -0.8, 0.3, -1.4}};
  double worst = 0.0;
  for (const auto& p : params) {
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    h(0, 0) = p[0];
    h(0, 1) = p[1];
    h(1, 0) = p[1] + kappa * p[2];
    h(1, 1) = p[2];
    h(2, 2) = p[3];
    h(2, 3) = h(3, 2) = p[4];
    h(3, 3) = p[5];
    worst = std::max(worst, compatibility(h, w, gi));
  }
  return worst;
}

void classify_suite(Emitter& em, const Job& job, const CurvaturePack& pk, const Values& v) {
  const std::string su = "classify";
  const double tol = em.tol();

  // Ricci structure
  const QuasiEinstein qe = quasi_einstein_rank(v.s, v.g);
  em.add(su, "quasi-Einstein rank", {"phi", "rank"}, {qe.phi, double(qe.rank)}, 0.0, true);
  em.add(su, "Einstein", {"phi", "rank"}, {qe.phi, double(qe.rank)}, 0.0, qe.rank == 0);
  em.add(su, "quasi-Einstein", {"phi", "rank"}, {qe.phi, double(qe.rank)}, 0.0, qe.rank == 1);
  em.add(su, "2-quasi-Einstein", {"phi", "rank"}, {qe.phi, double(qe.rank)}, 0.0, qe.rank == 2);
  em.add(su, "Ricci simple", {"phi", "rank"}, {qe.phi, double(qe.rank)}, 0.0,
         qe.rank == 1 && std::abs(qe.phi) < kAbsoluteFloor);

  const EinsteinLevel el = einstein_level(v.s, values(pk.j), v.g);
  std::vector<double> ec = {double(el.k), kNaN, kNaN, kNaN};
  if (el.coefficients.size() <= 3) {
    const std::size_t off = 4 - el.coefficients.size();
    for (std::size_t i = 0; i < el.coefficients.size(); ++i) ec[off + i] = el.coefficients[i];
  }
  const std::vector<std::string> en = {"k", "c2", "c1", "c0"};
  em.add(su, "Einstein level", en, ec, el.residual, el.k > 0 && el.residual < tol, el.ricci_flat)
      .note = el.ricci_flat ? "Ricci flat" : "";
  em.add(su, "Ein(3)", en, ec, el.residual, el.k == 3 && el.residual < tol, el.ricci_flat);
  em.add(su, "Ein(2)", en, ec, el.residual, el.k == 2 && el.residual < tol, el.ricci_flat);

  const std::vector<ValueTensor> prods = roter_products(v.g, v.s, v.s2);
  const LinearFit gen = roter_fit(v.r, prods, true);
  const LinearFit rot = roter_fit(v.r, prods, false);
  const bool flat = max_abs(v.r) < kAbsoluteFloor;
  const std::vector<std::string> rn = {"R11", "R12", "R22", "R13", "R23", "R33"};
  std::vector<double> gc(gen.coefficients.data(), gen.coefficients.data() + 6);
  em.add(su, "generalized Roter type", rn, gc, gen.residual, gen.residual < tol, flat);
  em.add(su, "generalized Roter coefficients", rn, gc, gen.residual, gen.residual < tol, flat);
  em.add(su, "Roter type", {"R11", "R12", "R22"}, {rot.coefficients(0), rot.coefficients(1), rot.coefficients(2)},
         rot.residual, rot.residual < tol, flat);

  // pseudosymmetry
  const ValueTensor rr = curv_action(v.r13, v.r);
  const ValueTensor cc = curv_action(v.c13, v.c);
  const ValueTensor ch = curv_action(v.c13, v.har);
  const ValueTensor hc = curv_action(v.har13, v.c);
  const ValueTensor hh = curv_action(v.har13, v.har);
  const ValueTensor cr = curv_action(v.c13, v.r);
  const ValueTensor rc = curv_action(v.r13, v.c);
  const ValueTensor qgr = tachibana_q(v.g, v.r), qsr = tachibana_q(v.s, v.r), qgc = tachibana_q(v.g, v.c),
                    qgh = tachibana_q(v.g, v.har), qsc = tachibana_q(v.s, v.c);

  const double rr_scale = std::max(1.0, max_abs(v.r) * max_abs(v.r));
  em.add(su, "semisymmetric (R.R = 0)", {"max|R.R|"}, {max_abs(rr)}, max_abs(rr) / rr_scale,
         max_abs(rr) / rr_scale < tol);
  auto pseudo = [&](const char* name, const ValueTensor& a, const ValueTensor& b) {
    const Proportionality p = proportionality_factor(a, b, tol);
    em.add(su, name, {"F"}, {p.factor.value_or(kNaN)}, p.residual, p.factor.has_value(), p.degenerate);
  };
  pseudo("R.R = F Q(g,R)", rr, qgr);
  pseudo("R.R = F Q(S,R)", rr, qsr);
  pseudo("C.C = F Q(g,C)", cc, qgc);
  pseudo("C.har = F Q(g,har)", ch, qgh);
  pseudo("har.C = F Q(g,C)", hc, qgc);
  pseudo("har.har = F Q(g,har)", hh, qgh);
  pseudo("C.R = F Q(g,R)", cr, qgr);
  auto span2 = [&](const char* name, const ValueTensor& t, const ValueTensor& b1, const ValueTensor& b2) {
    const bool deg = max_abs(t) < kAbsoluteFloor;
    const LinearFit f = linear_fit(flatten(t), std::vector<Eigen::VectorXd>{flatten(b1), flatten(b2)});
    em.add(su, name, {"c1", "c2"}, {f.coefficients(0), f.coefficients(1)}, f.residual, f.residual < tol, deg);
  };
  span2("R.R in span of Q(S,R), Q(g,C)", rr, qsr, qgc);
  span2("R.C + C.R in span of Q(S,C), Q(g,C)", rc + cr, qsc, qgc);

  // compatibility
  const Eigen::Matrix4d gi = as_matrix(v.gi), sm = as_matrix(v.s), gm = as_matrix(v.g);
  const std::pair<const char*, const ValueTensor*> curvs[] = {
      {"R", &v.r}, {"C", &v.c}, {"cir(R)", &v.cir}, {"har(R)", &v.har}, {"P", &v.p}};
  for (const auto& [label, w] : curvs) {
    const double res = compatibility(sm, *w, gi);
    em.add(su, std::string("Ricci tensor compatible with ") + label, {}, {}, res, res < kCompatTol,
           max_abs(*w) < kAbsoluteFloor);
  }
  {
    const double res = compatibility(gm, v.r, gi);
    em.add(su, "metric compatible with R", {}, {}, res, res < 1e-11, flat, true);
  }
  const bool family_ok = job.spec.vbds_family;
  for (int i = 0; i < 5; ++i) {
    const auto& [label, w] = curvs[i];
    const std::vector<Eigen::Matrix4d> space = compatible_space(*w, gi);
    double self = 0.0;
    for (const auto& h : space) self = std::max(self, compatibility(h, *w, gi));
    double fam = kNaN;
    if (family_ok) {
      try {
        fam = family_residual(*w, gi, closed_form_eval(job.spec.params, kFamilyKappa[i], job.x));
      } catch (const DomainError&) {
        fam = kNaN;  // the correction term is singular at this point
      }
    }
    const std::string name = std::string(label) + "-compatible tensors of the displayed form";
    em.add(su, name, {"dimension", "family residual", "basis residual"}, {double(space.size()), fam, self},
           std::isnan(fam) ? self : std::max(fam, self), !std::isnan(fam) && fam < kCompatTol && self < kCompatTol,
           max_abs(*w) < kAbsoluteFloor);
  }

  // recurrence
  const OneForm conf = form_recurrence(v.c, pk.nabla_c);
  em.add(su, "conformal 2-forms recurrent", {"Pi_t", "Pi_r", "Pi_theta", "Pi_phi"}, vec4(conf.pi), conf.residual,
         conf.residual < tol, conf.degenerate);
  if (job.spec.preset == "vaidya")
    em.add(su, "conformal 2-forms recurrent, reduced one-form", {"Pi_t", "Pi_r", "Pi_theta", "Pi_phi"},
           vec4(conf.pi), conf.residual, conf.residual < tol, conf.degenerate);
  const OneForm riem = form_recurrence(v.r, pk.nabla_r);
  em.add(su, "Riemann 2-forms recurrent", {"Pi_t", "Pi_r", "Pi_theta", "Pi_phi"}, vec4(riem.pi), riem.residual,
         riem.residual < tol, riem.degenerate);
  const OneForm ric = one_form_recurrence_solve(pk.s, pk.gamma);
  em.add(su, "Ricci 1-forms recurrent", {"Pi_t", "Pi_r", "Pi_theta", "Pi_phi"}, vec4(ric.pi), ric.residual,
         ric.residual < tol, ric.degenerate);

  for (const auto& [label, w] : curvs) {
    const Eigen::MatrixXd ns = venzi_space(*w);
    em.add(su, std::string("Venzi space for ") + label, {"dimension"}, {double(ns.cols())}, 0.0, ns.cols() > 0,
           max_abs(*w) < kAbsoluteFloor);
  }

  const RicciDerivative rd = ricci_derivative_checks(pk);
  em.add(su, "Codazzi type Ricci tensor", {}, {}, rd.codazzi, rd.codazzi < tol);
  em.add(su, "cyclic parallel Ricci tensor", {}, {}, rd.cyclic, rd.cyclic < tol);

  const WeakSymmetry ws = weak_symmetry_solve(v.r, pk.nabla_r);
  std::vector<double> wc = vec4(ws.general.pi);
  for (double x : vec4(ws.general.x)) wc.push_back(x);
  for (double x : vec4(ws.general.y)) wc.push_back(x);
  em.add(su, "weakly symmetric",
         {"Pi_t", "Pi_r", "Pi_theta", "Pi_phi", "X_t", "X_r", "X_theta", "X_phi", "Y_t", "Y_r", "Y_theta", "Y_phi"},
         wc, ws.general.residual, ws.general.residual < tol, ws.degenerate);
  em.add(su, "Chaki pseudosymmetric", {"A_t", "A_r", "A_theta", "A_phi"}, vec4(ws.chaki.x), ws.chaki.residual,
         ws.chaki.residual < tol, ws.degenerate);
  em.add(su, "recurrent", {"Pi_t", "Pi_r", "Pi_theta", "Pi_phi"}, vec4(ws.recurrent.pi), ws.recurrent.residual,
         ws.recurrent.residual < tol, ws.degenerate);
}

const char* const kDirName[] = {"d/dt", "d/dr", "d/dtheta", "d/dphi"};

void soliton_suite(Emitter& em, const Job& job, const CurvaturePack& pk, const Values& v) {
  const std::string su = "solitons";
  const double tol = em.tol();
  std::array<ValueTensor, kDim> lie;
  for (int c = 0; c < kDim; ++c) lie[c] = values(lie_derivative(pk.metric.g, c));
  Eigen::Vector4d eta = Eigen::Vector4d::Zero();
  eta(0) = 1.0 / job.x[1];

  if (job.kind == JobKind::main) {
    for (int c = 0; c < kDim; ++c) {
      const double n = max_abs(lie[c]);
      em.add(su, std::string("Killing along ") + kDirName[c], {"max|Lg|"}, {n}, n, n < kKillingTol);
    }
    for (int c : {1, 3}) {
      const ScalarFit f = almost_ricci_fit(lie[c], v.s, v.g);
      em.add(su, std::string("almost Ricci soliton along ") + kDirName[c], {"delta"}, f.coefficients, f.residual,
             f.residual < tol, f.degenerate);
    }
    for (int c : {1, 2}) {
      const ScalarFit f = eta_yamabe_fit(lie[c], v.s, v.g, eta);
      em.add(su, std::string("almost eta-Yamabe soliton along ") + kDirName[c], {"a", "b", "c"}, f.coefficients,
             f.residual, f.residual < tol, f.degenerate);
    }
    const ValueTensor lhar = values(lie_derivative(pk.har, 2));
    const InheritanceFit inh = inheritance_fit(lhar, v.har, v.g, v.s);
    em.add(su, "generalized conharmonic curvature inheritance along d/dtheta", {"zeta1", "zeta2", "zeta3", "zeta4"},
           vec4(inh.zeta), inh.residual, inh.residual < tol, inh.degenerate);
    em.add(su, "conharmonic curvature inheritance along d/dtheta", {"zeta"}, {inh.pure_zeta}, inh.pure_residual,
           inh.pure_residual < tol, inh.degenerate);
    const ValueTensor lhar_phi = values(lie_derivative(pk.har, 3));
    const InheritanceFit inp = inheritance_fit(lhar_phi, v.har, v.g, v.s);
    em.add(su, "generalized conharmonic curvature inheritance along d/dphi", {"zeta1", "zeta2", "zeta3", "zeta4"},
           vec4(inp.zeta), inp.residual, inp.degenerate || inp.residual < tol, inp.degenerate);
  }
  if (job.kind == JobKind::eta_points) {
    const ScalarFit f = eta_yamabe_fit(lie[0], v.s, v.g, eta);
    const ProfileValues pv = profile_at(job.spec.params, job.x);
    const double half = 0.5 * (pv.q2p - 2.0 * job.x[1] * pv.mp);
    std::vector<double> c = f.coefficients;
    c.push_back(half != 0.0 ? c[2] / half : kNaN);
    em.add(su, "almost eta-Yamabe soliton along d/dt", {"a", "b", "c", "c / (((q^2)' - 2 r m')/2)"}, c, f.residual,
           f.residual < tol, f.degenerate);
  }
  if (job.kind == JobKind::ricci_surface) {
    const ScalarFit f = ricci_soliton_fit(lie[1], v.s, v.g);
    em.add(su, "almost Ricci soliton along d/dr on its constraint surface", {"a", "b"}, f.coefficients, f.residual,
           f.residual < tol, f.degenerate);
  }
  if (job.kind == JobKind::flat_surface) {
    const ValueTensor lhar = values(lie_derivative(pk.har, 2));
    const InheritanceFit inh = inheritance_fit(lhar, v.har, v.g, v.s);
    std::vector<double> z = vec4(inh.zeta);
    em.add(su, "conharmonic curvature inheritance along d/dtheta on rm = q^2", {"zeta1", "zeta2", "zeta3", "zeta4"},
           z, inh.residual, inh.residual < tol && std::abs(z[1]) < tol && std::abs(z[2]) < tol && std::abs(z[3]) < tol,
           inh.degenerate);
  }
}

void energy_suite(Emitter& em, const Job& job, const CurvaturePack& pk, const Values& v) {
  const std::string su = "energy-momentum";
  const double tol = em.tol();
  const double lam = job.spec.params.lambda;
  const ValueTensor qgr = tachibana_q(v.g, v.r), qsr = tachibana_q(v.s, v.r);
  const std::vector<Eigen::VectorXd> basis = {flatten(qgr), flatten(qsr)};
  auto fit_at = [&](double cosmological) {
    const ValueTensor t = values(energy_momentum(pk, cosmological));
    return linear_fit(flatten(tachibana_q(t, v.r)), basis);
  };
  const bool deg = max_abs(v.r) < kAbsoluteFloor;
  const std::pair<const char*, double> grid[] = {
      {"Q(T,R) decomposition at Lambda = 0", 0.0},
      {"Q(T,R) decomposition at Lambda = lambda", lam},
      {"Q(T,R) decomposition at Lambda = 2 lambda", 2.0 * lam}};
  double alpha0 = kNaN;
  for (const auto& [name, cosmo] : grid) {
    const LinearFit f = fit_at(cosmo);
    if (cosmo == 0.0) alpha0 = f.coefficients(0);
    em.add(su, name, {"alpha", "beta"}, {f.coefficients(0), f.coefficients(1)}, f.residual, f.residual < tol, deg);
  }
  // alpha is affine in Lambda with unit slope; pin it to the claimed -2 lambda
  const double calibrated = deg ? 0.0 : -2.0 * lam - alpha0;
  const LinearFit fc = fit_at(calibrated);
  em.add(su, "Q(T,R) decomposition at the calibrated Lambda", {"alpha", "beta", "Lambda"},
         {fc.coefficients(0), fc.coefficients(1), calibrated}, fc.residual, fc.residual < tol, deg);
  const ValueTensor t = values(energy_momentum(pk, calibrated));
  em.add(su, "T_12 at the calibrated Lambda", {"T12"}, {t(0, 1)}, 0.0, true);
  const Eigen::Matrix4d tm = as_matrix(t), gi = as_matrix(v.gi);
  const std::pair<const char*, const ValueTensor*> curvs[] = {
      {"R", &v.r}, {"C", &v.c}, {"cir(R)", &v.cir}, {"har(R)", &v.har}, {"P", &v.p}};
  for (const auto& [label, w] : curvs) {
    const double res = compatibility(tm, *w, gi);
    em.add(su, std::string("energy-momentum tensor compatible with ") + label, {}, {}, res, res < kCompatTol,
           max_abs(*w) < kAbsoluteFloor);
  }
}

// Engine value matching a fixture entry.
double engine_component(const std::string& name, const std::vector<int>& ix, const CurvaturePack& pk,
                        const Values& v, std::unordered_map<std::string, ValueTensor>& cache) {
  auto at = [&](const ValueTensor& x) {
    Indices i{};
    for (std::size_t k = 0; k < ix.size(); ++k) i[k] = ix[k] - 1;
    return x.at(i);
  };
  auto cached = [&](const std::string& key, auto&& make) -> const ValueTensor& {
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make()).first;
    return it->second;
  };
  if (name == "kappa") return pk.kappa.value();
  if (name == "g") return at(v.g);
  if (name == "Gamma") return at(cached("Gamma", [&] { return values(pk.gamma); }));
  if (name == "R") return at(v.r);
  if (name == "S") return at(v.s);
  if (name == "S2") return at(v.s2);
  if (name == "C") return at(v.c);
  if (name == "DC") return at(pk.nabla_c);
  if (name == "cir") return at(v.cir);
  if (name == "har") return at(v.har);
  if (name == "P") return at(v.p);
  if (name.size() == 2 && name[0] == 'W') {
    if (!cache.count(name)) {
      const std::vector<ValueTensor> prods = roter_products(v.g, v.s, v.s2);
      for (int k = 0; k < 6; ++k) cache["W" + std::to_string(k + 1)] = prods[k];
    }
    return at(cache.at(name));
  }
  if (name == "RR") return at(cached(name, [&] { return curv_action(v.r13, v.r); }));
  if (name == "CC") return at(cached(name, [&] { return curv_action(v.c13, v.c); }));
  if (name == "RC") return at(cached(name, [&] { return curv_action(v.r13, v.c); }));
  if (name == "CR") return at(cached(name, [&] { return curv_action(v.c13, v.r); }));
  if (name == "QgR") return at(cached(name, [&] { return tachibana_q(v.g, v.r); }));
  if (name == "QSR") return at(cached(name, [&] { return tachibana_q(v.s, v.r); }));
  if (name == "QgC") return at(cached(name, [&] { return tachibana_q(v.g, v.c); }));
  if (name == "QSC") return at(cached(name, [&] { return tachibana_q(v.s, v.c); }));
  if (name == "Lt") return at(cached(name, [&] { return values(lie_derivative(pk.metric.g, 0)); }));
  if (name == "Lr") return at(cached(name, [&] { return values(lie_derivative(pk.metric.g, 1)); }));
  if (name == "Lhar") return at(cached(name, [&] { return values(lie_derivative(pk.har, 2)); }));
  // T and Q(T,R) use the Lambda that reproduces the claimed Q(T,R) decomposition (Lambda = 0)
  if (name == "T") return at(cached(name, [&] { return values(energy_momentum(pk, 0.0)); }));
  if (name == "QTR")
    return at(cached(name, [&] { return tachibana_q(values(energy_momentum(pk, 0.0)), v.r); }));
  throw std::out_of_range("no engine tensor for fixture " + name);
}

JobResult evaluate_job(const Job& job, const RunConfig& cfg, const FixtureTable* fixtures) {
  JobResult out;
  try {
    const CurvaturePack pk = build_pack(metric_at_point(job.spec.grid, job.x));
    const Values v = values_of(pk);
    Emitter em(job, cfg.tol);
    if (job.kind == JobKind::main) {
      if (suite_on(cfg, "curvature")) curvature_suite(em, pk, v);
      if (suite_on(cfg, "classify")) classify_suite(em, job, pk, v);
      if (suite_on(cfg, "energy-momentum")) energy_suite(em, job, pk, v);
    }
    if (suite_on(cfg, "solitons")) soliton_suite(em, job, pk, v);
    if (fixtures && job.kind == JobKind::main && suite_on(cfg, "fixtures")) {
      std::unordered_map<std::string, ValueTensor> cache;
      const Bindings b = closed_form_bindings(fixtures->params(), job.x);
      double worst = 0.0;
      const auto& entries = fixtures->entries();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const double e = engine_component(entries[i].tensor, entries[i].indices, pk, v, cache);
        const double f = evaluate(parse_expr(entries[i].source, b), job.x);
        out.fixtures.push_back({i, e, f});
        if (entries[i].trust == Trust::required)
          worst = std::max(worst, std::abs(e - f) / std::max(1.0, std::abs(f)));
      }
      em.add("fixtures", "required reference components", {}, {}, worst, worst < 1e-8);
    }
    out.verdicts = std::move(em.out());
  } catch (const DomainError& e) {
    out.skipped = true;
    out.warning = e.what();
  } catch (const std::exception& e) {
    out.skipped = true;
    out.warning = e.what();
  }
  return out;
}

// ---- aggregation --------------------------------------------------------------

double deviation(double c, double t) {
  if (std::isnan(c) && std::isnan(t)) return 0.0;
  if (!std::isfinite(c) || !std::isfinite(t)) return std::numeric_limits<double>::infinity();
  return std::abs(c - t) / std::max(1.0, std::abs(t));
}

void merge_into(std::vector<StructureVerdict>& all, std::unordered_map<std::string, std::size_t>& where,
                StructureVerdict&& v) {
  auto it = where.find(v.name);
  if (it == where.end()) {
    where.emplace(v.name, all.size());
    all.push_back(std::move(v));
    return;
  }
  StructureVerdict& a = all[it->second];
  if (v.status == Status::fails) a.status = Status::fails;
  a.constraint_surface = a.constraint_surface || v.constraint_surface;
  a.degenerate = a.degenerate && v.degenerate;
  a.points.push_back(v.points.front());
  a.coefficients.push_back(std::move(v.coefficients.front()));
  a.residuals.push_back(v.residuals.front());
  a.max_residual = std::max(a.max_residual, v.max_residual);
  if (!v.target_values.empty()) a.target_values.push_back(std::move(v.target_values.front()));
  if (a.note.empty()) a.note = v.note;
}

void finalize(StructureVerdict& v) {
  if (v.status == Status::holds && v.constraint_surface) v.status = Status::holds_on_constraint_surface;
  if (v.targets.empty()) {
    if (v.claimed) v.agrees = *v.claimed == v.status;
    return;
  }
  const std::size_t n = v.targets.size();
  v.max_target_deviation.assign(n, 0.0);
  for (std::size_t p = 0; p < v.coefficients.size(); ++p)
    for (std::size_t i = 0; i < n; ++i) {
      const double c = i < v.coefficients[p].size() ? v.coefficients[p][i] : kNaN;
      v.max_target_deviation[i] = std::max(v.max_target_deviation[i], deviation(c, v.target_values[p][i]));
    }
  bool match = true;
  for (double d : v.max_target_deviation) match = match && d <= v.target_tolerance;
  v.agrees = v.claimed && *v.claimed == v.status && match;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"curvature", "classify", "solitons", "energy-momentum",
                                                 "fixtures", "compare"};
  return names;
}

const StructureVerdict* AuditReport::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

bool AuditReport::invariants_pass() const {
  for (const auto& v : verdicts)
    if (v.invariant && v.status == Status::fails) return false;
  return true;
}

// ---- metric files -----------------------------------------------------------

MetricSpec parse_metric_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<double> lambda;
  std::optional<Expr> mass, charge;
  std::array<std::array<std::optional<Expr>, kDim>, kDim> comps;
  bool any_g = false;
  auto fail = [&](std::size_t col, const std::string& msg) -> std::runtime_error {
    return std::runtime_error("line " + std::to_string(lineno) + ", column " + std::to_string(col + 1) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw fail(first, "expected '='");
    std::string lhs = line.substr(first, eq - first);
    while (!lhs.empty() && (lhs.back() == ' ' || lhs.back() == '\t')) lhs.pop_back();
    const std::string rhs = line.substr(eq + 1);
    auto parse_rhs = [&]() {
      try {
        return parse_expr(rhs);
      } catch (const ParseError& e) {
        throw fail(eq + 1 + e.offset(), e.message() + (e.token().empty() ? "" : " \"" + e.token() + "\""));
      }
    };
    if (lhs.rfind("param", 0) == 0) {
      std::string key = lhs.substr(5);
      key.erase(0, key.find_first_not_of(" \t"));
      if (key == "lambda" || key == "λ" || key == "lam") {
        const Expr e = parse_rhs();
        for (Coord c : {Coord::t, Coord::r, Coord::theta, Coord::phi})
          if (uses_coordinate(e, c)) throw fail(eq + 1, "lambda must be a number");
        lambda = evaluate(e, Point{});
      } else if (key == "m") {
        mass = parse_rhs();
      } else if (key == "q") {
        charge = parse_rhs();
      } else {
        throw fail(first, "unknown parameter \"" + key + "\"");
      }
      continue;
    }
    if (lhs.size() == 4 && lhs[0] == 'g' && lhs[1] == '_' && lhs[2] >= '1' && lhs[2] <= '4' && lhs[3] >= '1' &&
        lhs[3] <= '4') {
      const int i = lhs[2] - '1', j = lhs[3] - '1';
      const Expr e = parse_rhs();
      for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
        if (comps[a][b] && !structurally_equal(*comps[a][b], e))
          throw fail(first, "conflicting values for g_" + std::to_string(a + 1) + std::to_string(b + 1));
        comps[a][b] = e;
      }
      any_g = true;
      continue;
    }
    throw fail(first, "expected \"g_ij = <expr>\" or \"param <name> = <value>\"");
  }
  const MetricParams demo = demo_params();
  if (!any_g) {
    MetricSpec spec = vbds_metric(lambda.value_or(demo.lambda), mass.value_or(demo.mass), charge.value_or(demo.charge));
    spec.preset = "vbds";
    return spec;
  }
  MetricSpec spec;
  spec.preset = "inline";
  spec.params = {lambda.value_or(0.0), mass.value_or(Expr::constant(0.0)), charge.value_or(Expr::constant(0.0))};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) spec.grid[i][j] = comps[i][j].value_or(Expr::constant(0.0));
  return spec;
}

MetricSpec load_metric_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open metric file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_metric_text(ss.str());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

MetricSpec resolve_metric(const RunConfig& c) {
  if (!c.metric_file) return preset(c.preset, c.overrides);
  MetricSpec spec = load_metric_file(*c.metric_file);
  if (spec.vbds_family && (c.overrides.lambda || c.overrides.mass || c.overrides.charge)) {
    spec = vbds_metric(c.overrides.lambda.value_or(spec.params.lambda), c.overrides.mass.value_or(spec.params.mass),
                       c.overrides.charge.value_or(spec.params.charge));
    spec.preset = "vbds";
  }
  return spec;
}

// ---- run ----------------------------------------------------------------------

AuditReport run(const RunConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("sample count must be at least 1");
  for (const auto& s : config.suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw std::invalid_argument("unknown suite \"" + s + "\"");
  const auto t0 = Clock::now();
  AuditReport rep;
  rep.config = config;
  const MetricSpec spec = resolve_metric(config);
  rep.metric_label = config.metric_file ? *config.metric_file : spec.preset;

  // Sample points; the VBdS hypotheses rm != q^2 and (q^2)' != 2rm' are enforced where attainable.
  std::vector<PointFilter> filters;
  if (spec.vbds_family) {
    filters.push_back([&](const Point& p) {
      const ProfileValues v = profile_at(spec.params, p);
      return std::abs(p[1] * v.m - v.q * v.q) >= 1e-3;
    });
    filters.push_back([&](const Point& p) {
      const ProfileValues v = profile_at(spec.params, p);
      return std::abs(v.q2p - 2.0 * p[1] * v.mp) >= 1e-3;
    });
  }
  std::vector<int> dropped;
  rep.points = sample_points(spec.domain, config.samples, config.seed, filters, &dropped);
  for (int d : dropped)
    rep.warnings.push_back(d == 0 ? "rm - q^2 vanishes on the chart; sampling without that restriction"
                                  : "(q^2)' - 2rm' vanishes on the chart; sampling without that restriction");

  bool charged = false;
  if (spec.vbds_family)
    for (const auto& p : rep.points) charged = charged || std::abs(profile_at(spec.params, p).q) > 1e-12;

  std::vector<Job> jobs;
  for (int i = 0; i < config.samples; ++i) jobs.push_back({JobKind::main, i, rep.points[i], spec});
  if (charged && suite_on(config, "solitons")) {
    const auto rs = ricci_soliton_surface(spec, rep.points);
    const auto cf = conformally_flat_surface(spec, rep.points);
    const auto ep = eta_hypothesis_points(spec, rep.points);
    for (int i = 0; i < config.samples; ++i) jobs.push_back({JobKind::ricci_surface, i, rs[i].x, rs[i].spec});
    // conformally_flat_surface drops points with rm <= 0, so match by position
    for (const auto& sp : cf) {
      const int idx = int(std::find(rep.points.begin(), rep.points.end(), sp.x) - rep.points.begin());
      jobs.push_back({JobKind::flat_surface, idx, sp.x, sp.spec});
    }
    for (int i = 0; i < config.samples; ++i) jobs.push_back({JobKind::eta_points, i, ep[i].x, ep[i].spec});
  }
  rep.timings["sampling"] = seconds_since(t0);

  std::optional<FixtureTable> table;
  if (spec.vbds_family) table.emplace(spec.params);

  const auto t1 = Clock::now();
  std::vector<JobResult> results(jobs.size());
  const int width = std::max(1, std::min<int>(config.jobs, int(jobs.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
      results[i] = evaluate_job(jobs[i], config, table ? &*table : nullptr);
  };
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < width; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  rep.timings["evaluation"] = seconds_since(t1);

  // Deterministic merge in job order.
  std::unordered_map<std::string, std::size_t> where;
  std::vector<FixtureRow> rows;
  if (table)
    for (const auto& e : table->entries()) rows.push_back({e.tensor, e.indices, e.source, e.trust});
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    JobResult& r = results[j];
    if (r.skipped) {
      if (jobs[j].kind == JobKind::main) ++rep.skipped_points;
      rep.warnings.push_back("point " + std::to_string(jobs[j].index) + " skipped: " + r.warning);
      continue;
    }
    for (auto& v : r.verdicts) merge_into(rep.verdicts, where, std::move(v));
    for (const auto& f : r.fixtures) {
      FixtureRow& row = rows[f.entry];
      const double d = deviation(f.engine, f.fixture);
      if (row.worst_point < 0 || d > row.max_deviation) {
        row.max_deviation = d;
        row.worst_point = jobs[j].index;
        row.engine_value = f.engine;
        row.fixture_value = f.fixture;
      }
    }
  }
  for (auto& row : rows) row.passed = row.worst_point >= 0 && row.max_deviation < 1e-8;
  if (suite_on(config, "fixtures")) rep.fixtures = std::move(rows);

  for (auto& v : rep.verdicts) finalize(v);

  for (const auto& f : rep.fixtures) {
    if (f.passed) continue;
    std::string key = f.tensor;
    for (int i : f.indices) key += std::to_string(i);
    rep.discrepancies.push_back({"fixture", key,
                                 "engine " + format_double(f.engine_value) + " vs closed form " +
                                     format_double(f.fixture_value) + " at point " + std::to_string(f.worst_point),
                                 f.max_deviation, f.trust == Trust::required});
  }
  for (const auto& v : rep.verdicts) {
    if (!v.agrees || *v.agrees) continue;
    std::string detail = std::string("claimed ") + status_name(*v.claimed) + ", measured " + status_name(v.status);
    double worst = 0.0;
    for (std::size_t i = 0; i < v.max_target_deviation.size(); ++i) {
      if (v.max_target_deviation[i] <= v.target_tolerance) continue;
      worst = std::max(worst, v.max_target_deviation[i]);
      detail += "; " + v.coefficient_names[i] + " deviates from " + v.targets[i] + " by " +
                format_double(v.max_target_deviation[i]);
    }
    rep.discrepancies.push_back({"claim", v.name, detail, worst, v.gating});
  }
  rep.timings["total"] = seconds_since(t0);
  return rep;
}

int exit_code(const AuditReport& r) {
  if (!r.invariants_pass()) return 2;
  if (r.skipped_points * 5 > std::max(1, r.config.samples)) return 2;
  return 0;
}

// ---- compare ----------------------------------------------------------------

namespace {

std::string summarize(const StructureVerdict& v) {
  std::string s = status_name(v.status);
  if (v.degenerate) s += " (degenerate)";
  for (std::size_t i = 0; i < v.coefficient_names.size(); ++i) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& c : v.coefficients) {
      lo = std::min(lo, c[i]);
      hi = std::max(hi, c[i]);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) continue;
    // residual-like columns and roundoff carry no structural information
    if (v.coefficient_names[i].find("residual") != std::string::npos) continue;
    if (hi - lo > 1e-9 * std::max(1.0, std::abs(hi))) continue;
    const double x = std::abs(hi) < 1e-9 ? 0.0 : hi;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    s += ", " + v.coefficient_names[i] + " = " + buf;
  }
  return s;
}

}  // namespace

CompareReport compare(const RunConfig& a, const RunConfig& b) {
  CompareReport out{run(a), run(b), {}};
  std::vector<std::string> names;
  for (const auto& v : out.a.verdicts) names.push_back(v.name);
  for (const auto& v : out.b.verdicts)
    if (!out.a.find(v.name)) names.push_back(v.name);
  for (const auto& n : names) {
    const StructureVerdict* va = out.a.find(n);
    const StructureVerdict* vb = out.b.find(n);
    CompareRow row{n, va ? summarize(*va) : "not evaluated", vb ? summarize(*vb) : "not evaluated", false};
    row.differs = row.a != row.b;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace curvlab
