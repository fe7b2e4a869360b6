#include "curvlab/spacetimes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace curvlab {
namespace {

Expr num(double v) { return Expr::constant(v); }

void require_time_only(const Expr& e, const char* what) {
  for (Coord c : {Coord::r, Coord::theta, Coord::phi})
    if (uses_coordinate(e, c))
      throw std::invalid_argument(std::string(what) + " may depend on t only");
}

const char* const kHelpers[] = {
    "r^4*lam + 6*r*m - 3*q^2",
    "r^4*lam - 3*r*m + 3*q^2",
    "r^4*lam + 6*r*m - 9*q^2",
    "3*r^2*q^2 - 4*r^4*lam*q^2 + 3*q^4 + 6*r^5*m*lam - 6*m*r*q^2",
    "r^4*lam - 12*r*m + 9*q^2",
    "3*r^3 + r^5*lam + 9*r*q^2",
    "3*r^2 - 26*r^4*lam + 3*q^2",
    "3*r^2 - r^4*lam + 3*q^2",
};

}  // namespace

MetricParams demo_params() {
  MetricParams p;
  p.lambda = 0.1;
  p.mass = parse_expr("1 + t/10");
  p.charge = parse_expr("1/2 + t/20");
  return p;
}

MetricSpec vbds_metric(double lambda, const Expr& mass, const Expr& charge) {
  require_time_only(mass, "mass");
  require_time_only(charge, "charge");
  const Expr r = Expr::coordinate(Coord::r);
  const Expr th = Expr::coordinate(Coord::theta);
  MetricSpec spec;
  spec.params = {lambda, mass, charge};
  spec.vbds_family = true;
  spec.preset = "vbds";
  for (auto& row : spec.grid) row.fill(num(0.0));
  spec.grid[0][0] = num(1.0) - num(2.0) * mass / r + pow(charge, 2) / pow(r, 2) -
                    num(lambda) * pow(r, 2) / num(3.0);
  spec.grid[0][1] = spec.grid[1][0] = num(-1.0);
  spec.grid[2][2] = -pow(r, 2);
  spec.grid[3][3] = -pow(r, 2) * pow(sin(th), 2);
  return spec;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"vbds", "vaidya_bonner", "vaidya", "schwarzschild",
                                                 "minkowski"};
  return names;
}

MetricSpec preset(std::string_view name, const PresetOverrides& o) {
  const MetricParams demo = demo_params();
  MetricSpec spec;
  if (name == "vbds") {
    spec = vbds_metric(o.lambda.value_or(demo.lambda), o.mass.value_or(demo.mass),
                       o.charge.value_or(demo.charge));
  } else if (name == "vaidya_bonner") {
    spec = vbds_metric(0.0, o.mass.value_or(demo.mass), o.charge.value_or(demo.charge));
  } else if (name == "vaidya") {
    spec = vbds_metric(0.0, o.mass.value_or(demo.mass), num(0.0));
  } else if (name == "schwarzschild") {
    const Expr m = o.mass.value_or(num(1.0));
    if (uses_coordinate(m, Coord::t)) throw std::invalid_argument("schwarzschild needs a constant mass");
    spec = vbds_metric(0.0, m, num(0.0));
  } else if (name == "minkowski") {
    spec = vbds_metric(0.0, num(0.0), num(0.0));
  } else {
    throw std::invalid_argument("unknown preset \"" + std::string(name) + "\"");
  }
  spec.preset = std::string(name);
  return spec;
}

ProfileValues profile_at(const MetricParams& params, const Point& p) {
  const Jet m = eval_jet(params.mass, p, 1);
  const Jet q = eval_jet(params.charge, p, 1);
  return {m.value(), m[1], q.value(), q[1], 2.0 * q.value() * q[1]};
}

Bindings closed_form_bindings(const MetricParams& params, const Point& p) {
  const ProfileValues v = profile_at(params, p);
  Bindings b;
  b["lam"] = num(params.lambda);
  b["m"] = params.mass;
  b["q"] = params.charge;
  b["mp"] = num(v.mp);
  b["qp"] = num(v.qp);
  b["q2p"] = num(v.q2p);
  for (int i = 0; i < 8; ++i) b["l" + std::to_string(i + 1)] = parse_expr(kHelpers[i], b);
  return b;
}

double closed_form_eval(const MetricParams& params, std::string_view text, const Point& p) {
  return evaluate(parse_expr(text, closed_form_bindings(params, p)), p);
}

const FixtureEntry& FixtureTable::find(std::string_view tensor, const std::vector<int>& indices) const {
  for (const auto& e : entries_)
    if (e.tensor == tensor && e.indices == indices) return e;
  std::string key(tensor);
  for (int i : indices) key += " " + std::to_string(i);
  throw std::out_of_range("no fixture entry " + key);
}

double fixture_eval(const FixtureTable& table, std::string_view tensor, const std::vector<int>& indices,
                    const Point& p) {
  return closed_form_eval(table.params(), table.find(tensor, indices).source, p);
}

namespace {

Point draw(std::mt19937_64& rng, const ChartDomain& domain) {
  Point p;
  for (int c = 0; c < kDim; ++c) {
    // explicit mapping keeps the stream identical across standard libraries
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    p[c] = domain.lo[c] + u * (domain.hi[c] - domain.lo[c]);
  }
  return p;
}

}  // namespace

std::vector<Point> sample_points(const ChartDomain& domain, int count, std::uint64_t seed) {
  return sample_points(domain, count, seed, {});
}

std::vector<Point> sample_points(const ChartDomain& domain, int count, std::uint64_t seed,
                                 const std::vector<PointFilter>& filters, std::vector<int>* dropped) {
  constexpr int kMaxStreak = 64;
  std::mt19937_64 rng(seed);
  std::vector<bool> active(filters.size(), true);
  std::vector<int> streak(filters.size(), 0);
  std::vector<Point> pts;
  pts.reserve(count);
  while (static_cast<int>(pts.size()) < count) {
    const Point p = draw(rng, domain);
    bool ok = true;
    for (std::size_t i = 0; i < filters.size() && ok; ++i) {
      if (!active[i] || filters[i](p)) continue;
      ok = false;
      if (++streak[i] >= kMaxStreak) {
        active[i] = false;
        if (dropped) dropped->push_back(static_cast<int>(i));
      }
    }
    if (!ok) continue;
    std::fill(streak.begin(), streak.end(), 0);
    pts.push_back(p);
  }
  return pts;
}

MetricSpec local_profile(const MetricSpec& base, const Point& p, double m0, double m1, double q0, double q1) {
  const Expr t0 = num(p[0]);
  const Expr dt = Expr::coordinate(Coord::t) - t0;
  MetricSpec spec = vbds_metric(base.params.lambda, num(m0) + num(m1) * dt, num(q0) + num(q1) * dt);
  spec.preset = base.preset;
  spec.domain = base.domain;
  return spec;
}

std::vector<SurfacePoint> ricci_soliton_surface(const MetricSpec& base, const std::vector<Point>& pts) {
  std::vector<SurfacePoint> out;
  for (const auto& p : pts) {
    const ProfileValues v = profile_at(base.params, p);
    const double r = p[1], q2 = v.q * v.q;
    const double mp = (6 * q2 - 2 * std::pow(r, 7) - 6 * r * v.m * q2 + 3 * std::pow(r, 3) * v.q2p) /
                      (6 * std::pow(r, 4));
    out.push_back({p, local_profile(base, p, v.m, mp, v.q, v.qp)});
  }
  return out;
}

std::vector<SurfacePoint> conformally_flat_surface(const MetricSpec& base, const std::vector<Point>& pts) {
  std::vector<SurfacePoint> out;
  for (const auto& p : pts) {
    const ProfileValues v = profile_at(base.params, p);
    const double rm = p[1] * v.m;
    if (rm <= 0.0) continue;
    out.push_back({p, local_profile(base, p, v.m, v.mp, std::sqrt(rm), v.qp)});
  }
  return out;
}

std::vector<SurfacePoint> eta_hypothesis_points(const MetricSpec& base, const std::vector<Point>& pts) {
  std::vector<SurfacePoint> out;
  for (const auto& p : pts) {
    const ProfileValues v = profile_at(base.params, p);
    const double r = p[1];
    if (v.q2p - 2 * r * v.mp > 1e-3) {
      out.push_back({p, base});
      continue;
    }
    const double slope = (v.q2p - 0.5) / (2 * r);  // makes (q^2)' - 2 r m' = 1/2
    out.push_back({p, local_profile(base, p, v.m, slope, v.q, v.qp)});
  }
  return out;
}

}  // namespace curvlab
