#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvlab/curvature.hpp"

namespace curvlab {

struct ChartDomain {
  Point lo{0.0, 1.5, 0.4, 0.0};
  Point hi{1.0, 5.0, 3.141592653589793 - 0.4, 2.0 * 3.141592653589793};
};

struct MetricParams {
  double lambda = 0.0;
  Expr mass = Expr::constant(0.0);    // m(t)
  Expr charge = Expr::constant(0.0);  // q(t)
};

struct MetricSpec {
  MetricGrid grid;
  MetricParams params;
  std::string preset;       // "inline" for metric files with explicit components
  bool vbds_family = false; // grid is the VBdS form built from params
  ChartDomain domain;
};

// Demo profile used whenever a preset parameter is not supplied.
MetricParams demo_params();

MetricSpec vbds_metric(double lambda, const Expr& mass, const Expr& charge);

struct PresetOverrides {
  std::optional<double> lambda;
  std::optional<Expr> mass;
  std::optional<Expr> charge;
};
MetricSpec preset(std::string_view name, const PresetOverrides& overrides = {});
const std::vector<std::string>& preset_names();

// m, m', q, q', (q^2)' at the time coordinate of p.
struct ProfileValues {
  double m, mp, q, qp, q2p;
};
ProfileValues profile_at(const MetricParams& params, const Point& p);

// Identifiers available to closed forms: lam, m, q, mp, qp, q2p and l1..l8.
Bindings closed_form_bindings(const MetricParams& params, const Point& p);
double closed_form_eval(const MetricParams& params, std::string_view text, const Point& p);

enum class Trust { required, audit };

struct FixtureEntry {
  std::string tensor;
  std::vector<int> indices;  // 1-based, as printed
  std::string source;
  Trust trust;
};

class FixtureTable {
 public:
  explicit FixtureTable(MetricParams params);
  const std::vector<FixtureEntry>& entries() const { return entries_; }
  const FixtureEntry& find(std::string_view tensor, const std::vector<int>& indices) const;
  const MetricParams& params() const { return params_; }

 private:
  MetricParams params_;
  std::vector<FixtureEntry> entries_;
};

double fixture_eval(const FixtureTable& table, std::string_view tensor, const std::vector<int>& indices,
                    const Point& p);

std::vector<Point> sample_points(const ChartDomain& domain, int count, std::uint64_t seed);

// Rejection sampling from the same stream. A filter that rejects 64 candidates
// in a row is switched off (its index lands in `dropped`), so degenerate
// parameter choices still produce points.
using PointFilter = std::function<bool(const Point&)>;
std::vector<Point> sample_points(const ChartDomain& domain, int count, std::uint64_t seed,
                                 const std::vector<PointFilter>& filters, std::vector<int>* dropped = nullptr);

struct SurfacePoint {
  Point x;
  MetricSpec spec;
};

// VBdS with m and q replaced by their linear Taylor profiles about t0 = p[0]
// (optionally with a different value or slope).
MetricSpec local_profile(const MetricSpec& base, const Point& p, double m0, double m1, double q0, double q1);

// 6q^2 - 2r^7 - 6rmq^2 - 6r^4 m' + 3r^3 (q^2)' = 0, solved for m'.
std::vector<SurfacePoint> ricci_soliton_surface(const MetricSpec& base, const std::vector<Point>& pts);
// r m = q^2, solved for the value of q at the point.
std::vector<SurfacePoint> conformally_flat_surface(const MetricSpec& base, const std::vector<Point>& pts);
// (q^2)' - 2 r m' > 0; points violating it get a local mass slope that restores it.
std::vector<SurfacePoint> eta_hypothesis_points(const MetricSpec& base, const std::vector<Point>& pts);

}  // namespace curvlab
