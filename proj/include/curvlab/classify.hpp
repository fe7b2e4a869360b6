#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/curvature.hpp"
#include "curvlab/linalg.hpp"

namespace curvlab {

enum class Status { holds, fails, holds_on_constraint_surface };
const char* status_name(Status s);

// One detected (or refuted) structure aggregated over sample points.
struct StructureVerdict {
  std::string name;
  std::string suite;
  Status status = Status::holds;
  bool constraint_surface = false;
  std::vector<std::string> coefficient_names;
  std::vector<int> points;                       // sample indices
  std::vector<std::vector<double>> coefficients; // per point, NaN when undefined
  std::vector<double> residuals;                 // per point
  double max_residual = 0.0;
  bool degenerate = false;  // every point fell below the magnitude floor

  // Comparison against a closed form or a claimed status.
  std::optional<Status> claimed;
  std::vector<std::string> targets;              // one per coefficient, may be empty
  std::vector<std::vector<double>> target_values;
  std::vector<double> max_target_deviation;      // |c - t| / max(1, |t|), per coefficient
  double target_tolerance = 1e-8;
  std::optional<bool> agrees;
  bool invariant = false;   // engine invariant; failures drive the exit code
  bool gating = false;      // part of the required-claim set
  std::string note;
};

// ---- proportionality / pseudosymmetry ----

struct Proportionality {
  std::optional<double> factor;
  double residual = 0.0;
  bool degenerate = false;
};
Proportionality proportionality_factor(const ValueTensor& a, const ValueTensor& b, double tol = 1e-8,
                                       double floor = kAbsoluteFloor);

// ---- Ricci structure ----

struct QuasiEinstein {
  double phi = 0.0;
  int rank = 0;
};
QuasiEinstein quasi_einstein_rank(const ValueTensor& s, const ValueTensor& g, double threshold = kRankThreshold);

struct EinsteinLevel {
  bool ricci_flat = false;
  int k = 0;                        // 0 when no dependency up to S^4
  std::vector<double> coefficients; // c_{k-1}, ..., c_0 of S^k + ... + c_0 g
  double residual = 0.0;
};
EinsteinLevel einstein_level(const ValueTensor& s, const ValueTensor& j, const ValueTensor& g,
                             double threshold = kRankThreshold);

// W^1..W^6: g^g, g^S, S^S, g^S2, S^S2, S2^S2
std::vector<ValueTensor> roter_products(const ValueTensor& g, const ValueTensor& s, const ValueTensor& s2);
LinearFit roter_fit(const ValueTensor& r, const std::vector<ValueTensor>& products, bool generalized);

// ---- compatibility, recurrence, Venzi ----

// || cyclic_{e,f,s} H^d_e W_{fstd} || / ||W|| with H^d_e = g^{dk} H_{ek}
double compatibility(const Eigen::Matrix4d& h, const ValueTensor& w, const Eigen::Matrix4d& g_inv);
std::vector<Eigen::Matrix4d> compatible_space(const ValueTensor& w, const Eigen::Matrix4d& g_inv,
                                              double threshold = kRankThreshold);

struct OneForm {
  Eigen::Vector4d pi = Eigen::Vector4d::Zero();
  double residual = 0.0;
  bool degenerate = false;  // left side vanished
};
// cyclic_{e,f,s} (nabla_e W_{fstd} - Pi_e W_{fstd}) = 0; nabla_w has the derivative last.
OneForm form_recurrence(const ValueTensor& w, const ValueTensor& nabla_w);
OneForm form_recurrence_solve(const JetTensor& w, const JetTensor& gamma);
// nabla_e H_{fs} - nabla_f H_{es} = Pi_e H_{fs} - Pi_f H_{es}
OneForm one_form_recurrence_solve(const JetTensor& h, const JetTensor& gamma);

Eigen::MatrixXd venzi_space(const ValueTensor& w, double threshold = kRankThreshold);

struct RicciDerivative {
  double codazzi = 0.0;
  double cyclic = 0.0;
};
RicciDerivative ricci_derivative_checks(const CurvaturePack& pack);

struct WeakSymmetryFit {
  Eigen::Vector4d pi = Eigen::Vector4d::Zero(), x = Eigen::Vector4d::Zero(), y = Eigen::Vector4d::Zero();
  double residual = 0.0;
};
struct WeakSymmetry {
  WeakSymmetryFit general, chaki, recurrent;
  bool degenerate = false;
};
// nabla_d W_{efst} = Pi_d W_{efst} + X_e W_{dfst} + X_f W_{edst} + Y_s W_{efdt} + Y_t W_{efsd}
WeakSymmetry weak_symmetry_solve(const ValueTensor& w, const ValueTensor& nabla_w);

// ---- solitons, inheritance ----

struct ScalarFit {
  std::vector<double> coefficients;
  double residual = 0.0;
  bool degenerate = false;
};
// ½£g + S - delta g = 0: coefficients {delta}
ScalarFit almost_ricci_fit(const ValueTensor& lie_g, const ValueTensor& s, const ValueTensor& g);
// ½£g + a S + b g = 0: coefficients {a, b}
ScalarFit ricci_soliton_fit(const ValueTensor& lie_g, const ValueTensor& s, const ValueTensor& g);
// ½£g + a S + b g + c eta⊗eta = 0: coefficients {a, b, c}
ScalarFit eta_yamabe_fit(const ValueTensor& lie_g, const ValueTensor& s, const ValueTensor& g,
                         const Eigen::Vector4d& eta);

struct InheritanceFit {
  Eigen::Vector4d zeta = Eigen::Vector4d::Zero();
  double residual = 0.0;       // against {W, g^g, g^S, S^S}
  double pure_residual = 0.0;  // against {W} alone
  double pure_zeta = 0.0;
  bool degenerate = false;
};
InheritanceFit inheritance_fit(const ValueTensor& lie_w, const ValueTensor& w, const ValueTensor& g,
                               const ValueTensor& s);

Eigen::Matrix4d as_matrix(const ValueTensor& x);
ValueTensor as_tensor(const Eigen::Matrix4d& m);

}  // namespace curvlab
