#pragma once

#include <Eigen/Core>
#include <vector>

namespace curvlab {

inline constexpr double kRankThreshold = 1e-8;
inline constexpr double kAbsoluteFloor = 1e-12;

struct LinearFit {
  Eigen::VectorXd coefficients;
  double residual = 0.0;  // ||target - A c|| / max(||target||, eps)
};

// Minimum-norm least squares via SVD. Basis columns are scaled to unit norm
// before the solve so the rank cutoff is independent of their magnitudes.
LinearFit linear_fit(const Eigen::VectorXd& target, const std::vector<Eigen::VectorXd>& basis,
                     double threshold = kRankThreshold);
LinearFit linear_fit(const Eigen::VectorXd& target, const Eigen::MatrixXd& basis,
                     double threshold = kRankThreshold);

int numerical_rank(const Eigen::MatrixXd& m, double threshold = kRankThreshold,
                   double floor = kAbsoluteFloor);

// Orthonormal basis (columns) of the numerical right nullspace.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double threshold = kRankThreshold,
                          double floor = kAbsoluteFloor);

}  // namespace curvlab
