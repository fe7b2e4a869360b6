#include "curvlab/linalg.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace curvlab {

LinearFit linear_fit(const Eigen::VectorXd& target, const std::vector<Eigen::VectorXd>& basis,
                     double threshold) {
  if (basis.empty()) throw std::invalid_argument("linear_fit needs a nonempty basis");
  Eigen::MatrixXd a(target.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != target.size()) throw std::invalid_argument("length mismatch");
    a.col(static_cast<Eigen::Index>(j)) = basis[j];
  }
  return linear_fit(target, a, threshold);
}

LinearFit linear_fit(const Eigen::VectorXd& target, const Eigen::MatrixXd& basis, double threshold) {
  if (basis.cols() == 0) throw std::invalid_argument("linear_fit needs a nonempty basis");
  if (basis.rows() != target.size()) throw std::invalid_argument("length mismatch");
  Eigen::VectorXd scale = basis.colwise().norm().transpose();
  Eigen::MatrixXd a = basis;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (scale(j) > 0.0)
      a.col(j) /= scale(j);
    else
      scale(j) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Eigen::VectorXd uty = svd.matrixU().transpose() * target;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    uty(i) = (smax > 0.0 && s(i) > threshold * smax) ? uty(i) / s(i) : 0.0;
  LinearFit fit;
  fit.coefficients = (svd.matrixV() * uty).cwiseQuotient(scale);
  const double tn = target.norm();
  const double rn = (target - basis * fit.coefficients).norm();
  fit.residual = rn / std::max(tn, 1e-300);
  if (tn == 0.0) fit.residual = 0.0;
  return fit;
}

int numerical_rank(const Eigen::MatrixXd& m, double threshold, double floor) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s(0) < floor) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold * s(0)) ++rank;
  return rank;
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double threshold, double floor) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() && s(0) >= floor)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > threshold * s(0)) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace curvlab
