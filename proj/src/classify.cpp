#include "curvlab/classify.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace curvlab {
namespace {

double safe_ratio(double num, double den, double floor = kAbsoluteFloor) {
  return den < floor ? 0.0 : num / den;
}

Eigen::VectorXd vec(const ValueTensor& x) { return flatten(x); }

// cyclic sum over the first three slots of a rank-5 tensor given as a callback
template <typename F>
Eigen::VectorXd cyclic5(F&& x) {
  Eigen::VectorXd out(1024);
  for (int id = 0; id < 1024; ++id) {
    const int e = id >> 8 & 3, f = id >> 6 & 3, s = id >> 4 & 3, t = id >> 2 & 3, d = id & 3;
    out(id) = x(e, f, s, t, d) + x(f, s, e, t, d) + x(s, e, f, t, d);
  }
  return out;
}

Eigen::MatrixXd form_columns(const ValueTensor& w) {
  Eigen::MatrixXd a(1024, 4);
  for (int k = 0; k < kDim; ++k)
    a.col(k) = cyclic5([&](int e, int f, int s, int t, int d) { return e == k ? w(f, s, t, d) : 0.0; });
  return a;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::holds:
      return "holds";
    case Status::fails:
      return "fails";
    case Status::holds_on_constraint_surface:
      return "holds-on-constraint-surface";
  }
  return "?";
}

Eigen::Matrix4d as_matrix(const ValueTensor& x) {
  Eigen::Matrix4d m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m(i, j) = x(i, j);
  return m;
}

ValueTensor as_tensor(const Eigen::Matrix4d& m) {
  ValueTensor x = ValueTensor::covariant(2, 0.0);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) x(i, j) = m(i, j);
  return x;
}

Proportionality proportionality_factor(const ValueTensor& a, const ValueTensor& b, double tol, double floor) {
  a.check_shape(b);
  const double na = max_abs(a), nb = max_abs(b);
  Proportionality out;
  if (nb < floor) {
    if (na < floor) {
      out.factor = 0.0;
      out.degenerate = true;
    } else {
      out.residual = 1.0;
    }
    return out;
  }
  const Eigen::VectorXd va = vec(a), vb = vec(b);
  const double f = va.dot(vb) / vb.squaredNorm();
  out.residual = na < floor ? 0.0 : (va - f * vb).norm() / va.norm();
  if (out.residual < tol) out.factor = f;
  return out;
}

QuasiEinstein quasi_einstein_rank(const ValueTensor& s, const ValueTensor& g, double threshold) {
  const Eigen::Matrix4d sm = as_matrix(s), gm = as_matrix(g);
  const Eigen::Matrix4d j = gm.inverse() * sm;
  Eigen::EigenSolver<Eigen::Matrix4d> es(j, false);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<double> candidates = {0.0};
  for (int i = 0; i < kDim; ++i)
    if (std::abs(es.eigenvalues()(i).imag()) <= 1e-6 * scale) candidates.push_back(es.eigenvalues()(i).real());
  QuasiEinstein best{0.0, kDim + 1};
  for (double phi : candidates) {
    const int rank = numerical_rank(sm - phi * gm, threshold);
    if (rank < best.rank || (rank == best.rank && std::abs(phi) < std::abs(best.phi))) best = {phi, rank};
  }
  return best;
}

EinsteinLevel einstein_level(const ValueTensor& s, const ValueTensor& j, const ValueTensor& g, double threshold) {
  EinsteinLevel out;
  const Eigen::Matrix4d sm = as_matrix(s), jm = as_matrix(j);
  if (sm.cwiseAbs().maxCoeff() < kAbsoluteFloor) {
    out.ricci_flat = true;
    return out;
  }
  std::vector<Eigen::VectorXd> powers;
  Eigen::Matrix4d p = as_matrix(g);
  powers.push_back(Eigen::Map<const Eigen::VectorXd>(p.data(), 16));
  p = sm;
  for (int k = 1; k <= 4; ++k) {
    powers.push_back(Eigen::Map<const Eigen::VectorXd>(p.data(), 16));
    Eigen::MatrixXd cols(16, k + 1);
    bool zero_column = false;
    for (int i = 0; i <= k; ++i) {
      const double n = powers[i].norm();
      if (n < kAbsoluteFloor) zero_column = true;
      cols.col(i) = n > 0 ? Eigen::VectorXd(powers[i] / n) : powers[i];
    }
    if (zero_column || numerical_rank(cols, threshold) < k + 1) {
      const std::vector<Eigen::VectorXd> lower(powers.begin(), powers.begin() + k);
      const LinearFit fit = linear_fit(powers[k], lower, threshold);
      out.k = k;
      out.residual = fit.residual;
      for (int i = k - 1; i >= 0; --i) out.coefficients.push_back(-fit.coefficients(i));
      return out;
    }
    p = p * jm;
  }
  return out;
}

std::vector<ValueTensor> roter_products(const ValueTensor& g, const ValueTensor& s, const ValueTensor& s2) {
  return {kulkarni_nomizu(g, g),  kulkarni_nomizu(g, s),  kulkarni_nomizu(s, s),
          kulkarni_nomizu(g, s2), kulkarni_nomizu(s, s2), kulkarni_nomizu(s2, s2)};
}

LinearFit roter_fit(const ValueTensor& r, const std::vector<ValueTensor>& products, bool generalized) {
  // products at roundoff level (S ~ 0 on Ricci-flat metrics) would be rescaled into
  // enormous coefficients; zero columns get coefficient 0 instead
  const double floor = kAbsoluteFloor * std::max(1.0, max_abs(products[0]));
  std::vector<Eigen::VectorXd> basis;
  for (std::size_t i = 0; i < (generalized ? 6u : 3u); ++i) {
    basis.push_back(vec(products[i]));
    if (max_abs(products[i]) < floor) basis.back().setZero();
  }
  return linear_fit(vec(r), basis);
}

namespace {

Eigen::VectorXd compat_vector(const Eigen::Matrix4d& h, const ValueTensor& w, const Eigen::Matrix4d& g_inv) {
  // H^d_e = g^{dk} H_{ek}
  const Eigen::Matrix4d hu = h * g_inv.transpose();  // hu(e, d)
  ValueTensor x = ValueTensor::covariant(4, 0.0);
  for (int e = 0; e < kDim; ++e)
    for (int f = 0; f < kDim; ++f)
      for (int s = 0; s < kDim; ++s)
        for (int t = 0; t < kDim; ++t) {
          double acc = 0.0;
          for (int d = 0; d < kDim; ++d) acc += hu(e, d) * w(f, s, t, d);
          x(e, f, s, t) = acc;
        }
  Eigen::VectorXd out(256);
  for (int e = 0; e < kDim; ++e)
    for (int f = 0; f < kDim; ++f)
      for (int s = 0; s < kDim; ++s)
        for (int t = 0; t < kDim; ++t)
          out(((e * 4 + f) * 4 + s) * 4 + t) = x(e, f, s, t) + x(f, s, e, t) + x(s, e, f, t);
  return out;
}

}  // namespace

double compatibility(const Eigen::Matrix4d& h, const ValueTensor& w, const Eigen::Matrix4d& g_inv) {
  return safe_ratio(compat_vector(h, w, g_inv).norm(), norm(w));
}

std::vector<Eigen::Matrix4d> compatible_space(const ValueTensor& w, const Eigen::Matrix4d& g_inv,
                                              double threshold) {
  Eigen::MatrixXd a(256, 16);
  for (int e = 0; e < kDim; ++e)
    for (int k = 0; k < kDim; ++k) {
      Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
      h(e, k) = 1.0;
      a.col(e * 4 + k) = compat_vector(h, w, g_inv);
    }
  const Eigen::MatrixXd ns = nullspace(a, threshold);
  std::vector<Eigen::Matrix4d> out;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    Eigen::Matrix4d h;
    for (int e = 0; e < kDim; ++e)
      for (int k = 0; k < kDim; ++k) h(e, k) = ns(e * 4 + k, c);
    out.push_back(h);
  }
  return out;
}

OneForm form_recurrence(const ValueTensor& w, const ValueTensor& nabla_w) {
  const Eigen::VectorXd b =
      cyclic5([&](int e, int f, int s, int t, int d) { return nabla_w(f, s, t, d, e); });
  OneForm out;
  if (b.cwiseAbs().maxCoeff() < kAbsoluteFloor) {
    out.degenerate = true;
    return out;
  }
  const LinearFit fit = linear_fit(b, form_columns(w));
  out.pi = fit.coefficients;
  out.residual = fit.residual;
  return out;
}

OneForm form_recurrence_solve(const JetTensor& w, const JetTensor& gamma) {
  return form_recurrence(values(w), values(covariant_derivative(w, gamma)));
}

OneForm one_form_recurrence_solve(const JetTensor& h, const JetTensor& gamma) {
  const ValueTensor nh = values(covariant_derivative(h, gamma));
  const ValueTensor hv = values(h);
  Eigen::VectorXd lhs(64);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(64, 4);
  for (int e = 0; e < kDim; ++e)
    for (int f = 0; f < kDim; ++f)
      for (int s = 0; s < kDim; ++s) {
        const int row = (e * 4 + f) * 4 + s;
        lhs(row) = nh(f, s, e) - nh(e, s, f);
        a(row, e) += hv(f, s);
        a(row, f) -= hv(e, s);
      }
  OneForm out;
  if (lhs.cwiseAbs().maxCoeff() < kAbsoluteFloor) {
    out.degenerate = true;
    return out;
  }
  const LinearFit fit = linear_fit(lhs, a);
  out.pi = fit.coefficients;
  out.residual = fit.residual;
  return out;
}

Eigen::MatrixXd venzi_space(const ValueTensor& w, double threshold) { return nullspace(form_columns(w), threshold); }

RicciDerivative ricci_derivative_checks(const CurvaturePack& pack) {
  const ValueTensor ns = values(covariant_derivative(pack.s, pack.gamma));  // ns(f,s,e) = nabla_e S_fs
  double cod = 0.0, cyc = 0.0;
  for (int e = 0; e < kDim; ++e)
    for (int f = 0; f < kDim; ++f)
      for (int s = 0; s < kDim; ++s) {
        cod += std::pow(ns(f, s, e) - ns(e, s, f), 2);
        cyc += std::pow(ns(f, s, e) + ns(s, e, f) + ns(e, f, s), 2);
      }
  const double scale = norm(ns);
  if (max_abs(ns) < kAbsoluteFloor) return {};
  return {std::sqrt(cod) / scale, std::sqrt(cyc) / scale};
}

WeakSymmetry weak_symmetry_solve(const ValueTensor& w, const ValueTensor& nabla_w) {
  Eigen::VectorXd b(1024);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(1024, 12);
  for (int id = 0; id < 1024; ++id) {
    const int e = id >> 8 & 3, f = id >> 6 & 3, s = id >> 4 & 3, t = id >> 2 & 3, d = id & 3;
    b(id) = nabla_w(e, f, s, t, d);
    a(id, d) += w(e, f, s, t);
    a(id, 4 + e) += w(d, f, s, t);
    a(id, 4 + f) += w(e, d, s, t);
    a(id, 8 + s) += w(e, f, d, t);
    a(id, 8 + t) += w(e, f, s, d);
  }
  WeakSymmetry out;
  if (b.cwiseAbs().maxCoeff() < kAbsoluteFloor) {
    out.degenerate = true;
    return out;
  }
  const LinearFit gen = linear_fit(b, a);
  out.general = {gen.coefficients.segment<4>(0), gen.coefficients.segment<4>(4), gen.coefficients.segment<4>(8),
                 gen.residual};
  const Eigen::MatrixXd ca = 2.0 * a.leftCols(4) + a.middleCols(4, 4) + a.rightCols(4);
  const LinearFit chaki = linear_fit(b, ca);
  const Eigen::Vector4d av = chaki.coefficients;
  out.chaki = {2.0 * av, av, av, chaki.residual};
  const LinearFit rec = linear_fit(b, Eigen::MatrixXd(a.leftCols(4)));
  out.recurrent = {rec.coefficients, Eigen::Vector4d::Zero(), Eigen::Vector4d::Zero(), rec.residual};
  return out;
}

namespace {

ScalarFit fit_against(const Eigen::VectorXd& target, const std::vector<Eigen::VectorXd>& basis) {
  ScalarFit out;
  if (target.cwiseAbs().maxCoeff() < kAbsoluteFloor) {
    out.coefficients.assign(basis.size(), 0.0);
    out.degenerate = true;
    return out;
  }
  const LinearFit fit = linear_fit(target, basis);
  out.coefficients.assign(fit.coefficients.data(), fit.coefficients.data() + fit.coefficients.size());
  out.residual = fit.residual;
  return out;
}

}  // namespace

ScalarFit almost_ricci_fit(const ValueTensor& lie_g, const ValueTensor& s, const ValueTensor& g) {
  const Eigen::VectorXd target = 0.5 * vec(lie_g) + vec(s);
  return fit_against(target, {vec(g)});
}

ScalarFit ricci_soliton_fit(const ValueTensor& lie_g, const ValueTensor& s, const ValueTensor& g) {
  return fit_against(-0.5 * vec(lie_g), {vec(s), vec(g)});
}

ScalarFit eta_yamabe_fit(const ValueTensor& lie_g, const ValueTensor& s, const ValueTensor& g,
                         const Eigen::Vector4d& eta) {
  const Eigen::Matrix4d ee = eta * eta.transpose();
  return fit_against(-0.5 * vec(lie_g), {vec(s), vec(g), vec(as_tensor(ee))});
}

InheritanceFit inheritance_fit(const ValueTensor& lie_w, const ValueTensor& w, const ValueTensor& g,
                               const ValueTensor& s) {
  InheritanceFit out;
  const Eigen::VectorXd target = vec(lie_w);
  if (target.cwiseAbs().maxCoeff() < kAbsoluteFloor) {
    out.degenerate = true;
    return out;
  }
  const LinearFit fit = linear_fit(target, {vec(w), vec(kulkarni_nomizu(g, g)), vec(kulkarni_nomizu(g, s)),
                                            vec(kulkarni_nomizu(s, s))});
  out.zeta = fit.coefficients;
  out.residual = fit.residual;
  const LinearFit pure = linear_fit(target, std::vector<Eigen::VectorXd>{vec(w)});
  out.pure_zeta = pure.coefficients(0);
  out.pure_residual = pure.residual;
  return out;
}

}  // namespace curvlab
