#include "curvlab/curvature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace curvlab {
namespace {

JetTensor invert(const JetTensor& g) {
  const int order = budget(g);
  std::array<std::array<Jet, 2 * kDim>, kDim> a;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < 2 * kDim; ++j)
      a[i][j] = j < kDim ? g(i, j) : Jet(order, i == j - kDim ? 1.0 : 0.0);
  for (int col = 0; col < kDim; ++col) {
    int piv = col;
    for (int i = col + 1; i < kDim; ++i)
      if (std::abs(a[i][col].value()) > std::abs(a[piv][col].value())) piv = i;
    if (std::abs(a[piv][col].value()) < 1e-300) throw DomainError("singular metric");
    std::swap(a[piv], a[col]);
    const Jet inv = reciprocal(a[col][col]);
    for (auto& x : a[col]) x = x * inv;
    for (int i = 0; i < kDim; ++i) {
      if (i == col) continue;
      const Jet f = a[i][col];
      for (int j = 0; j < 2 * kDim; ++j) a[i][j] -= f * a[col][j];
    }
  }
  JetTensor out = JetTensor::valence(2, 0, Jet(order));
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) out(i, j) = a[i][kDim + j];
  return out;
}

}  // namespace

MetricAtPoint metric_at_point(const MetricGrid& grid, const Point& p, int order) {
  MetricAtPoint m;
  m.point = p;
  m.g = JetTensor::covariant(2, Jet(order));
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m.g(i, j) = eval_jet(grid[i][j], p, order);

  Eigen::Matrix4d gv;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) gv(i, j) = m.g(i, j).value();
  const double scale = gv.cwiseAbs().maxCoeff();
  if ((gv - gv.transpose()).cwiseAbs().maxCoeff() > 1e-13 * std::max(1.0, scale))
    throw DomainError("metric is not symmetric");

  m.g_inv = invert(m.g);
  Eigen::Matrix4d iv;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) iv(i, j) = m.g_inv(i, j).value();
  if ((gv * iv - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() > 1e-11)
    throw DomainError("metric inverse is inaccurate");

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(gv);
  int positive = 0, negative = 0;
  for (int i = 0; i < kDim; ++i) (es.eigenvalues()(i) > 0 ? positive : negative)++;
  if (positive != 1 || negative != 3) throw DomainError("metric is not Lorentzian (+,-,-,-)");
  return m;
}

JetTensor christoffel(const MetricAtPoint& m) {
  const int b = budget(m.g) - 1;
  if (b < 0) throw std::invalid_argument("christoffel needs metric budget >= 1");
  std::array<JetTensor, kDim> dg;
  for (int c = 0; c < kDim; ++c) dg[c] = partial(m.g, c);
  const JetTensor gi = truncate(m.g_inv, b);
  JetTensor gamma = JetTensor::valence(1, 2, Jet(b));
  for (int h = 0; h < kDim; ++h)
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) {
        Jet acc(b);
        for (int k = 0; k < kDim; ++k)
          acc += gi(h, k) * (dg[i](j, k) + dg[j](i, k) - dg[k](i, j));
        acc *= 0.5;
        gamma(h, i, j) = acc;
        gamma(h, j, i) = acc;
      }
  return gamma;
}

Riemann riemann(const MetricAtPoint& m, const JetTensor& gamma) {
  const int b = budget(gamma) - 1;
  if (b < 0) throw std::invalid_argument("riemann needs Christoffel budget >= 1");
  std::array<JetTensor, kDim> dgam;
  for (int c = 0; c < kDim; ++c) dgam[c] = partial(gamma, c);
  const JetTensor gm = truncate(gamma, b);
  Riemann out;
  out.r13 = JetTensor::valence(1, 3, Jet(b));
  for (int e = 0; e < kDim; ++e)
    for (int f = 0; f < kDim; ++f)
      for (int s = 0; s < kDim; ++s)
        for (int t = s + 1; t < kDim; ++t) {
          Jet acc = dgam[s](e, t, f) - dgam[t](e, s, f);
          for (int k = 0; k < kDim; ++k) acc += gm(e, s, k) * gm(k, t, f) - gm(e, t, k) * gm(k, s, f);
          out.r13(e, f, s, t) = acc;
          out.r13(e, f, t, s) = -acc;
        }
  out.r04 = raise_lower(out.r13, 0, Direction::down, m.g, m.g_inv);
  return out;
}

RicciFamily ricci_family(const MetricAtPoint& m, const JetTensor& r04) {
  const int b = budget(r04);
  const JetTensor g = truncate(m.g, b);
  const JetTensor gi = truncate(m.g_inv, b);
  RicciFamily out;
  out.s = JetTensor::covariant(2, Jet(b));
  for (int f = 0; f < kDim; ++f)
    for (int s = 0; s < kDim; ++s) {
      Jet acc(b);
      for (int e = 0; e < kDim; ++e)
        for (int t = 0; t < kDim; ++t) acc += gi(e, t) * r04(e, f, s, t);
      out.s(f, s) = acc;
    }
  out.kappa = Jet(b);
  for (int f = 0; f < kDim; ++f)
    for (int s = 0; s < kDim; ++s) out.kappa += gi(f, s) * out.s(f, s);
  out.j = raise_lower(out.s, 0, Direction::up, g, gi);
  auto times_j = [&](const JetTensor& x) {
    JetTensor y = JetTensor::covariant(2, Jet(b));
    for (int a = 0; a < kDim; ++a)
      for (int c = 0; c < kDim; ++c) {
        Jet acc(b);
        for (int k = 0; k < kDim; ++k) acc += x(a, k) * out.j(k, c);
        y(a, c) = acc;
      }
    return y;
  };
  out.s2 = times_j(out.s);
  out.s3 = times_j(out.s2);
  return out;
}

JetTensor covariant_derivative(const JetTensor& x, const JetTensor& gamma) {
  const int b = budget(x) - 1;
  if (b < 0) throw std::invalid_argument("covariant derivative needs budget >= 1");
  for (Variance v : x.slots())
    if (v != Variance::lower) throw std::invalid_argument("covariant derivative expects a (0,k) tensor");
  if (budget(gamma) < b) throw std::invalid_argument("Christoffel budget too low");
  const int k = x.rank();
  const JetTensor gm = truncate(gamma, b);
  const JetTensor xt = truncate(x, b);
  std::array<JetTensor, kDim> dx;
  for (int c = 0; c < kDim; ++c) dx[c] = partial(x, c);
  JetTensor out = JetTensor::covariant(k + 1, Jet(b));
  for (std::size_t f = 0; f < out.size(); ++f) {
    const Indices o = out.unflat(f);
    const int d = o[k];
    Indices idx = o;
    Jet acc = dx[d].at(idx);
    for (int i = 0; i < k; ++i) {
      idx = o;
      for (int mm = 0; mm < kDim; ++mm) {
        idx[i] = mm;
        acc -= gm(mm, d, o[i]) * xt.at(idx);
      }
    }
    out[f] = acc;
  }
  return out;
}

JetTensor derived_tensor(DerivedKind kind, const CurvaturePack& pack) {
  const int b = budget(pack.r04);
  const JetTensor g = truncate(pack.metric.g, b);
  const Jet& kappa = pack.kappa;
  switch (kind) {
    case DerivedKind::conharmonic:
      return pack.r04 - kulkarni_nomizu(g, pack.s) * 0.5;
    case DerivedKind::concircular:
      return pack.r04 - kulkarni_nomizu(g, g) * (kappa * (1.0 / 24.0));
    case DerivedKind::conformal:
      return pack.r04 - kulkarni_nomizu(g, pack.s) * 0.5 + kulkarni_nomizu(g, g) * (kappa * (1.0 / 12.0));
    case DerivedKind::projective: {
      JetTensor p = pack.r04;
      for (int e = 0; e < kDim; ++e)
        for (int f = 0; f < kDim; ++f)
          for (int s = 0; s < kDim; ++s)
            for (int t = 0; t < kDim; ++t)
              p(e, f, s, t) -= (g(e, t) * pack.s(f, s) - g(f, t) * pack.s(e, s)) * (1.0 / 3.0);
      return p;
    }
  }
  throw std::logic_error("unknown derived tensor");
}

CurvaturePack build_pack(const MetricAtPoint& m) {
  CurvaturePack pack;
  pack.metric = m;
  pack.gamma = christoffel(m);
  Riemann r = riemann(m, pack.gamma);
  pack.r04 = std::move(r.r04);
  pack.r13 = std::move(r.r13);
  RicciFamily rf = ricci_family(m, pack.r04);
  pack.s = std::move(rf.s);
  pack.kappa = rf.kappa;
  pack.j = std::move(rf.j);
  pack.s2 = std::move(rf.s2);
  pack.s3 = std::move(rf.s3);
  pack.c = derived_tensor(DerivedKind::conformal, pack);
  pack.p = derived_tensor(DerivedKind::projective, pack);
  pack.har = derived_tensor(DerivedKind::conharmonic, pack);
  pack.cir = derived_tensor(DerivedKind::concircular, pack);
  pack.nabla_r = values(covariant_derivative(pack.r04, pack.gamma));
  pack.nabla_c = values(covariant_derivative(pack.c, pack.gamma));
  return pack;
}

ValueTensor divergence_r(const CurvaturePack& pack) {
  ValueTensor out = ValueTensor::covariant(3, 0.0);
  for (int f = 0; f < kDim; ++f)
    for (int s = 0; s < kDim; ++s)
      for (int t = 0; t < kDim; ++t) {
        double acc = 0.0;
        for (int e = 0; e < kDim; ++e)
          for (int d = 0; d < kDim; ++d)
            acc += pack.metric.g_inv(e, d).value() * pack.nabla_r(e, f, s, t, d);
        out(f, s, t) = acc;
      }
  return out;
}

JetTensor energy_momentum(const CurvaturePack& pack, double cosmological) {
  const JetTensor g = truncate(pack.metric.g, budget(pack.s));
  return pack.s + g * (cosmological - pack.kappa * 0.5);
}

}  // namespace curvlab
