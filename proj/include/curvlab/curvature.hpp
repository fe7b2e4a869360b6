#pragma once

#include <array>

#include "curvlab/expr.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

using MetricGrid = std::array<std::array<Expr, kDim>, kDim>;

struct MetricAtPoint {
  JetTensor g;      // (0,2), budget 3
  JetTensor g_inv;  // (2,0), budget 3
  Point point{};
};

// Evaluates the grid at p, inverts it in jet arithmetic and checks symmetry,
// the inverse and the (+,-,-,-) signature. Throws DomainError on failure.
MetricAtPoint metric_at_point(const MetricGrid& grid, const Point& p, int order = kMaxOrder);

JetTensor christoffel(const MetricAtPoint& m);

struct Riemann {
  JetTensor r13;  // R^e_{fst}
  JetTensor r04;  // R_{efst}
};
// R^e_{fst} = d_s G^e_{tf} - d_t G^e_{sf} + G^e_{sm} G^m_{tf} - G^e_{tm} G^m_{sf}
Riemann riemann(const MetricAtPoint& m, const JetTensor& gamma);

struct RicciFamily {
  JetTensor s;   // S_{fs} = g^{et} R_{efst}
  Jet kappa;     // g^{fs} S_{fs}
  JetTensor j;   // Ricci operator J^a_b = g^{ac} S_{cb}, (1,1)
  JetTensor s2;  // S_{ac} J^c_b
  JetTensor s3;
};
RicciFamily ricci_family(const MetricAtPoint& m, const JetTensor& r04);

enum class DerivedKind { conformal, projective, conharmonic, concircular };

template <typename Scalar>
Tensor<Scalar> kulkarni_nomizu(const Tensor<Scalar>& x, const Tensor<Scalar>& z) {
  const double scale = std::max({1.0, max_abs(values(x)), max_abs(values(z))});
  for (int a = 0; a < kDim; ++a)
    for (int b = a + 1; b < kDim; ++b)
      if (std::abs(value_of(x(a, b)) - value_of(x(b, a))) > 1e-10 * scale ||
          std::abs(value_of(z(a, b)) - value_of(z(b, a))) > 1e-10 * scale)
        throw std::invalid_argument("Kulkarni-Nomizu product needs symmetric inputs");
  Tensor<Scalar> out = Tensor<Scalar>::covariant(4, zero_like(x[0]));
  for (int e = 0; e < kDim; ++e)
    for (int f = 0; f < kDim; ++f)
      for (int s = 0; s < kDim; ++s)
        for (int t = 0; t < kDim; ++t)
          out(e, f, s, t) = x(e, t) * z(s, f) - x(e, s) * z(t, f) + x(f, s) * z(t, e) -
                            x(f, t) * z(s, e);
  return out;
}

// Q(beta, W)_{b1..bk r s} = sum_i beta_{r b_i} W_{..s..} - beta_{s b_i} W_{..r..}
template <typename Scalar>
Tensor<Scalar> tachibana_q(const Tensor<Scalar>& beta, const Tensor<Scalar>& w) {
  const int k = w.rank();
  Tensor<Scalar> out = Tensor<Scalar>::covariant(k + 2, zero_like(w[0]));
  for (std::size_t f = 0; f < out.size(); ++f) {
    const Indices o = out.unflat(f);
    const int r = o[k], s = o[k + 1];
    Scalar acc = zero_like(w[0]);
    for (int i = 0; i < k; ++i) {
      Indices idx = o;
      const int bi = o[i];
      idx[i] = s;
      acc += beta(r, bi) * w.at(idx);
      idx[i] = r;
      acc -= beta(s, bi) * w.at(idx);
    }
    out[f] = acc;
  }
  return out;
}

// (L.W)_{b1..bk r s} = sum_i L^a_{b_i r s} W_{..a..} with L given as (1,3).
template <typename Scalar>
Tensor<Scalar> curv_action(const Tensor<Scalar>& l13, const Tensor<Scalar>& w) {
  if (l13.rank() != 4 || l13.variance(0) != Variance::upper)
    throw std::invalid_argument("curvature action needs a (1,3) operator");
  const int k = w.rank();
  Tensor<Scalar> out = Tensor<Scalar>::covariant(k + 2, zero_like(w[0]));
  for (std::size_t f = 0; f < out.size(); ++f) {
    const Indices o = out.unflat(f);
    const int r = o[k], s = o[k + 1];
    Scalar acc = zero_like(w[0]);
    for (int i = 0; i < k; ++i) {
      Indices idx = o;
      for (int a = 0; a < kDim; ++a) {
        idx[i] = a;
        acc += l13(a, o[i], r, s) * w.at(idx);
      }
    }
    out[f] = acc;
  }
  return out;
}

// (nabla x)_{a1..ak d}; the derivative index is last.
JetTensor covariant_derivative(const JetTensor& x, const JetTensor& gamma);

inline JetTensor lie_derivative(const JetTensor& w, int coord) { return partial(w, coord); }

struct CurvaturePack {
  MetricAtPoint metric;
  JetTensor gamma;               // budget 2
  JetTensor r04, r13;            // budget 1
  JetTensor s, s2, s3, j;        // budget 1
  Jet kappa;
  JetTensor c, p, har, cir;      // budget 1
  ValueTensor nabla_r, nabla_c;  // budget 0, derivative index last
};

CurvaturePack build_pack(const MetricAtPoint& m);

JetTensor derived_tensor(DerivedKind kind, const CurvaturePack& pack);
// (div R)_{fst} = g^{ed} nabla_d R_{efst}
ValueTensor divergence_r(const CurvaturePack& pack);
// T = S - (kappa/2) g + Lambda g
JetTensor energy_momentum(const CurvaturePack& pack, double cosmological);

// (1,3) version of a (0,4) tensor by raising the first slot.
template <typename Scalar>
Tensor<Scalar> raise_first(const Tensor<Scalar>& w04, const Tensor<Scalar>& g, const Tensor<Scalar>& g_inv) {
  return raise_lower(w04, 0, Direction::up, g, g_inv);
}

}  // namespace curvlab
