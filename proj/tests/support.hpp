// Shared oracles for the unit and acceptance tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "curvlab/curvature.hpp"
#include "curvlab/expr.hpp"

namespace curvlab::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Point random_point(Rng& rng) {
  return {uniform(rng, 0.0, 1.0), uniform(rng, 1.5, 5.0), uniform(rng, 0.4, 2.7), uniform(rng, 0.0, 6.2)};
}

// Points for bare expression trees; t is kept off 0 so quotients like phi/t stay mild.
inline Point random_tree_point(Rng& rng) {
  Point p = random_point(rng);
  p[0] += 0.5;
  return p;
}

// Random tree over every node kind; depth 0 gives a leaf.
inline Expr random_tree(Rng& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 11);
  switch (pick(rng)) {
    case 0: return Expr::constant(std::round(uniform(rng, -2.0, 2.0) * 8.0) / 8.0 + 0.0625);
    case 1: return Expr::coordinate(static_cast<Coord>(std::uniform_int_distribution<int>(0, 3)(rng)));
    case 2: return random_tree(rng, depth - 1) + random_tree(rng, depth - 1);
    case 3: return random_tree(rng, depth - 1) - random_tree(rng, depth - 1);
    case 4: return random_tree(rng, depth - 1) * random_tree(rng, depth - 1);
    case 5: return random_tree(rng, depth - 1) / random_tree(rng, depth - 1);
    case 6: return -random_tree(rng, depth - 1);
    case 7: return pow(random_tree(rng, depth - 1), std::uniform_int_distribution<int>(-2, 3)(rng));
    case 8: return sin(random_tree(rng, depth - 1));
    case 9: return cos(random_tree(rng, depth - 1));
    case 10: return sqrt(random_tree(rng, depth - 1));
    default:
      return std::uniform_int_distribution<int>(0, 1)(rng) ? cot(random_tree(rng, depth - 1))
                                                        : pow(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
  }
}

// Central stencil of the order-0 evaluation for the partial d^alpha;
// the step along coordinate i is h * max(1, |p_i|).
inline double fd_partial(const Expr& e, const Point& p, const MultiIndex& alpha, double h) {
  static const std::vector<std::pair<int, double>> stencil[4] = {
      {{0, 1.0}},
      {{1, 0.5}, {-1, -0.5}},
      {{1, 1.0}, {0, -2.0}, {-1, 1.0}},
      {{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}}};
  double total = 0.0;
  std::array<int, kDim> k{};
  std::array<double, kDim> step{};
  for (int i = 0; i < kDim; ++i) step[i] = h * std::max(1.0, std::abs(p[i]));
  // odometer over the product stencil
  for (;;) {
    Point q = p;
    double w = 1.0;
    for (int i = 0; i < kDim; ++i) {
      const auto& [off, wi] = stencil[alpha[i]][k[i]];
      q[i] += off * step[i];
      w *= wi / std::pow(step[i], alpha[i]);
    }
    total += w * evaluate(e, q);
    int i = 0;
    while (i < kDim && ++k[i] == static_cast<int>(stencil[alpha[i]].size())) k[i++] = 0;
    if (i == kDim) break;
  }
  return total;
}

// One Richardson level on the central stencil: error O(h^4) instead of O(h^2).
inline double fd_partial_richardson(const Expr& e, const Point& p, const MultiIndex& alpha, double h) {
  return (4.0 * fd_partial(e, p, alpha, 0.5 * h) - fd_partial(e, p, alpha, h)) / 3.0;
}

struct JetFdStats {
  int accepted = 0;
  double worst12 = 0.0, worst3 = 0.0;  // |fd - jet| / max(1, |jet|) by order
  std::string worst_tree;
};

// Jet partials of random trees against the Richardson stencil. Trees that leave the
// domain or whose jets are wild (|f| >= 50 or any coefficient >= 1e3) are redrawn.
inline JetFdStats jet_fd_check(std::uint64_t seed, int count) {
  Rng rng(seed);
  JetFdStats st;
  double worst_any = -1.0;
  for (int attempts = 0; st.accepted < count && attempts < 200 * count; ++attempts) {
    const Expr e = random_tree(rng, 6);
    const Point p = random_tree_point(rng);
    Jet j;
    try {
      j = eval_jet(e, p, 3);
    } catch (const DomainError&) {
      continue;
    }
    bool tame = std::abs(j.value()) < 50.0;
    for (int i = 0; i < j.size() && tame; ++i) tame = std::abs(j[i]) < 1e3;
    if (!tame || !uses_coordinate(e, Coord::r)) continue;
    std::vector<double> fd(35);
    try {
      for (int i = 1; i < 35; ++i) fd[i] = fd_partial_richardson(e, p, multi_index_at(i), 2e-3);
    } catch (const DomainError&) {
      continue;  // the stencil left the domain
    }
    ++st.accepted;
    for (int i = 1; i < 35; ++i) {
      const MultiIndex& a = multi_index_at(i);
      const int order = a[0] + a[1] + a[2] + a[3];
      const double dev = std::abs(fd[i] - j[i]) / std::max(1.0, std::abs(j[i]));
      double& w = order == 3 ? st.worst3 : st.worst12;
      w = std::max(w, dev);
      if (dev / (order == 3 ? 1e-4 : 1e-6) > worst_any) {
        worst_any = dev / (order == 3 ? 1e-4 : 1e-6);
        st.worst_tree = unparse(e);
      }
    }
  }
  return st;
}

inline MetricGrid cartesian_minkowski() {
  MetricGrid g;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) g[a][b] = Expr::constant(a != b ? 0.0 : (a == 0 ? 1.0 : -1.0));
  return g;
}

inline ValueTensor random_tensor(Rng& rng, int rank) {
  ValueTensor x = ValueTensor::covariant(rank, 0.0);
  for (auto& v : x.data()) v = uniform(rng, -1.0, 1.0);
  return x;
}

inline ValueTensor random_symmetric(Rng& rng) {
  ValueTensor x = ValueTensor::covariant(2, 0.0);
  for (int a = 0; a < kDim; ++a)
    for (int b = a; b < kDim; ++b) x(a, b) = x(b, a) = uniform(rng, -1.0, 1.0);
  return x;
}

// Algebraic curvature tensor: sum of Kulkarni-Nomizu products of random symmetric forms.
inline ValueTensor random_curvature(Rng& rng) {
  ValueTensor r = kulkarni_nomizu(random_symmetric(rng), random_symmetric(rng));
  r += kulkarni_nomizu(random_symmetric(rng), random_symmetric(rng));
  return r;
}

inline double rel_diff(const ValueTensor& a, const ValueTensor& b) {
  return norm(a - b) / std::max(1.0, norm(b));
}

}  // namespace curvlab::testing
