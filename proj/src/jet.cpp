#include "curvlab/jet.hpp"

#include <cmath>
#include <vector>

namespace curvlab {
namespace {

struct LeibnizTerm {
  int out, a, b;
  double weight;
};

struct Tables {
  std::array<MultiIndex, kMaxCoeffs> index{};
  // shift[coord][pos] = position of index[pos] + e_coord (or -1 beyond order 3)
  std::array<std::array<int, kMaxCoeffs>, kDim> shift{};
  std::array<std::vector<LeibnizTerm>, kMaxOrder + 1> leibniz;

  Tables() {
    int n = 0;
    for (int deg = 0; deg <= kMaxOrder; ++deg)
      // lexicographic within a degree, first coordinate most significant
      for (int a = deg; a >= 0; --a)
        for (int b = deg - a; b >= 0; --b)
          for (int c = deg - a - b; c >= 0; --c)
            index[n++] = {a, b, c, deg - a - b - c};

    for (int i = 0; i < kDim; ++i)
      for (int p = 0; p < kMaxCoeffs; ++p) {
        MultiIndex m = index[p];
        ++m[i];
        shift[i][p] = degree(m) <= kMaxOrder ? find(m) : -1;
      }

    for (int k = 0; k <= kMaxOrder; ++k) {
      const int cnt = coeff_count(k);
      for (int g = 0; g < cnt; ++g)
        for (int a = 0; a < cnt; ++a) {
          MultiIndex beta;
          bool ok = true;
          double w = 1.0;
          for (int i = 0; i < kDim; ++i) {
            beta[i] = index[g][i] - index[a][i];
            if (beta[i] < 0) ok = false;
          }
          if (!ok) continue;
          for (int i = 0; i < kDim; ++i) w *= binomial(index[g][i], index[a][i]);
          leibniz[k].push_back({g, a, find(beta), w});
        }
    }
  }

  static int degree(const MultiIndex& m) { return m[0] + m[1] + m[2] + m[3]; }
  static double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }
  int find(const MultiIndex& m) const {
    for (int p = 0; p < kMaxCoeffs; ++p)
      if (index[p] == m) return p;
    return -1;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

void check_same_order(const Jet& a, const Jet& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("jet order mismatch: " + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()));
}

// phi(a) given d[n] = phi^(n)(a0) / n!, n = 0..order.
Jet compose(const Jet& a, const std::array<double, kMaxOrder + 1>& d) {
  const int k = a.order();
  Jet delta = a;
  delta[0] = 0.0;
  Jet out(k, d[0]);
  if (k == 0) return out;
  Jet power = delta;
  for (int n = 1; n <= k; ++n) {
    if (n > 1) power *= delta;
    for (int i = 1; i < out.size(); ++i) out[i] += d[n] * power[i];
  }
  return out;
}

void check_finite(const Jet& j, const char* op) {
  for (int i = 0; i < j.size(); ++i)
    if (!std::isfinite(j[i])) throw DomainError(std::string("non-finite result in ") + op);
}

}  // namespace

int multi_index_position(const MultiIndex& alpha) {
  for (int a : alpha)
    if (a < 0) throw std::out_of_range("negative multi-index entry");
  if (Tables::degree(alpha) > kMaxOrder) throw std::out_of_range("multi-index order exceeds 3");
  return tables().find(alpha);
}

const MultiIndex& multi_index_at(int position) { return tables().index.at(position); }

Jet::Jet(int order, double value) : order_(order) {
  if (order < 0 || order > kMaxOrder) throw std::invalid_argument("jet order must be in 0..3");
  c_[0] = value;
}

Jet Jet::variable(int coord, double value, int order) {
  Jet j(order, value);
  if (order >= 1) j.c_[1 + coord] = 1.0;
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  check_same_order(*this, o);
  for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_same_order(*this, o);
  for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  check_same_order(*this, o);
  std::array<double, kMaxCoeffs> r{};
  for (const auto& t : tables().leibniz[order_]) r[t.out] += t.weight * c_[t.a] * o.c_[t.b];
  c_ = r;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (int i = 0; i < size(); ++i) c_[i] *= s;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(const Jet& a, const Jet& b) {
  Jet r = a;
  return r *= b;
}
Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
Jet operator-(Jet a) { return a *= -1.0; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a -= s; }
Jet operator-(double s, const Jet& a) { return -a + s; }

Jet reciprocal(const Jet& a) {
  const double x = a.value();
  if (x == 0.0) throw DomainError("division by zero");
  const double inv = 1.0 / x;
  return compose(a, {inv, -inv * inv, inv * inv * inv, -inv * inv * inv * inv});
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return compose(a, {s, c, -s / 2.0, -c / 6.0});
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return compose(a, {c, -s, -c / 2.0, s / 6.0});
}

Jet cot(const Jet& a) {
  const double s = std::sin(a.value());
  if (std::abs(s) < 1e-12) throw DomainError("cot at sin = 0");
  const double c = std::cos(a.value()) / s;
  const double csc2 = 1.0 + c * c;
  return compose(a, {c, -csc2, c * csc2, -csc2 * (csc2 + 2.0 * c * c) / 3.0});
}

Jet sqrt(const Jet& a) {
  const double x = a.value();
  if (x < 0.0) throw DomainError("sqrt of negative value");
  if (x == 0.0 && a.order() > 0) throw DomainError("sqrt not differentiable at 0");
  const double s = std::sqrt(x);
  Jet out = compose(a, {s, 0.5 / s, -0.125 / (s * x), 0.0625 / (s * x * x)});
  return out;
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  Jet out = compose(a, {e, e, e / 2.0, e / 6.0});
  check_finite(out, "exp");
  return out;
}

Jet log(const Jet& a) {
  const double x = a.value();
  if (x <= 0.0) throw DomainError("log of non-positive value");
  const double inv = 1.0 / x;
  return compose(a, {std::log(x), inv, -inv * inv / 2.0, inv * inv * inv / 3.0});
}

Jet pow(const Jet& base, long long n) {
  if (n < 0) return reciprocal(pow(base, -n));
  Jet result(base.order(), 1.0);
  Jet sq = base;
  while (n > 0) {
    if (n & 1) result *= sq;
    n >>= 1;
    if (n > 0) sq *= sq;
  }
  return result;
}

Jet pow(const Jet& base, const Jet& exponent) {
  if (base.value() <= 0.0) throw DomainError("non-integer power requires a positive base");
  return exp(exponent * log(base));
}

double extract_partial(const Jet& j, const MultiIndex& alpha) {
  const int pos = multi_index_position(alpha);
  if (Tables::degree(alpha) > j.order()) throw std::out_of_range("multi-index beyond jet order");
  return j[pos];
}

Jet truncate(const Jet& j, int new_order) {
  if (new_order > j.order() || new_order < 0) throw std::invalid_argument("cannot raise jet order");
  Jet out(new_order);
  for (int i = 0; i < out.size(); ++i) out[i] = j[i];
  return out;
}

Jet derivative(const Jet& j, int coord) {
  if (j.order() == 0) throw std::invalid_argument("derivative of an order-0 jet");
  Jet out(j.order() - 1);
  const auto& sh = tables().shift[coord];
  for (int i = 0; i < out.size(); ++i) out[i] = j[sh[i]];
  return out;
}

}  // namespace curvlab
