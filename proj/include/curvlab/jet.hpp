#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvlab {

inline constexpr int kDim = 4;
inline constexpr int kMaxOrder = 3;
inline constexpr int kMaxCoeffs = 35;

using MultiIndex = std::array<int, kDim>;

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what, std::size_t offset = 0)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Number of coefficients of an order-k jet in 4 variables: C(4+k, k).
constexpr int coeff_count(int order) {
  constexpr int counts[] = {1, 5, 15, 35};
  return counts[order];
}

// Graded-lex position of a multi-index; entries of lower total degree come first.
int multi_index_position(const MultiIndex& alpha);
const MultiIndex& multi_index_at(int position);

// Truncated Taylor expansion in (t, r, theta, phi). Coefficients are raw
// partial derivatives d^alpha f at the base point.
class Jet {
 public:
  Jet() = default;
  explicit Jet(int order, double value = 0.0);

  static Jet constant(double value, int order) { return Jet(order, value); }
  static Jet variable(int coord, double value, int order);

  int order() const { return order_; }
  int size() const { return coeff_count(order_); }
  double value() const { return c_[0]; }

  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }
  const std::array<double, kMaxCoeffs>& coeffs() const { return c_; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator*=(double s);
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }

 private:
  int order_ = 0;
  std::array<double, kMaxCoeffs> c_{};
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(Jet a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, const Jet& a);

Jet reciprocal(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet cot(const Jet& a);
Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet pow(const Jet& base, long long n);
Jet pow(const Jet& base, const Jet& exponent);

double extract_partial(const Jet& j, const MultiIndex& alpha);
Jet truncate(const Jet& j, int new_order);
// d/dx_coord of the jet; the result has order one lower.
Jet derivative(const Jet& j, int coord);

inline Jet zero_like(const Jet& j) { return Jet(j.order()); }
inline double zero_like(double) { return 0.0; }
inline double value_of(const Jet& j) { return j.value(); }
inline double value_of(double x) { return x; }

}  // namespace curvlab
