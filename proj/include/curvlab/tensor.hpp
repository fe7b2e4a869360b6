#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "curvlab/jet.hpp"

namespace curvlab {

enum class Variance : std::uint8_t { lower, upper };
enum class Direction { up, down };

inline constexpr int kMaxRank = 6;
using Indices = std::array<int, kMaxRank>;

// Dense tensor over the 4-dimensional tangent space. Components are stored
// row-major with the first slot most significant.
template <typename Scalar>
class Tensor {
 public:
  Tensor() : data_(1) {}
  Tensor(std::vector<Variance> slots, const Scalar& fill) : slots_(std::move(slots)) {
    if (slots_.size() > kMaxRank) throw std::invalid_argument("tensor rank exceeds 6");
    data_.assign(std::size_t{1} << (2 * slots_.size()), fill);
  }

  static Tensor covariant(int rank, const Scalar& fill) {
    return Tensor(std::vector<Variance>(rank, Variance::lower), fill);
  }
  static Tensor valence(int upper, int lower, const Scalar& fill) {
    std::vector<Variance> s(upper, Variance::upper);
    s.insert(s.end(), lower, Variance::lower);
    return Tensor(std::move(s), fill);
  }

  int rank() const { return static_cast<int>(slots_.size()); }
  Variance variance(int slot) const { return slots_.at(slot); }
  const std::vector<Variance>& slots() const { return slots_; }
  std::size_t size() const { return data_.size(); }

  Scalar& operator[](std::size_t i) { return data_[i]; }
  const Scalar& operator[](std::size_t i) const { return data_[i]; }

  template <typename... I>
  Scalar& operator()(I... idx) {
    return data_[offset(idx...)];
  }
  template <typename... I>
  const Scalar& operator()(I... idx) const {
    return data_[offset(idx...)];
  }

  Scalar& at(const Indices& idx) { return data_[flat(idx)]; }
  const Scalar& at(const Indices& idx) const { return data_[flat(idx)]; }

  std::size_t flat(const Indices& idx) const {
    std::size_t f = 0;
    for (int i = 0; i < rank(); ++i) f = (f << 2) | static_cast<std::size_t>(idx[i]);
    return f;
  }
  Indices unflat(std::size_t f) const {
    Indices idx{};
    for (int i = rank() - 1; i >= 0; --i, f >>= 2) idx[i] = static_cast<int>(f & 3u);
    return idx;
  }

  std::vector<Scalar>& data() { return data_; }
  const std::vector<Scalar>& data() const { return data_; }

  Tensor& operator+=(const Tensor& o) {
    check_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  template <typename S>
  Tensor& operator*=(const S& s) {
    for (auto& x : data_) x = x * s;
    return *this;
  }

  void check_shape(const Tensor& o) const {
    if (o.slots_ != slots_) throw std::invalid_argument("tensor valence mismatch");
  }

 private:
  std::vector<Variance> slots_;
  std::vector<Scalar> data_;

  template <typename... I>
  std::size_t offset(I... idx) const {
    std::size_t f = 0;
    ((f = (f << 2) | static_cast<std::size_t>(idx)), ...);
    return f;
  }
};

template <typename Scalar>
Tensor<Scalar> operator+(Tensor<Scalar> a, const Tensor<Scalar>& b) {
  return a += b;
}
template <typename Scalar>
Tensor<Scalar> operator-(Tensor<Scalar> a, const Tensor<Scalar>& b) {
  return a -= b;
}
template <typename Scalar, typename S>
Tensor<Scalar> operator*(Tensor<Scalar> a, const S& s) {
  return a *= s;
}
template <typename Scalar, typename S>
Tensor<Scalar> operator*(const S& s, Tensor<Scalar> a) {
  for (auto& x : a.data()) x = s * x;
  return a;
}

using JetTensor = Tensor<Jet>;
using ValueTensor = Tensor<double>;

template <typename Scalar>
int budget(const Tensor<Scalar>& x) {
  if constexpr (std::is_same_v<Scalar, Jet>)
    return x.data().front().order();
  else
    return 0;
}

inline ValueTensor values(const JetTensor& x) {
  ValueTensor out(x.slots(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].value();
  return out;
}
inline ValueTensor values(const ValueTensor& x) { return x; }

inline JetTensor truncate(const JetTensor& x, int order) {
  JetTensor out(x.slots(), Jet(order));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = truncate(x[i], order);
  return out;
}

// Component-wise coordinate partial d/dx_coord; budget drops by one.
inline JetTensor partial(const JetTensor& x, int coord) {
  JetTensor out(x.slots(), Jet(budget(x) - 1));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = derivative(x[i], coord);
  return out;
}

// Bring `m` down to the jet order of `like` (no-op for plain numbers).
inline JetTensor match_budget(const JetTensor& m, const JetTensor& like) {
  const int b = budget(like);
  if (budget(m) < b) throw std::invalid_argument("budget mismatch: metric has lower order");
  return budget(m) == b ? m : truncate(m, b);
}
inline const ValueTensor& match_budget(const ValueTensor& m, const ValueTensor&) { return m; }

inline Eigen::Map<const Eigen::VectorXd> flatten(const ValueTensor& x) {
  return {x.data().data(), static_cast<Eigen::Index>(x.size())};
}

inline double max_abs(const ValueTensor& x) {
  double m = 0.0;
  for (double v : x.data()) m = std::max(m, std::abs(v));
  return m;
}
inline double norm(const ValueTensor& x) { return flatten(x).norm(); }

template <typename Scalar>
Tensor<Scalar> raise_lower(const Tensor<Scalar>& x, int slot, Direction dir, const Tensor<Scalar>& g,
                           const Tensor<Scalar>& g_inv) {
  if (slot < 0 || slot >= x.rank()) throw std::out_of_range("invalid slot");
  const Variance want = dir == Direction::up ? Variance::lower : Variance::upper;
  if (x.variance(slot) != want) throw std::invalid_argument("slot has the wrong variance");
  const Tensor<Scalar> m = match_budget(dir == Direction::up ? g_inv : g, x);
  auto slots = x.slots();
  slots[slot] = dir == Direction::up ? Variance::upper : Variance::lower;
  Tensor<Scalar> out(slots, zero_like(x[0]));
  for (std::size_t f = 0; f < out.size(); ++f) {
    Indices idx = out.unflat(f);
    const int a = idx[slot];
    Scalar acc = zero_like(x[0]);
    for (int b = 0; b < kDim; ++b) {
      idx[slot] = b;
      acc += m(a, b) * x.at(idx);
    }
    out[f] = acc;
  }
  return out;
}

// Sum over a paired upper and lower slot.
template <typename Scalar>
Tensor<Scalar> contract(const Tensor<Scalar>& x, int upper_slot, int lower_slot) {
  if (upper_slot < 0 || upper_slot >= x.rank() || lower_slot < 0 || lower_slot >= x.rank() ||
      upper_slot == lower_slot)
    throw std::out_of_range("invalid slots");
  if (x.variance(upper_slot) != Variance::upper || x.variance(lower_slot) != Variance::lower)
    throw std::invalid_argument("contraction needs one upper and one lower slot");
  std::vector<Variance> slots;
  for (int i = 0; i < x.rank(); ++i)
    if (i != upper_slot && i != lower_slot) slots.push_back(x.variance(i));
  Tensor<Scalar> out(slots, zero_like(x[0]));
  for (std::size_t f = 0; f < out.size(); ++f) {
    const Indices o = out.unflat(f);
    Indices idx{};
    for (int i = 0, j = 0; i < x.rank(); ++i)
      if (i != upper_slot && i != lower_slot) idx[i] = o[j++];
    Scalar acc = zero_like(x[0]);
    for (int a = 0; a < kDim; ++a) {
      idx[upper_slot] = idx[lower_slot] = a;
      acc += x.at(idx);
    }
    out[f] = acc;
  }
  return out;
}

}  // namespace curvlab
