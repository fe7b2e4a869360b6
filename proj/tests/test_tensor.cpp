#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvlab/curvature.hpp"
#include "curvlab/spacetimes.hpp"
#include "support.hpp"

using namespace curvlab;
using doctest::Approx;

namespace {

ValueTensor minkowski_g() {
  ValueTensor g = ValueTensor::covariant(2, 0.0);
  g(0, 0) = 1.0;
  for (int a = 1; a < 4; ++a) g(a, a) = -1.0;
  return g;
}
ValueTensor minkowski_gi() {
  ValueTensor u({Variance::upper, Variance::upper}, 0.0);
  u(0, 0) = 1.0;
  for (int a = 1; a < 4; ++a) u(a, a) = -1.0;
  return u;
}

}  // namespace

TEST_CASE("storage layout") {
  ValueTensor x = ValueTensor::covariant(3, 0.0);
  CHECK(x.size() == 64);
  x(1, 2, 3) = 5.0;
  CHECK(x[1 * 16 + 2 * 4 + 3] == 5.0);
  CHECK(x.flat({1, 2, 3}) == 27);
  const Indices back = x.unflat(27);
  CHECK(back[0] == 1);
  CHECK(back[1] == 2);
  CHECK(back[2] == 3);
  CHECK(ValueTensor::covariant(6, 0.0).size() == 4096);
  CHECK_THROWS_AS(ValueTensor::covariant(7, 0.0), std::invalid_argument);
  const ValueTensor mixed = ValueTensor::valence(1, 3, 0.0);
  CHECK(mixed.variance(0) == Variance::upper);
  CHECK(mixed.variance(3) == Variance::lower);
}

TEST_CASE("arithmetic checks valence") {
  const ValueTensor a = ValueTensor::covariant(2, 1.0);
  const ValueTensor b = ValueTensor::valence(1, 1, 1.0);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  const ValueTensor c = 2.0 * a - a;
  for (double v : c.data()) CHECK(v == 1.0);
}

TEST_CASE("lowering on Minkowski flips time components") {
  testing::Rng rng(5);
  const ValueTensor g = minkowski_g(), gi = minkowski_gi();
  ValueTensor v = ValueTensor::valence(1, 1, 0.0);
  for (auto& x : v.data()) x = testing::uniform(rng, -1, 1);
  const ValueTensor low = raise_lower(v, 0, Direction::down, g, gi);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(low(a, b) == (a == 0 ? v(a, b) : -v(a, b)));
}

TEST_CASE("raise then lower is the identity") {
  const MetricSpec spec = preset("vbds");
  const MetricAtPoint m = metric_at_point(spec.grid, {0.4, 2.3, 1.0, 0.5});
  const ValueTensor g = values(m.g), gi = values(m.g_inv);
  testing::Rng rng(9);
  const ValueTensor x = testing::random_tensor(rng, 4);
  for (int slot = 0; slot < 4; ++slot) {
    const ValueTensor up = raise_lower(x, slot, Direction::up, g, gi);
    CHECK(up.variance(slot) == Variance::upper);
    CHECK(testing::rel_diff(raise_lower(up, slot, Direction::down, g, gi), x) < 1e-12);
  }
  CHECK_THROWS_AS(raise_lower(x, 4, Direction::up, g, gi), std::out_of_range);
  CHECK_THROWS_AS(raise_lower(x, 0, Direction::down, g, gi), std::invalid_argument);
}

TEST_CASE("raise_lower on jet tensors needs a metric of sufficient budget") {
  const MetricSpec spec = preset("vbds");
  const MetricAtPoint m = metric_at_point(spec.grid, {0.4, 2.3, 1.0, 0.5}, 1);
  const JetTensor x = JetTensor::covariant(2, Jet::constant(1.0, 2));
  CHECK_THROWS_AS(raise_lower(x, 0, Direction::up, m.g, m.g_inv), std::invalid_argument);
  const MetricAtPoint m3 = metric_at_point(spec.grid, {0.4, 2.3, 1.0, 0.5}, 3);
  CHECK(budget(raise_lower(x, 0, Direction::up, m3.g, m3.g_inv)) == 2);
}

TEST_CASE("contractions") {
  ValueTensor delta = ValueTensor::valence(1, 1, 0.0);
  for (int a = 0; a < 4; ++a) delta(a, a) = 1.0;
  CHECK(contract(delta, 0, 1)[0] == 4.0);

  const MetricSpec spec = preset("vbds");
  const MetricAtPoint m = metric_at_point(spec.grid, {0.4, 2.3, 1.0, 0.5});
  const ValueTensor g = values(m.g), gi = values(m.g_inv);
  const ValueTensor mixed = raise_lower(g, 0, Direction::up, g, gi);
  CHECK(contract(mixed, 0, 1)[0] == Approx(4.0).epsilon(1e-13));
  CHECK_THROWS_AS(contract(g, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(contract(mixed, 0, 0), std::out_of_range);
}

TEST_CASE("contraction is linear") {
  testing::Rng rng(13);
  ValueTensor x = ValueTensor::valence(1, 3, 0.0), y = x;
  for (auto& v : x.data()) v = testing::uniform(rng, -1, 1);
  for (auto& v : y.data()) v = testing::uniform(rng, -1, 1);
  const double a = 1.7;
  const ValueTensor lhs = contract(x * a + y, 0, 2);
  const ValueTensor rhs = contract(x, 0, 2) * a + contract(y, 0, 2);
  CHECK(testing::rel_diff(lhs, rhs) < 1e-14);
  CHECK(lhs.rank() == 2);
}

TEST_CASE("partial derivative of a jet tensor drops the budget") {
  JetTensor x = JetTensor::covariant(1, Jet(3));
  x(1) = Jet::variable(1, 2.0, 3) * Jet::variable(1, 2.0, 3);
  const JetTensor d = partial(x, 1);
  CHECK(budget(d) == 2);
  CHECK(d(1).value() == Approx(4.0));
  CHECK(budget(truncate(x, 1)) == 1);
  CHECK(values(x)(1) == Approx(4.0));
}
