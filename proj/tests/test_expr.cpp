#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvlab/expr.hpp"
#include "support.hpp"

using namespace curvlab;
using doctest::Approx;

namespace {

ParseError parse_failure(const std::string& text) {
  try {
    parse_expr(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for " << text);
  return ParseError(0, "", "");
}

const Point kP{0.3, 2.0, 0.7, 1.1};

}  // namespace

TEST_CASE("grammar examples") {
  const Expr a = parse_expr("1 + 0.1*t");
  REQUIRE(a.kind() == NodeKind::Add);
  CHECK(a.node().args[0].kind() == NodeKind::Constant);
  CHECK(a.node().args[0].node().value == 1.0);
  const Expr& mul = a.node().args[1];
  REQUIRE(mul.kind() == NodeKind::Mul);
  CHECK(mul.node().args[0].node().value == 0.1);
  CHECK(mul.node().args[1].kind() == NodeKind::Coordinate);
  CHECK(mul.node().args[1].node().coord == 0);

  const Expr b = parse_expr("sin(theta)^2");
  REQUIRE(b.kind() == NodeKind::Pow);
  CHECK(b.node().int_exponent == 2);
  CHECK(b.node().args[0].kind() == NodeKind::Sin);
  CHECK(b.node().args[0].node().args[0].node().coord == 2);
}

TEST_CASE("precedence and associativity") {
  CHECK(evaluate(parse_expr("2 + 3*4"), kP) == 14.0);
  CHECK(evaluate(parse_expr("2^3^2"), kP) == Approx(512.0));  // exponent 3^2 is not a literal
  CHECK(evaluate(parse_expr("-2^2"), kP) == 4.0);  // unary minus binds tighter
  CHECK(evaluate(parse_expr("8/4/2"), kP) == 1.0);
  CHECK(evaluate(parse_expr("1 - 2 - 3"), kP) == -4.0);
  CHECK(evaluate(parse_expr("1.5e2 + 2E-1"), kP) == Approx(150.2));
  CHECK(evaluate(parse_expr("r*sin(theta) + cot(phi) - sqrt(t)"), kP) ==
        Approx(2.0 * std::sin(0.7) + 1 / std::tan(1.1) - std::sqrt(0.3)));
  CHECK(evaluate(parse_expr("r^0.5"), kP) == Approx(std::sqrt(2.0)));
}

TEST_CASE("integer exponents are exact") {
  const Expr e = parse_expr("r^-3");
  REQUIRE(e.kind() == NodeKind::Pow);
  CHECK(e.node().int_exponent == -3);
  CHECK_FALSE(parse_expr("r^2.5").node().int_exponent.has_value());
}

TEST_CASE("parse errors carry offset and token") {
  const ParseError e = parse_failure("2*mass");
  CHECK(e.offset() == 2);
  CHECK(e.token() == "mass");
  CHECK(e.message() == "unknown identifier");

  CHECK(parse_failure("(r + 1").message() == "unbalanced parentheses");
  CHECK(parse_failure("r + 1)").offset() == 5);
  CHECK(parse_failure("r r").offset() == 2);
  CHECK(parse_failure("sin theta").offset() == 4);
  CHECK(parse_failure("").offset() == 0);
  CHECK(parse_failure("r +").offset() < 3);
}

TEST_CASE("bindings expand identifiers") {
  Bindings b{{"m", parse_expr("1 + t/10")}};
  CHECK(evaluate(parse_expr("2*m/r", b), kP) == Approx(2 * 1.03 / 2.0));
  CHECK_THROWS_AS(parse_expr("2*m/r"), ParseError);
}

TEST_CASE("eval_jet examples") {
  const Jet r = eval_jet(parse_expr("r"), kP, 1);
  CHECK(r.value() == 2.0);
  CHECK(extract_partial(r, {0, 1, 0, 0}) == 1.0);
  CHECK(extract_partial(r, {1, 0, 0, 0}) == 0.0);

  const Jet r3 = eval_jet(parse_expr("r^3"), kP, 3);
  CHECK(r3.value() == Approx(8.0));
  CHECK(extract_partial(r3, {0, 1, 0, 0}) == Approx(12.0));
  CHECK(extract_partial(r3, {0, 2, 0, 0}) == Approx(12.0));
  CHECK(extract_partial(r3, {0, 3, 0, 0}) == Approx(6.0));

  const Jet one = eval_jet(parse_expr("sin(theta)^2 + cos(theta)^2"), kP, 3);
  CHECK(one.value() == Approx(1.0).epsilon(1e-14));
  for (int i = 1; i < one.size(); ++i) CHECK(std::abs(one[i]) < 1e-14);
}

TEST_CASE("domain errors point at the failing node") {
  try {
    eval_jet(parse_expr("1 + 1/(r - 2)"), kP, 1);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(e.offset() == 5);
  }
  CHECK_THROWS_AS(evaluate(parse_expr("sqrt(1 - r)"), kP), DomainError);
  CHECK_THROWS_AS(evaluate(parse_expr("cot(theta)"), Point{0, 1, 0, 0}), DomainError);
}

TEST_CASE("cot node matches cos/sin") {
  const Jet a = eval_jet(parse_expr("cot(theta*r)"), kP, 3);
  const Jet b = eval_jet(parse_expr("cos(theta*r)/sin(theta*r)"), kP, 3);
  for (int i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14 * std::max(1.0, std::abs(b[i])));
}

TEST_CASE("parse, unparse, parse is structurally stable") {
  testing::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Expr e = parse_expr(unparse(testing::random_tree(rng, 5)));
    const Expr back = parse_expr(unparse(e));
    CHECK_MESSAGE(structurally_equal(e, back), unparse(e));
  }
  for (const char* text : {"-r^2", "(-r)^2", "2^-1", "1 - (t - r)", "r/(t*theta)", "sin(-theta)^-2"}) {
    const Expr e = parse_expr(text);
    CHECK_MESSAGE(structurally_equal(parse_expr(unparse(e)), e), text);
  }
}

TEST_CASE("uses_coordinate") {
  const Expr e = parse_expr("1 + t^2*sin(theta)");
  CHECK(uses_coordinate(e, Coord::t));
  CHECK(uses_coordinate(e, Coord::theta));
  CHECK_FALSE(uses_coordinate(e, Coord::r));
}

TEST_CASE("random trees: jet partials match central differences") {
  const testing::JetFdStats st = testing::jet_fd_check(20240611, 100);
  CHECK(st.accepted == 100);
  CHECK_MESSAGE(st.worst12 < 1e-6, st.worst_tree);
  CHECK_MESSAGE(st.worst3 < 1e-4, st.worst_tree);
  MESSAGE("worst order-1/2 deviation " << st.worst12 << ", order 3 " << st.worst3);
}
