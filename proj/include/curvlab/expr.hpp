#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "curvlab/jet.hpp"

namespace curvlab {

// Chart point (t, r, theta, phi).
using Point = std::array<double, kDim>;

enum class Coord { t = 0, r = 1, theta = 2, phi = 3 };

const char* coord_name(int c);

enum class NodeKind { Constant, Coordinate, Negate, Add, Sub, Mul, Div, Pow, Sin, Cos, Sqrt, Cot };

struct Node;

class Expr {
 public:
  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  const Node& node() const { return *node_; }
  bool empty() const { return !node_; }
  NodeKind kind() const;

  static Expr constant(double v);
  static Expr coordinate(Coord c);

 private:
  std::shared_ptr<const Node> node_;
};

struct Node {
  NodeKind kind;
  double value = 0.0;                       // Constant
  int coord = 0;                            // Coordinate
  std::optional<long long> int_exponent;    // Pow with exact integer exponent
  std::vector<Expr> args;                   // operands; Pow keeps base (and Expr exponent)
  std::size_t offset = 0;                   // byte offset in the source text
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, long long n);
Expr pow(const Expr& base, const Expr& exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);
Expr cot(const Expr& a);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string message, std::string token);
  std::size_t offset() const { return offset_; }
  const std::string& message() const { return message_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t offset_;
  std::string message_;
  std::string token_;
};

// Extra identifiers that expand to fixed subtrees (parameters, helper scalars).
using Bindings = std::map<std::string, Expr, std::less<>>;

Expr parse_expr(std::string_view source);
Expr parse_expr(std::string_view source, const Bindings& bindings);

std::string unparse(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);
bool uses_coordinate(const Expr& e, Coord c);

Jet eval_jet(const Expr& e, const Point& p, int order);
double evaluate(const Expr& e, const Point& p);

}  // namespace curvlab
