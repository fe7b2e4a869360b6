#include "curvlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace curvlab {
namespace {

Expr make(NodeKind k, std::vector<Expr> args, std::size_t offset = 0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = std::move(args);
  n->offset = offset;
  return Expr(std::move(n));
}

Expr make_pow(const Expr& base, const Expr& exponent, std::size_t offset) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->offset = offset;
  n->args.push_back(base);
  // Integral constants (optionally negated) become exact integer exponents.
  const Node* e = &exponent.node();
  bool neg = false;
  if (e->kind == NodeKind::Negate && e->args[0].kind() == NodeKind::Constant) {
    neg = true;
    e = &e->args[0].node();
  }
  if (e->kind == NodeKind::Constant && std::floor(e->value) == e->value &&
      std::abs(e->value) < 1e15) {
    const auto v = static_cast<long long>(e->value);
    n->int_exponent = neg ? -v : v;
  } else {
    n->args.push_back(exponent);
  }
  return Expr(std::move(n));
}

const char* const kFunctions[] = {"sin", "cos", "sqrt", "cot"};
const NodeKind kFunctionKinds[] = {NodeKind::Sin, NodeKind::Cos, NodeKind::Sqrt, NodeKind::Cot};
const char* const kCoordNames[] = {"t", "r", "theta", "phi"};

class Parser {
 public:
  Parser(std::string_view src, const Bindings* b) : src_(src), bindings_(b) {}

  Expr parse() {
    Expr e = additive();
    skip_ws();
    if (pos_ < src_.size()) {
      if (src_[pos_] == ')') fail(pos_, "unbalanced parentheses", ")");
      fail(pos_, "trailing tokens", token_at(pos_));
    }
    return e;
  }

 private:
  std::string_view src_;
  const Bindings* bindings_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::size_t at, const std::string& msg, const std::string& tok) const {
    throw ParseError(std::min(at, src_.empty() ? 0 : src_.size() - 1), msg, tok);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string token_at(std::size_t at) const {
    if (at >= src_.size()) return "";
    std::size_t end = at;
    auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; };
    if (ident(src_[at])) {
      while (end < src_.size() && ident(src_[end])) ++end;
    } else {
      end = at + 1;
    }
    return std::string(src_.substr(at, end - at));
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  Expr additive() {
    Expr lhs = multiplicative();
    for (;;) {
      skip_ws();
      if (pos_ >= src_.size()) return lhs;
      const char c = src_[pos_];
      if (c != '+' && c != '-') return lhs;
      const std::size_t at = pos_++;
      Expr rhs = multiplicative();
      lhs = make(c == '+' ? NodeKind::Add : NodeKind::Sub, {lhs, rhs}, at);
    }
  }

  Expr multiplicative() {
    Expr lhs = power();
    for (;;) {
      skip_ws();
      if (pos_ >= src_.size()) return lhs;
      const char c = src_[pos_];
      if (c != '*' && c != '/') return lhs;
      const std::size_t at = pos_++;
      Expr rhs = power();
      lhs = make(c == '*' ? NodeKind::Mul : NodeKind::Div, {lhs, rhs}, at);
    }
  }

  // Unary minus binds tighter than '^'; '^' is right associative.
  Expr power() {
    Expr base = unary();
    if (peek('^')) {
      const std::size_t at = pos_++;
      Expr exponent = power();
      return make_pow(base, exponent, at);
    }
    return base;
  }

  Expr unary() {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '-') {
      const std::size_t at = pos_++;
      return make(NodeKind::Negate, {unary()}, at);
    }
    if (pos_ < src_.size() && src_[pos_] == '+') {
      ++pos_;
      return unary();
    }
    return primary();
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail(pos_, "unexpected end of input", "");
    const char c = src_[pos_];
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      Expr inner = additive();
      if (!peek(')')) fail(at, "unbalanced parentheses", "(");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == ')') fail(at, "unbalanced parentheses", ")");
    fail(at, "unexpected token", token_at(at));
  }

  Expr number() {
    const std::size_t at = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    };
    digits();
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      digits();
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
      if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
        end = e;
        digits();
      }
    }
    const std::string text(src_.substr(at, end - at));
    if (text == ".") fail(at, "malformed number", text);
    char* stop = nullptr;
    const double v = std::strtod(text.c_str(), &stop);
    if (stop != text.c_str() + text.size()) fail(at, "malformed number", text);
    pos_ = end;
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Constant;
    n->value = v;
    n->offset = at;
    return Expr(std::move(n));
  }

  Expr identifier() {
    const std::size_t at = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view name = src_.substr(at, pos_ - at);
    for (int f = 0; f < 4; ++f) {
      if (name != kFunctions[f]) continue;
      if (!peek('(')) fail(pos_, std::string("expected '(' after ") + kFunctions[f], token_at(pos_));
      const std::size_t open = pos_++;
      Expr arg = additive();
      if (!peek(')')) fail(open, "unbalanced parentheses", "(");
      ++pos_;
      return make(kFunctionKinds[f], {arg}, at);
    }
    for (int c = 0; c < kDim; ++c) {
      if (name != kCoordNames[c]) continue;
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Coordinate;
      n->coord = c;
      n->offset = at;
      return Expr(std::move(n));
    }
    if (bindings_) {
      auto it = bindings_->find(name);
      if (it != bindings_->end()) return it->second;
    }
    fail(at, "unknown identifier", std::string(name));
  }
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string wrap(const Expr& e) {
  const NodeKind k = e.kind();
  std::string s = unparse(e);
  if (k == NodeKind::Constant || k == NodeKind::Coordinate || k == NodeKind::Sin ||
      k == NodeKind::Cos || k == NodeKind::Sqrt || k == NodeKind::Cot)
    return s;
  return "(" + s + ")";
}

Jet eval_node(const Node& n, const Point& p, int order) {
  try {
    switch (n.kind) {
      case NodeKind::Constant:
        return Jet::constant(n.value, order);
      case NodeKind::Coordinate:
        return Jet::variable(n.coord, p[n.coord], order);
      case NodeKind::Negate:
        return -eval_node(n.args[0].node(), p, order);
      case NodeKind::Add:
        return eval_node(n.args[0].node(), p, order) + eval_node(n.args[1].node(), p, order);
      case NodeKind::Sub:
        return eval_node(n.args[0].node(), p, order) - eval_node(n.args[1].node(), p, order);
      case NodeKind::Mul:
        return eval_node(n.args[0].node(), p, order) * eval_node(n.args[1].node(), p, order);
      case NodeKind::Div:
        return eval_node(n.args[0].node(), p, order) / eval_node(n.args[1].node(), p, order);
      case NodeKind::Pow: {
        Jet base = eval_node(n.args[0].node(), p, order);
        if (n.int_exponent) return pow(base, *n.int_exponent);
        return pow(base, eval_node(n.args[1].node(), p, order));
      }
      case NodeKind::Sin:
        return sin(eval_node(n.args[0].node(), p, order));
      case NodeKind::Cos:
        return cos(eval_node(n.args[0].node(), p, order));
      case NodeKind::Sqrt:
        return sqrt(eval_node(n.args[0].node(), p, order));
      case NodeKind::Cot:
        return cot(eval_node(n.args[0].node(), p, order));
    }
  } catch (const DomainError& e) {
    // Keep the innermost location.
    if (e.offset() != 0 || n.offset == 0) throw;
    throw DomainError(e.what(), n.offset);
  }
  throw std::logic_error("unknown node kind");
}

}  // namespace

const char* coord_name(int c) { return kCoordNames[c]; }

NodeKind Expr::kind() const { return node_->kind; }

Expr Expr::constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::coordinate(Coord c) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Coordinate;
  n->coord = static_cast<int>(c);
  return Expr(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return make(NodeKind::Add, {a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return make(NodeKind::Sub, {a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return make(NodeKind::Mul, {a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return make(NodeKind::Div, {a, b}); }
Expr operator-(const Expr& a) { return make(NodeKind::Negate, {a}); }
Expr pow(const Expr& base, long long n) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Pow;
  node->args.push_back(base);
  node->int_exponent = n;
  return Expr(std::move(node));
}
Expr pow(const Expr& base, const Expr& exponent) { return make_pow(base, exponent, 0); }
Expr sin(const Expr& a) { return make(NodeKind::Sin, {a}); }
Expr cos(const Expr& a) { return make(NodeKind::Cos, {a}); }
Expr sqrt(const Expr& a) { return make(NodeKind::Sqrt, {a}); }
Expr cot(const Expr& a) { return make(NodeKind::Cot, {a}); }

ParseError::ParseError(std::size_t offset, std::string message, std::string token)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message +
                         (token.empty() ? "" : " \"" + token + "\"")),
      offset_(offset),
      message_(std::move(message)),
      token_(std::move(token)) {}

Expr parse_expr(std::string_view source) { return Parser(source, nullptr).parse(); }

Expr parse_expr(std::string_view source, const Bindings& bindings) {
  return Parser(source, &bindings).parse();
}

std::string unparse(const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Constant:
      if (n.value < 0 || std::signbit(n.value)) return "(-" + format_number(-n.value) + ")";
      return format_number(n.value);
    case NodeKind::Coordinate:
      return kCoordNames[n.coord];
    case NodeKind::Negate:
      return "-" + wrap(n.args[0]);
    case NodeKind::Add:
      return wrap(n.args[0]) + " + " + wrap(n.args[1]);
    case NodeKind::Sub:
      return wrap(n.args[0]) + " - " + wrap(n.args[1]);
    case NodeKind::Mul:
      return wrap(n.args[0]) + "*" + wrap(n.args[1]);
    case NodeKind::Div:
      return wrap(n.args[0]) + "/" + wrap(n.args[1]);
    case NodeKind::Pow:
      if (n.int_exponent) {
        const long long k = *n.int_exponent;
        return wrap(n.args[0]) + "^" + (k < 0 ? "(-" + std::to_string(-k) + ")" : std::to_string(k));
      }
      return wrap(n.args[0]) + "^" + wrap(n.args[1]);
    case NodeKind::Sin:
      return "sin(" + unparse(n.args[0]) + ")";
    case NodeKind::Cos:
      return "cos(" + unparse(n.args[0]) + ")";
    case NodeKind::Sqrt:
      return "sqrt(" + unparse(n.args[0]) + ")";
    case NodeKind::Cot:
      return "cot(" + unparse(n.args[0]) + ")";
  }
  return "";
}

bool structurally_equal(const Expr& a, const Expr& b) {
  const Node& x = a.node();
  const Node& y = b.node();
  if (x.kind != y.kind || x.args.size() != y.args.size()) return false;
  if (x.kind == NodeKind::Constant && x.value != y.value) return false;
  if (x.kind == NodeKind::Coordinate && x.coord != y.coord) return false;
  if (x.int_exponent != y.int_exponent) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!structurally_equal(x.args[i], y.args[i])) return false;
  return true;
}

bool uses_coordinate(const Expr& e, Coord c) {
  const Node& n = e.node();
  if (n.kind == NodeKind::Coordinate) return n.coord == static_cast<int>(c);
  for (const auto& a : n.args)
    if (uses_coordinate(a, c)) return true;
  return false;
}

Jet eval_jet(const Expr& e, const Point& p, int order) {
  if (order < 0 || order > kMaxOrder) throw std::invalid_argument("jet order must be in 0..3");
  return eval_node(e.node(), p, order);
}

double evaluate(const Expr& e, const Point& p) { return eval_jet(e, p, 0).value(); }

}  // namespace curvlab
