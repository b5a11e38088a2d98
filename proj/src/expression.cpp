#include "recor/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "recor/error.hpp"

namespace recor {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Unary = double (*)(double);
using Binary = double (*)(double, double);

struct UnaryEntry {
  std::string_view name;
  Unary fn;
};

struct BinaryEntry {
  std::string_view name;
  Binary fn;
};

double sign_of(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

const UnaryEntry kUnary[] = {
    {"exp", [](double v) { return std::exp(v); }},
    {"expm1", [](double v) { return std::expm1(v); }},
    {"log", [](double v) { return std::log(v); }},
    {"ln", [](double v) { return std::log(v); }},
    {"log10", [](double v) { return std::log10(v); }},
    {"log2", [](double v) { return std::log2(v); }},
    {"log1p", [](double v) { return std::log1p(v); }},
    {"sqrt", [](double v) { return std::sqrt(v); }},
    {"cbrt", [](double v) { return std::cbrt(v); }},
    {"abs", [](double v) { return std::abs(v); }},
    {"floor", [](double v) { return std::floor(v); }},
    {"ceil", [](double v) { return std::ceil(v); }},
    {"frac", [](double v) { return v - std::floor(v); }},
    {"sign", sign_of},
    {"sin", [](double v) { return std::sin(v); }},
    {"cos", [](double v) { return std::cos(v); }},
    {"tan", [](double v) { return std::tan(v); }},
    {"cot", [](double v) { return 1.0 / std::tan(v); }},
    {"sec", [](double v) { return 1.0 / std::cos(v); }},
    {"csc", [](double v) { return 1.0 / std::sin(v); }},
    {"asin", [](double v) { return std::asin(v); }},
    {"acos", [](double v) { return std::acos(v); }},
    {"atan", [](double v) { return std::atan(v); }},
    // continuous branch onto (0, pi), decreasing on the whole line
    {"acot", [](double v) { return std::numbers::pi / 2 - std::atan(v); }},
    {"asec", [](double v) { return std::acos(1.0 / v); }},
    {"acsc", [](double v) { return std::asin(1.0 / v); }},
    {"sinh", [](double v) { return std::sinh(v); }},
    {"cosh", [](double v) { return std::cosh(v); }},
    {"tanh", [](double v) { return std::tanh(v); }},
    {"coth", [](double v) { return 1.0 / std::tanh(v); }},
    {"sech", [](double v) { return 1.0 / std::cosh(v); }},
    {"csch", [](double v) { return 1.0 / std::sinh(v); }},
    {"asinh", [](double v) { return std::asinh(v); }},
    {"acosh", [](double v) { return std::acosh(v); }},
    {"atanh", [](double v) { return std::atanh(v); }},
    {"acoth", [](double v) { return 0.5 * std::log((v + 1.0) / (v - 1.0)); }},
    {"asech", [](double v) { return std::acosh(1.0 / v); }},
    {"acsch", [](double v) { return std::asinh(1.0 / v); }},
    {"erf", [](double v) { return std::erf(v); }},
    {"erfc", [](double v) { return std::erfc(v); }},
    {"normal_cdf", [](double v) { return 0.5 * std::erfc(-v / std::numbers::sqrt2); }},
    {"logistic", [](double v) { return 1.0 / (1.0 + std::exp(-v)); }},
    {"gamma", [](double v) { return std::tgamma(v); }},
    {"lgamma", [](double v) { return std::lgamma(v); }},
    {"digamma", digamma},
    {"lambertw", lambert_w0},
};

const BinaryEntry kBinary[] = {
    {"pow", [](double a, double b) { return std::pow(a, b); }},
    {"atan2", [](double a, double b) { return std::atan2(a, b); }},
    {"hypot", [](double a, double b) { return std::hypot(a, b); }},
    {"min", [](double a, double b) { return std::fmin(a, b); }},
    {"max", [](double a, double b) { return std::fmax(a, b); }},
};

}  // namespace

struct Expression::Node {
  enum Kind { constant, variable, neg, add, sub, mul, div, power, call1, call2 } kind;
  double value = 0;
  int a = -1;
  int b = -1;
  Unary f1 = nullptr;
  Binary f2 = nullptr;
};

namespace {

using Node = Expression::Node;

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  int parse_all(std::vector<Node>& out) {
    nodes_ = &out;
    const int root = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression", 0,
                     "column " + std::to_string(pos_ + 1) + ": " + what + " in '" +
                         std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  int push(Node n) {
    nodes_->push_back(n);
    return static_cast<int>(nodes_->size() - 1);
  }

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept("+")) {
        lhs = push({Node::add, 0, lhs, term()});
      } else if (accept("-")) {
        lhs = push({Node::sub, 0, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  int term() {
    int lhs = unary();
    for (;;) {
      skip_ws();
      if (s_.substr(pos_, 2) == "**") return lhs;
      if (accept("*")) {
        lhs = push({Node::mul, 0, lhs, unary()});
      } else if (accept("/")) {
        lhs = push({Node::div, 0, lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  int unary() {
    if (accept("-")) return push({Node::neg, 0, unary()});
    if (accept("+")) return unary();
    return power();
  }

  int power() {
    const int base = primary();
    if (accept("^") || accept("**")) return push({Node::power, 0, base, unary()});
    return base;
  }

  int primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = expr();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int number() {
    double v = 0;
    const char* begin = s_.data() + pos_;
    const auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return push({Node::constant, v});
  }

  int identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = s_.substr(start, pos_ - start);
    if (!accept("(")) {
      if (name == "x") return push({Node::variable});
      if (name == "pi") return push({Node::constant, std::numbers::pi});
      if (name == "e") return push({Node::constant, std::numbers::e});
      pos_ = start;
      fail("unknown name '" + std::string(name) + "'");
    }
    const int first = expr();
    int second = -1;
    if (accept(",")) second = expr();
    if (!accept(")")) fail("expected ')' after arguments of " + std::string(name));

    if (second < 0) {
      for (const auto& u : kUnary) {
        if (u.name == name) return push({Node::call1, 0, first, -1, u.fn});
      }
    } else {
      for (const auto& b : kBinary) {
        if (b.name == name) return push({Node::call2, 0, first, second, nullptr, b.fn});
      }
    }
    pos_ = start;
    fail("unknown function '" + std::string(name) + "' with " + (second < 0 ? "1" : "2") +
         " argument(s)");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<Node>* nodes_ = nullptr;
};

double eval_node(const std::vector<Node>& nodes, int i, double x) {
  const Node& n = nodes[static_cast<std::size_t>(i)];
  switch (n.kind) {
    case Node::constant: return n.value;
    case Node::variable: return x;
    case Node::neg: return -eval_node(nodes, n.a, x);
    case Node::add: return eval_node(nodes, n.a, x) + eval_node(nodes, n.b, x);
    case Node::sub: return eval_node(nodes, n.a, x) - eval_node(nodes, n.b, x);
    case Node::mul: return eval_node(nodes, n.a, x) * eval_node(nodes, n.b, x);
    case Node::div: return eval_node(nodes, n.a, x) / eval_node(nodes, n.b, x);
    case Node::power: return std::pow(eval_node(nodes, n.a, x), eval_node(nodes, n.b, x));
    case Node::call1: return n.f1(eval_node(nodes, n.a, x));
    case Node::call2: return n.f2(eval_node(nodes, n.a, x), eval_node(nodes, n.b, x));
  }
  return kNaN;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  auto nodes = std::make_shared<std::vector<Node>>();
  Expression e;
  e.root_ = Parser(text).parse_all(*nodes);
  e.text_ = std::string(text);
  e.nodes_ = std::move(nodes);
  return e;
}

double Expression::operator()(double x) const {
  if (!nodes_) return kNaN;
  return eval_node(*nodes_, root_, x);
}

bool Expression::uses_x() const noexcept {
  if (!nodes_) return false;
  for (const Node& n : *nodes_) {
    if (n.kind == Node::variable) return true;
  }
  return false;
}

std::vector<std::string> Expression::function_names() {
  std::vector<std::string> out;
  for (const auto& u : kUnary) out.emplace_back(u.name);
  for (const auto& b : kBinary) out.emplace_back(b.name);
  return out;
}

double evaluate_constant(std::string_view text) {
  const Expression e = Expression::parse(text);
  if (e.uses_x()) {
    throw ParseError("expression", 0, "'" + std::string(text) + "' must not reference x");
  }
  return e(0.0);
}

double digamma(double x) {
  if (std::isnan(x)) return x;
  if (x <= 0 && x == std::floor(x)) return kNaN;
  if (x < 0) {
    // reflection: psi(1 - x) - psi(x) = pi cot(pi x)
    return digamma(1.0 - x) - std::numbers::pi / std::tan(std::numbers::pi * x);
  }
  double acc = 0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double tail =
      inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))));
  return acc + std::log(x) - 0.5 * inv - tail;
}

double lambert_w0(double x) {
  constexpr double branch = -1.0 / std::numbers::e;
  if (std::isnan(x) || x < branch) return kNaN;
  if (x == branch) return -1.0;
  if (x == 0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < 0.25) {
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 3.0) {
    w = 0.5 * std::log1p(x) + 0.25;
  } else {
    const double l = std::log(x);
    w = l - std::log(l);
  }
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace recor
