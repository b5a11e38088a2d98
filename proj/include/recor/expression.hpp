#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace recor {

/// A compiled real function of one variable `x`.
///
/// Grammar: + - * / ^ (also **), unary minus, parentheses, numeric literals,
/// the constants pi and e, and calls such as exp, log, sin, acoth, erf,
/// normal_cdf, digamma, lambertw, pow(a, b). `-x^2` parses as `-(x^2)` and
/// `^` is right-associative.
class Expression {
 public:
  /// Throws ParseError whose message names the column of the offending token.
  static Expression parse(std::string_view text);

  double operator()(double x) const;

  const std::string& text() const noexcept { return text_; }
  bool uses_x() const noexcept;

  /// Names accepted in call position, for diagnostics and docs.
  static std::vector<std::string> function_names();

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const std::vector<Node>> nodes_;
  int root_ = -1;
};

/// Parses and evaluates an expression that must not reference `x`
/// (domain bounds such as "-pi/2").
double evaluate_constant(std::string_view text);

/// Special functions the language exposes that the C library lacks.
double digamma(double x);
/// Principal branch W0 for x >= -1/e.
double lambert_w0(double x);

}  // namespace recor
