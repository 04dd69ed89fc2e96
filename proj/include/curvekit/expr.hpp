#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "curvekit/types.hpp"

namespace curvekit {

// Immutable expression tree in one free variable with named parameters.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
//
// Functions: sin cos tan sqrt abs. Constant: pi. Free variable: t or theta.
// Any other identifier is a parameter. '^' binds tighter than unary minus,
// so "-2^2" is -4, and is right-associative.
class Expr {
 public:
  enum class Kind { Constant, Variable, Parameter, Unary, Binary };
  enum class UnaryOp { Neg, Sin, Cos, Tan, Sqrt, Abs };
  enum class BinaryOp { Add, Sub, Mul, Div, Pow };

  static Expr constant(double value);
  static Expr variable();
  static Expr parameter(std::string name);
  static Expr unary(UnaryOp op, Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

  Kind kind() const noexcept;
  double value() const;
  const std::string& name() const;
  UnaryOp unary_op() const;
  BinaryOp binary_op() const;
  const Expr& operand() const;
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_constant(double v) const noexcept;
  bool depends_on_variable() const noexcept;
  bool has_parameters() const noexcept;

  // Structural (node-for-node) equality.
  friend bool operator==(const Expr& a, const Expr& b) noexcept;

 private:
  struct Node;
  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr parse(std::string_view text);

// Text that parses back to a structurally identical tree.
std::string to_string(const Expr& e);

// Throws UnboundParameter for a parameter missing from params, EvalError for
// division by zero, tan poles, even roots of negatives and non-finite results.
double eval(const Expr& e, double x, const Params& params = {});

// Derivative with respect to the free variable. Throws NotDifferentiable for
// abs and for exponents that depend on the variable.
Expr differentiate(const Expr& e);

// Replaces every occurrence of the free variable by `replacement`.
Expr substitute(const Expr& e, const Expr& replacement);

// Replaces parameters by their values and folds constants. Throws
// UnboundParameter if any parameter is missing.
Expr bind(const Expr& e, const Params& params);

}  // namespace curvekit
