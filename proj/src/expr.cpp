#include "curvekit/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <system_error>
#include <utility>

#include "curvekit/error.hpp"

namespace curvekit {

struct Expr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  std::string name;
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  Expr a;
  Expr b;
  bool has_var = false;
  bool has_params = false;
};

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->has_var = true;
  return Expr(std::move(n));
}

Expr Expr::parameter(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Parameter;
  n->name = std::move(name);
  n->has_params = true;
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unary;
  n->uop = op;
  n->has_var = operand.depends_on_variable();
  n->has_params = operand.has_parameters();
  n->a = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->bop = op;
  n->has_var = lhs.depends_on_variable() || rhs.depends_on_variable();
  n->has_params = lhs.has_parameters() || rhs.has_parameters();
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Expr::UnaryOp Expr::unary_op() const { return node_->uop; }
Expr::BinaryOp Expr::binary_op() const { return node_->bop; }
const Expr& Expr::operand() const { return node_->a; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }

bool Expr::is_constant(double v) const noexcept {
  return node_->kind == Kind::Constant && node_->value == v;
}
bool Expr::depends_on_variable() const noexcept { return node_ && node_->has_var; }
bool Expr::has_parameters() const noexcept { return node_ && node_->has_params; }

bool operator==(const Expr& x, const Expr& y) noexcept {
  if (x.node_ == y.node_) return true;
  if (!x.node_ || !y.node_) return false;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Constant:
      return a.value == b.value;
    case Expr::Kind::Variable:
      return true;
    case Expr::Kind::Parameter:
      return a.name == b.name;
    case Expr::Kind::Unary:
      return a.uop == b.uop && a.a == b.a;
    case Expr::Kind::Binary:
      return a.bop == b.bop && a.a == b.a && a.b == b.b;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(Expr::BinaryOp::Add, std::move(lhs), parse_term());
      else if (accept('-'))
        lhs = Expr::binary(Expr::BinaryOp::Sub, std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(Expr::BinaryOp::Mul, std::move(lhs), parse_unary());
      else if (accept('/'))
        lhs = Expr::binary(Expr::BinaryOp::Div, std::move(lhs), parse_unary());
      else
        return lhs;
    }
  }

  Expr parse_unary() {
    if (accept('-')) {
      skip_ws();
      // A literal directly after the sign becomes a negative constant, so that
      // negative constants survive printing and reparsing.
      if (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '.')) {
        std::size_t save = pos_;
        double v = parse_number();
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '^') return Expr::constant(-v);
        pos_ = save;
      }
      return Expr::unary(Expr::UnaryOp::Neg, parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return Expr::binary(Expr::BinaryOp::Pow, std::move(base), parse_unary());
    return base;
  }

  double parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && is_digit(text_[pos_])) {
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      } else {
        pos_ = save;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("malformed number");
    }
    return v;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (is_digit(c) || c == '.') return Expr::constant(parse_number());
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      std::string ident(text_.substr(start, pos_ - start));
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        Expr::UnaryOp op;
        if (ident == "sin")
          op = Expr::UnaryOp::Sin;
        else if (ident == "cos")
          op = Expr::UnaryOp::Cos;
        else if (ident == "tan")
          op = Expr::UnaryOp::Tan;
        else if (ident == "sqrt")
          op = Expr::UnaryOp::Sqrt;
        else if (ident == "abs")
          op = Expr::UnaryOp::Abs;
        else
          throw UnknownIdentifier(ident, start);
        ++pos_;
        Expr arg = parse_expr();
        if (!accept(')')) fail("expected ')'");
        return Expr::unary(op, std::move(arg));
      }
      if (ident == "pi") return Expr::constant(kPi);
      if (ident == "t" || ident == "theta") return Expr::variable();
      if (ident == "sin" || ident == "cos" || ident == "tan" || ident == "sqrt" || ident == "abs")
        fail("expected '(' after " + ident);
      return Expr::parameter(std::move(ident));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Variable:
    case Expr::Kind::Parameter:
      return kPrecAtom;
    case Expr::Kind::Unary:
      return e.unary_op() == Expr::UnaryOp::Neg ? kPrecUnary : kPrecAtom;
    case Expr::Kind::Binary:
      switch (e.binary_op()) {
        case Expr::BinaryOp::Add:
        case Expr::BinaryOp::Sub:
          return kPrecAdd;
        case Expr::BinaryOp::Mul:
        case Expr::BinaryOp::Div:
          return kPrecMul;
        case Expr::BinaryOp::Pow:
          return kPrecPow;
      }
  }
  return kPrecAtom;
}

std::string format_number(double v) {
  if (v == kPi) return "pi";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (v < 0) return "(" + s + ")";
  return s;
}

const char* function_name(Expr::UnaryOp op) {
  switch (op) {
    case Expr::UnaryOp::Sin: return "sin";
    case Expr::UnaryOp::Cos: return "cos";
    case Expr::UnaryOp::Tan: return "tan";
    case Expr::UnaryOp::Sqrt: return "sqrt";
    case Expr::UnaryOp::Abs: return "abs";
    case Expr::UnaryOp::Neg: return "-";
  }
  return "?";
}

std::string wrap_if(bool cond, std::string s) { return cond ? "(" + s + ")" : s; }

}  // namespace

std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return format_number(e.value());
    case Expr::Kind::Variable:
      return "t";
    case Expr::Kind::Parameter:
      return e.name();
    case Expr::Kind::Unary: {
      if (e.unary_op() != Expr::UnaryOp::Neg)
        return std::string(function_name(e.unary_op())) + "(" + to_string(e.operand()) + ")";
      const Expr& a = e.operand();
      // "-2" would reparse as a negative constant.
      bool literal = a.kind() == Expr::Kind::Constant && a.value() >= 0 && a.value() != kPi;
      return "-" + wrap_if(literal || precedence(a) < kPrecUnary, to_string(a));
    }
    case Expr::Kind::Binary: {
      const Expr& l = e.lhs();
      const Expr& r = e.rhs();
      if (e.binary_op() == Expr::BinaryOp::Pow) {
        return wrap_if(precedence(l) < kPrecAtom, to_string(l)) + "^" +
               wrap_if(precedence(r) < kPrecUnary, to_string(r));
      }
      int p = precedence(e);
      const char* op = "+";
      switch (e.binary_op()) {
        case Expr::BinaryOp::Add: op = " + "; break;
        case Expr::BinaryOp::Sub: op = " - "; break;
        case Expr::BinaryOp::Mul: op = "*"; break;
        case Expr::BinaryOp::Div: op = "/"; break;
        case Expr::BinaryOp::Pow: break;
      }
      return wrap_if(precedence(l) < p, to_string(l)) + op + wrap_if(precedence(r) <= p, to_string(r));
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

constexpr double kTanPoleTol = 1e-12;
constexpr double kSqrtSlack = 1e-14;

bool is_integer(double v) { return std::abs(v) < 9.0e15 && v == std::nearbyint(v); }

double apply_unary(Expr::UnaryOp op, double u) {
  switch (op) {
    case Expr::UnaryOp::Neg: return -u;
    case Expr::UnaryOp::Sin: return std::sin(u);
    case Expr::UnaryOp::Cos: return std::cos(u);
    case Expr::UnaryOp::Tan: {
      double c = std::cos(u);
      if (std::abs(c) < kTanPoleTol) throw EvalError("tan pole");
      return std::sin(u) / c;
    }
    case Expr::UnaryOp::Sqrt:
      if (u < 0) {
        if (u < -kSqrtSlack) throw EvalError("square root of negative value");
        return 0.0;
      }
      return std::sqrt(u);
    case Expr::UnaryOp::Abs: return std::abs(u);
  }
  return 0.0;
}

double apply_binary(Expr::BinaryOp op, double a, double b) {
  switch (op) {
    case Expr::BinaryOp::Add: return a + b;
    case Expr::BinaryOp::Sub: return a - b;
    case Expr::BinaryOp::Mul: return a * b;
    case Expr::BinaryOp::Div:
      if (b == 0.0) throw EvalError("division by zero");
      return a / b;
    case Expr::BinaryOp::Pow:
      if (a == 0.0 && b < 0) throw EvalError("division by zero");
      if (!is_integer(b) && a < 0) throw EvalError("non-integer power of negative base");
      return std::pow(a, b);
  }
  return 0.0;
}

double eval_node(const Expr& e, double x, const Params& params) {
  double v = 0.0;
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return e.value();
    case Expr::Kind::Variable:
      return x;
    case Expr::Kind::Parameter: {
      auto it = params.find(e.name());
      if (it == params.end()) throw UnboundParameter(e.name());
      return it->second;
    }
    case Expr::Kind::Unary:
      v = apply_unary(e.unary_op(), eval_node(e.operand(), x, params));
      break;
    case Expr::Kind::Binary:
      v = apply_binary(e.binary_op(), eval_node(e.lhs(), x, params), eval_node(e.rhs(), x, params));
      break;
  }
  if (!std::isfinite(v)) throw EvalError("non-finite result");
  return v;
}

}  // namespace

double eval(const Expr& e, double x, const Params& params) { return eval_node(e, x, params); }

// ---------------------------------------------------------------------------
// Folding constructors used by the transformations below.

namespace {

using Op = Expr::BinaryOp;
using Fn = Expr::UnaryOp;

bool is_const(const Expr& e) { return e.kind() == Expr::Kind::Constant; }

bool is_neg(const Expr& e) {
  return e.kind() == Expr::Kind::Unary && e.unary_op() == Fn::Neg;
}

// Folds when both operands are constants and the result is finite.
std::optional<Expr> try_fold(Op op, const Expr& a, const Expr& b) {
  if (!is_const(a) || !is_const(b)) return std::nullopt;
  try {
    return Expr::constant(apply_binary(op, a.value(), b.value()));
  } catch (const EvalError&) {
    return std::nullopt;
  }
}

Expr neg(Expr a) {
  if (is_const(a)) return Expr::constant(-a.value());
  if (is_neg(a)) return a.operand();
  return Expr::unary(Fn::Neg, std::move(a));
}

Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);

Expr add(Expr a, Expr b) {
  if (a.is_constant(0)) return b;
  if (b.is_constant(0)) return a;
  if (auto f = try_fold(Op::Add, a, b)) return *f;
  if (is_neg(b)) return sub(std::move(a), b.operand());
  return Expr::binary(Op::Add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
  if (b.is_constant(0)) return a;
  if (a.is_constant(0)) return neg(std::move(b));
  if (auto f = try_fold(Op::Sub, a, b)) return *f;
  if (is_neg(b)) return add(std::move(a), b.operand());
  return Expr::binary(Op::Sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
  if (a.is_constant(0) || b.is_constant(0)) return Expr::constant(0);
  if (a.is_constant(1)) return b;
  if (b.is_constant(1)) return a;
  if (auto f = try_fold(Op::Mul, a, b)) return *f;
  if (is_neg(a)) return neg(mul(a.operand(), std::move(b)));
  if (is_neg(b)) return neg(mul(std::move(a), b.operand()));
  return Expr::binary(Op::Mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
  if (a.is_constant(0) && !b.is_constant(0)) return Expr::constant(0);
  if (b.is_constant(1)) return a;
  if (auto f = try_fold(Op::Div, a, b)) return *f;
  if (is_neg(a)) return neg(div(a.operand(), std::move(b)));
  return Expr::binary(Op::Div, std::move(a), std::move(b));
}

Expr power(Expr a, Expr b) {
  if (b.is_constant(1)) return a;
  if (b.is_constant(0)) return Expr::constant(1);
  if (auto f = try_fold(Op::Pow, a, b)) return *f;
  return Expr::binary(Op::Pow, std::move(a), std::move(b));
}

Expr fn(Fn op, Expr a) {
  if (op == Fn::Neg) return neg(std::move(a));
  if (is_const(a)) {
    try {
      return Expr::constant(apply_unary(op, a.value()));
    } catch (const EvalError&) {
    }
  }
  return Expr::unary(op, std::move(a));
}

Expr rebuild(Op op, Expr a, Expr b) {
  switch (op) {
    case Op::Add: return add(std::move(a), std::move(b));
    case Op::Sub: return sub(std::move(a), std::move(b));
    case Op::Mul: return mul(std::move(a), std::move(b));
    case Op::Div: return div(std::move(a), std::move(b));
    case Op::Pow: return power(std::move(a), std::move(b));
  }
  return a;
}

}  // namespace

Expr differentiate(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Parameter:
      return Expr::constant(0);
    case Expr::Kind::Variable:
      return Expr::constant(1);
    case Expr::Kind::Unary: {
      const Expr& u = e.operand();
      switch (e.unary_op()) {
        case Fn::Neg: return neg(differentiate(u));
        case Fn::Sin: return mul(fn(Fn::Cos, u), differentiate(u));
        case Fn::Cos: return neg(mul(fn(Fn::Sin, u), differentiate(u)));
        case Fn::Tan:
          return div(differentiate(u), power(fn(Fn::Cos, u), Expr::constant(2)));
        case Fn::Sqrt:
          return div(differentiate(u), mul(Expr::constant(2), fn(Fn::Sqrt, u)));
        case Fn::Abs:
          throw NotDifferentiable("abs is not differentiable");
      }
      break;
    }
    case Expr::Kind::Binary: {
      const Expr& a = e.lhs();
      const Expr& b = e.rhs();
      switch (e.binary_op()) {
        case Op::Add: return add(differentiate(a), differentiate(b));
        case Op::Sub: return sub(differentiate(a), differentiate(b));
        case Op::Mul: return add(mul(differentiate(a), b), mul(a, differentiate(b)));
        case Op::Div:
          return div(sub(mul(differentiate(a), b), mul(a, differentiate(b))),
                     power(b, Expr::constant(2)));
        case Op::Pow:
          if (b.depends_on_variable())
            throw NotDifferentiable("exponent depends on the free variable");
          return mul(mul(b, power(a, sub(b, Expr::constant(1)))), differentiate(a));
      }
      break;
    }
  }
  return Expr::constant(0);
}

Expr substitute(const Expr& e, const Expr& replacement) {
  if (!e.depends_on_variable()) return e;
  switch (e.kind()) {
    case Expr::Kind::Variable:
      return replacement;
    case Expr::Kind::Unary:
      return Expr::unary(e.unary_op(), substitute(e.operand(), replacement));
    case Expr::Kind::Binary:
      return Expr::binary(e.binary_op(), substitute(e.lhs(), replacement),
                          substitute(e.rhs(), replacement));
    default:
      return e;
  }
}

Expr bind(const Expr& e, const Params& params) {
  if (!e.has_parameters()) return e;
  switch (e.kind()) {
    case Expr::Kind::Parameter: {
      auto it = params.find(e.name());
      if (it == params.end()) throw UnboundParameter(e.name());
      return Expr::constant(it->second);
    }
    case Expr::Kind::Unary:
      return fn(e.unary_op(), bind(e.operand(), params));
    case Expr::Kind::Binary:
      return rebuild(e.binary_op(), bind(e.lhs(), params), bind(e.rhs(), params));
    default:
      return e;
  }
}

}  // namespace curvekit
