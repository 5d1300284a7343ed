#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "afflab/algebra.hpp"
#include "afflab/btransform.hpp"
#include "afflab/error.hpp"
#include "afflab/operator.hpp"
#include "afflab/trace.hpp"

// Non-commutative polynomial expressions over bound operators, plus the
// unary maps adj, tr, B and UB.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | primary
//   primary := NUMBER ['i'] | IDENT | FUNC '(' expr ')' | '(' expr ')'
//   FUNC    := adj | tr | B | UB
namespace afflab::lab {

struct Expr {
  enum class Kind { number, ident, add, sub, mul, neg, call };

  Kind kind = Kind::number;
  Complex value{};
  std::string name;  // identifier or function name
  std::vector<Expr> args;
  std::size_t pos = 0;
};

namespace detail {

inline bool is_function(const std::string& s) { return s == "adj" || s == "tr" || s == "B" || s == "UB"; }

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at position " + std::to_string(i_), std::nullopt, i_);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Expr binary(Expr::Kind kind, Expr lhs, Expr rhs, std::size_t pos) {
    Expr e;
    e.kind = kind;
    e.pos = pos;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      skip();
      const std::size_t pos = i_;
      if (eat('+')) {
        lhs = binary(Expr::Kind::add, std::move(lhs), term(), pos);
      } else if (eat('-')) {
        lhs = binary(Expr::Kind::sub, std::move(lhs), term(), pos);
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      skip();
      const std::size_t pos = i_;
      if (!eat('*')) return lhs;
      lhs = binary(Expr::Kind::mul, std::move(lhs), unary(), pos);
    }
  }

  Expr unary() {
    skip();
    const std::size_t pos = i_;
    if (eat('-')) {
      Expr e;
      e.kind = Expr::Kind::neg;
      e.pos = pos;
      e.args.push_back(unary());
      return e;
    }
    return primary();
  }

  Expr primary() {
    skip();
    const std::size_t pos = i_;
    if (i_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) id += s_[i_++];
      skip();
      if (is_function(id) && i_ < s_.size() && s_[i_] == '(') {
        ++i_;
        Expr e;
        e.kind = Expr::Kind::call;
        e.name = id;
        e.pos = pos;
        e.args.push_back(expr());
        if (!eat(')')) fail("expected ')'");
        return e;
      }
      if (is_function(id)) fail("function '" + id + "' needs an argument in parentheses");
      Expr e;
      e.kind = Expr::Kind::ident;
      e.name = id;
      e.pos = pos;
      return e;
    }
    if (eat('(')) {
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    const std::size_t pos = i_;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s_.substr(i_), &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    i_ += used;
    Expr e;
    e.kind = Expr::Kind::number;
    e.pos = pos;
    if (i_ < s_.size() && s_[i_] == 'i' &&
        !(i_ + 1 < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_ + 1])) || s_[i_ + 1] == '_'))) {
      ++i_;
      e.value = Complex(0.0, v);
    } else {
      e.value = Complex(v, 0.0);
    }
    return e;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Expr parse_expr(const std::string& text) { return detail::Parser(text).parse(); }

/// Fully parenthesized rendering; parse_expr(to_string(e)) evaluates like e.
inline std::string to_string(const Expr& e) {
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  switch (e.kind) {
    case Expr::Kind::number:
      if (e.value.imag() == 0.0) return "(" + num(e.value.real()) + ")";
      return "(" + num(e.value.real()) + "+" + num(e.value.imag()) + "i)";
    case Expr::Kind::ident: return e.name;
    case Expr::Kind::add: return "(" + to_string(e.args[0]) + " + " + to_string(e.args[1]) + ")";
    case Expr::Kind::sub: return "(" + to_string(e.args[0]) + " - " + to_string(e.args[1]) + ")";
    case Expr::Kind::mul: return "(" + to_string(e.args[0]) + " * " + to_string(e.args[1]) + ")";
    case Expr::Kind::neg: return "(-" + to_string(e.args[0]) + ")";
    case Expr::Kind::call: return e.name + "(" + to_string(e.args[0]) + ")";
  }
  return "";
}

using ExprValue = std::variant<Complex, AffiliatedOperator, CentralElement>;
using Bindings = std::map<std::string, ExprValue>;

namespace detail {

inline AffiliatedOperator as_operator(const ExprValue& v, const ShapePtr& shape) {
  if (const auto* op = std::get_if<AffiliatedOperator>(&v)) return *op;
  if (const auto* z = std::get_if<CentralElement>(&v)) return z->as_operator();
  return AffiliatedOperator::scalar_identity(shape, std::get<Complex>(v));
}

inline CentralElement as_central(const ExprValue& v, const ShapePtr& shape) {
  if (const auto* z = std::get_if<CentralElement>(&v)) return *z;
  return CentralElement::constant(shape, std::get<Complex>(v));
}

inline const ShapePtr* shape_of(const ExprValue& v) {
  if (const auto* op = std::get_if<AffiliatedOperator>(&v)) return &op->shape_ptr();
  if (const auto* z = std::get_if<CentralElement>(&v)) return &z->shape_ptr();
  return nullptr;
}

inline ExprValue combine(Expr::Kind kind, const ExprValue& a, const ExprValue& b) {
  const ShapePtr* sa = shape_of(a);
  const ShapePtr* sb = shape_of(b);
  if (sa && sb) require_same_shape(*sa, *sb, "expression operands live on different algebras");
  if (!sa && !sb) {
    const Complex x = std::get<Complex>(a), y = std::get<Complex>(b);
    if (kind == Expr::Kind::add) return x + y;
    if (kind == Expr::Kind::sub) return x - y;
    return x * y;
  }
  const ShapePtr& shape = sa ? *sa : *sb;
  const bool any_operator = std::holds_alternative<AffiliatedOperator>(a) || std::holds_alternative<AffiliatedOperator>(b);
  if (!any_operator) {
    const auto x = as_central(a, shape), y = as_central(b, shape);
    if (kind == Expr::Kind::add) return x + y;
    if (kind == Expr::Kind::sub) return x - y;
    if (std::holds_alternative<Complex>(a)) return std::get<Complex>(a) * y;
    if (std::holds_alternative<Complex>(b)) return std::get<Complex>(b) * x;
    return x * y;
  }
  if (kind == Expr::Kind::mul) {
    if (const auto* c = std::get_if<Complex>(&a)) return *c * as_operator(b, shape);
    if (const auto* c = std::get_if<Complex>(&b)) return *c * as_operator(a, shape);
  }
  const auto x = as_operator(a, shape), y = as_operator(b, shape);
  if (kind == Expr::Kind::add) return x + y;
  if (kind == Expr::Kind::sub) return x - y;
  return x * y;
}

inline ExprValue apply(const std::string& fn, const ExprValue& v) {
  if (fn == "adj") {
    if (const auto* c = std::get_if<Complex>(&v)) return std::conj(*c);
    if (const auto* z = std::get_if<CentralElement>(&v)) return adjoint(*z);
    return adjoint(std::get<AffiliatedOperator>(v));
  }
  if (fn == "tr") {
    if (const auto* op = std::get_if<AffiliatedOperator>(&v)) return trace_affiliated(*op);
    return v;
  }
  const bool forward = fn == "B";
  if (const auto* c = std::get_if<Complex>(&v)) {
    const double r = std::abs(*c);
    if (!forward && !(r < 1.0)) throw Error(ErrorKind::NotStrictContraction, "UB of a scalar of modulus >= 1");
    return forward ? *c / (1.0 + r) : *c / (1.0 - r);
  }
  if (const auto* z = std::get_if<CentralElement>(&v)) {
    return CentralElement(z->shape_ptr(), [z = *z, forward](std::size_t k) {
      const Complex c = z.value(k);
      const double r = std::abs(c);
      if (!forward && !(r < 1.0)) throw Error(ErrorKind::NotStrictContraction, "fiber is not a strict contraction", k);
      return forward ? c / (1.0 + r) : c / (1.0 - r);
    });
  }
  const auto& op = std::get<AffiliatedOperator>(v);
  return forward ? ExprValue(b_transform(op).op()) : ExprValue(inverse_b(op));
}

}  // namespace detail

/// Evaluates fiberwise. Scalars act as multiples of the identity, tr yields
/// a central element, and products keep operand order.
inline ExprValue eval_expr(const Expr& e, const Bindings& bindings) {
  switch (e.kind) {
    case Expr::Kind::number: return e.value;
    case Expr::Kind::ident: {
      auto it = bindings.find(e.name);
      if (it == bindings.end()) {
        throw Error(ErrorKind::UnboundIdentifier, "no binding for '" + e.name + "'", std::nullopt, e.pos);
      }
      return it->second;
    }
    case Expr::Kind::neg: return detail::combine(Expr::Kind::mul, Complex(-1.0), eval_expr(e.args[0], bindings));
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
      return detail::combine(e.kind, eval_expr(e.args[0], bindings), eval_expr(e.args[1], bindings));
    case Expr::Kind::call: return detail::apply(e.name, eval_expr(e.args[0], bindings));
  }
  throw Error(ErrorKind::ParseError, "unknown expression node");
}

inline ExprValue eval_expr(const std::string& text, const Bindings& bindings) {
  return eval_expr(parse_expr(text), bindings);
}

}  // namespace afflab::lab
