#include "ctherm/expr.hpp"

namespace ctherm::expr {
namespace {

bool is_literal(const Expression& e, double v) {
  const auto lit = e.literal_value();
  return lit && *lit == v;
}

// Zero/identity folding only; keeps derivative trees from carrying dead
// branches.
Expression add(const Expression& a, const Expression& b) {
  if (is_literal(a, 0.0)) return b;
  if (is_literal(b, 0.0)) return a;
  return a + b;
}

Expression sub(const Expression& a, const Expression& b) {
  if (is_literal(b, 0.0)) return a;
  if (is_literal(a, 0.0)) return -b;
  return a - b;
}

Expression mul(const Expression& a, const Expression& b) {
  if (is_literal(a, 0.0) || is_literal(b, 0.0)) return Expression::constant(0.0);
  if (is_literal(a, 1.0)) return b;
  if (is_literal(b, 1.0)) return a;
  return a * b;
}

Expression div(const Expression& a, const Expression& b) {
  if (is_literal(a, 0.0)) return Expression::constant(0.0);
  if (is_literal(b, 1.0)) return a;
  return a / b;
}

Expression neg(const Expression& a) {
  if (is_literal(a, 0.0)) return Expression::constant(0.0);
  if (const auto* n = std::get_if<Node::Negate>(&a.node().data)) return Expression(n->operand);
  return -a;
}

Expression d(const Expression& e, std::string_view wrt);

// d(b^x) for a power node; `exponent_constant` selects the c * b^(c-1) rule.
Expression d_pow(const Expression& base, const Expression& exponent, std::string_view wrt) {
  const Expression db = d(base, wrt);
  if (exponent.is_constant()) {
    if (is_literal(db, 0.0)) return Expression::constant(0.0);
    Expression reduced;
    if (const auto c = exponent.literal_value())
      reduced = Expression::constant(*c - 1.0);
    else
      reduced = exponent - Expression::constant(1.0);
    return mul(mul(exponent, pow(base, reduced)), db);
  }
  // b^y * (y' ln b + y b' / b)
  const Expression dy = d(exponent, wrt);
  const Expression inner = add(mul(dy, ln(base)), div(mul(exponent, db), base));
  return mul(pow(base, exponent), inner);
}

Expression d(const Expression& e, std::string_view wrt) {
  const Node& n = e.node();
  if (std::holds_alternative<Node::Number>(n.data)) return Expression::constant(0.0);
  if (const auto* v = std::get_if<Node::Variable>(&n.data))
    return Expression::constant(v->name == wrt ? 1.0 : 0.0);
  if (const auto* ng = std::get_if<Node::Negate>(&n.data)) return neg(d(Expression(ng->operand), wrt));
  if (const auto* b = std::get_if<Node::Binary>(&n.data)) {
    const Expression lhs(b->lhs);
    const Expression rhs(b->rhs);
    switch (b->op) {
      case BinaryOp::Add: return add(d(lhs, wrt), d(rhs, wrt));
      case BinaryOp::Sub: return sub(d(lhs, wrt), d(rhs, wrt));
      case BinaryOp::Mul: return add(mul(d(lhs, wrt), rhs), mul(lhs, d(rhs, wrt)));
      case BinaryOp::Div: {
        const Expression dl = d(lhs, wrt);
        const Expression dr = d(rhs, wrt);
        if (is_literal(dr, 0.0)) return div(dl, rhs);
        return div(sub(mul(dl, rhs), mul(lhs, dr)), mul(rhs, rhs));
      }
      case BinaryOp::Pow: return d_pow(lhs, rhs, wrt);
    }
  }
  const auto& call = std::get<Node::Call>(n.data);
  const Expression a(call.args[0]);
  switch (call.fn) {
    case Function::Exp: return mul(e, d(a, wrt));
    case Function::Ln: return div(d(a, wrt), a);
    case Function::Sqrt: return div(d(a, wrt), mul(Expression::constant(2.0), e));
    case Function::Abs: return mul(div(a, e), d(a, wrt));
    case Function::Pow: return d_pow(a, Expression(call.args[1]), wrt);
  }
  return Expression::constant(0.0);
}

}  // namespace

Expression derivative(const Expression& e, std::string_view wrt) { return d(e, wrt); }

}  // namespace ctherm::expr
