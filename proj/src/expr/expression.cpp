#include "ctherm/expr.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ctherm::expr {

ParseError::ParseError(const std::string& message, std::size_t offset,
                       std::vector<std::string> expected)
    : std::runtime_error(message), offset_(offset), expected_(std::move(expected)) {}

BindError::BindError(const std::string& message, std::string name)
    : std::runtime_error(message), name_(std::move(name)) {}

DomainError::DomainError(const std::string& what, std::string subexpression, double value)
    : std::runtime_error(what), subexpression_(std::move(subexpression)), value_(value) {}

std::string_view function_name(Function f) {
  switch (f) {
    case Function::Exp: return "exp";
    case Function::Ln: return "ln";
    case Function::Sqrt: return "sqrt";
    case Function::Pow: return "pow";
    case Function::Abs: return "abs";
  }
  return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
  if (name == "exp") return Function::Exp;
  if (name == "ln") return Function::Ln;
  if (name == "sqrt") return Function::Sqrt;
  if (name == "pow") return Function::Pow;
  if (name == "abs") return Function::Abs;
  return std::nullopt;
}

std::size_t function_arity(Function f) { return f == Function::Pow ? 2 : 1; }

namespace {

NodePtr make(Node::Number n) { return std::make_shared<const Node>(Node{n}); }
NodePtr make_neg(NodePtr a) { return std::make_shared<const Node>(Node{Node::Negate{std::move(a)}}); }
NodePtr make_bin(BinaryOp op, NodePtr a, NodePtr b) {
  return std::make_shared<const Node>(Node{Node::Binary{op, std::move(a), std::move(b)}});
}

// Binding strength used by the printer; mirrors the parser's grammar levels.
enum Level { kAdditive = 1, kMultiplicative = 2, kUnary = 3, kPower = 4, kPrimary = 5 };

int level_of(const Node& n) {
  if (std::holds_alternative<Node::Negate>(n.data)) return kUnary;
  if (const auto* b = std::get_if<Node::Binary>(&n.data)) {
    switch (b->op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: return kAdditive;
      case BinaryOp::Mul:
      case BinaryOp::Div: return kMultiplicative;
      case BinaryOp::Pow: return kPower;
    }
  }
  return kPrimary;
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool parens, std::string& out) {
  if (parens) out += '(';
  print(n, out);
  if (parens) out += ')';
}

void print(const Node& n, std::string& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Node::Number>) {
          out += fmt::format("{}", v.value);
        } else if constexpr (std::is_same_v<T, Node::Variable>) {
          out += v.name;
        } else if constexpr (std::is_same_v<T, Node::Negate>) {
          out += '-';
          print_wrapped(*v.operand, level_of(*v.operand) < kUnary, out);
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          const int lhs = level_of(*v.lhs);
          const int rhs = level_of(*v.rhs);
          switch (v.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
              print_wrapped(*v.lhs, lhs < kAdditive, out);
              out += op_char(v.op);
              print_wrapped(*v.rhs, rhs <= kAdditive, out);
              break;
            case BinaryOp::Mul:
            case BinaryOp::Div:
              print_wrapped(*v.lhs, lhs < kMultiplicative, out);
              out += op_char(v.op);
              print_wrapped(*v.rhs, rhs <= kMultiplicative, out);
              break;
            case BinaryOp::Pow:
              // base is a primary, exponent a unary
              print_wrapped(*v.lhs, lhs < kPrimary, out);
              out += '^';
              print_wrapped(*v.rhs, rhs < kUnary, out);
              break;
          }
        } else {
          out += function_name(v.fn);
          out += '(';
          for (std::size_t i = 0; i < v.args.size(); ++i) {
            if (i) out += ", ";
            print(*v.args[i], out);
          }
          out += ')';
        }
      },
      n.data);
}

bool equal(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        const auto& vb = std::get<T>(b.data);
        if constexpr (std::is_same_v<T, Node::Number>) {
          return va.value == vb.value;
        } else if constexpr (std::is_same_v<T, Node::Variable>) {
          return va.name == vb.name;
        } else if constexpr (std::is_same_v<T, Node::Negate>) {
          return equal(*va.operand, *vb.operand);
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          return va.op == vb.op && equal(*va.lhs, *vb.lhs) && equal(*va.rhs, *vb.rhs);
        } else {
          if (va.fn != vb.fn || va.args.size() != vb.args.size()) return false;
          for (std::size_t i = 0; i < va.args.size(); ++i)
            if (!equal(*va.args[i], *vb.args[i])) return false;
          return true;
        }
      },
      a.data);
}

void collect(const Node& n, std::set<std::string>& names) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Node::Variable>) {
          names.insert(v.name);
        } else if constexpr (std::is_same_v<T, Node::Negate>) {
          collect(*v.operand, names);
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          collect(*v.lhs, names);
          collect(*v.rhs, names);
        } else if constexpr (std::is_same_v<T, Node::Call>) {
          for (const auto& a : v.args) collect(*a, names);
        }
      },
      n.data);
}

}  // namespace

Expression::Expression() : root_(make(Node::Number{0.0})) {}

Expression::Expression(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("Expression: null node");
}

Expression Expression::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("Expression::constant: non-finite literal");
  if (std::signbit(value)) return Expression(make_neg(make(Node::Number{-value})));
  return Expression(make(Node::Number{value}));
}

Expression Expression::variable(std::string name) {
  return Expression(std::make_shared<const Node>(Node{Node::Variable{std::move(name)}}));
}

Expression Expression::call(Function fn, std::vector<Expression> args) {
  if (args.size() != function_arity(fn))
    throw std::invalid_argument(fmt::format("{} expects {} argument(s)", function_name(fn),
                                            function_arity(fn)));
  std::vector<NodePtr> nodes;
  nodes.reserve(args.size());
  for (auto& a : args) nodes.push_back(a.root());
  return Expression(std::make_shared<const Node>(Node{Node::Call{fn, std::move(nodes)}}));
}

std::string Expression::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

std::set<std::string> Expression::variables() const {
  std::set<std::string> names;
  collect(*root_, names);
  return names;
}

std::optional<double> Expression::literal_value() const {
  if (const auto* n = std::get_if<Node::Number>(&root_->data)) return n->value;
  if (const auto* neg = std::get_if<Node::Negate>(&root_->data))
    if (const auto* n = std::get_if<Node::Number>(&neg->operand->data)) return -n->value;
  return std::nullopt;
}

bool operator==(const Expression& a, const Expression& b) { return equal(a.node(), b.node()); }

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(make_bin(BinaryOp::Add, a.root(), b.root()));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(make_bin(BinaryOp::Sub, a.root(), b.root()));
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(make_bin(BinaryOp::Mul, a.root(), b.root()));
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression(make_bin(BinaryOp::Div, a.root(), b.root()));
}
Expression operator-(const Expression& a) { return Expression(make_neg(a.root())); }
Expression pow(const Expression& base, const Expression& exponent) {
  return Expression(make_bin(BinaryOp::Pow, base.root(), exponent.root()));
}
Expression exp(const Expression& a) { return Expression::call(Function::Exp, {a}); }
Expression ln(const Expression& a) { return Expression::call(Function::Ln, {a}); }
Expression sqrt(const Expression& a) { return Expression::call(Function::Sqrt, {a}); }
Expression abs(const Expression& a) { return Expression::call(Function::Abs, {a}); }

Binding::Binding(std::initializer_list<std::pair<std::string, double>> entries) {
  for (const auto& [name, value] : entries) add(name, value);
}

Binding::Binding(std::vector<std::string> names, std::vector<double> values) {
  if (names.size() != values.size())
    throw std::invalid_argument("Binding: names and values differ in length");
  for (std::size_t i = 0; i < names.size(); ++i) add(std::move(names[i]), values[i]);
}

void Binding::add(std::string name, double value) {
  if (index_of(name)) throw std::invalid_argument(fmt::format("Binding: duplicate name '{}'", name));
  names_.push_back(std::move(name));
  values_.push_back(value);
}

void Binding::set(std::string_view name, double value) {
  const auto i = index_of(name);
  if (!i) throw std::invalid_argument(fmt::format("Binding: unknown name '{}'", name));
  values_[*i] = value;
}

std::optional<std::size_t> Binding::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

double Binding::at(std::string_view name) const {
  const auto i = index_of(name);
  if (!i) throw std::out_of_range(fmt::format("Binding: unknown name '{}'", name));
  return values_[*i];
}

}  // namespace ctherm::expr
