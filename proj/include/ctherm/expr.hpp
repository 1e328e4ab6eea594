#pragma once

// Scalar-field expressions over named coordinates.
//
// An Expression is an immutable AST shared by value. Text form is plain
// infix: literals, names, unary minus, + - * / ^ (right-associative), and
// the calls exp, ln, sqrt, pow(a, b), abs. Evaluation goes through
// ScalarField, which binds the AST to an ordered coordinate list and
// propagates exact first and second derivatives in forward mode.

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace ctherm::expr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// A coordinate reference that does not resolve against the declared names.
class BindError : public std::runtime_error {
 public:
  BindError(const std::string& message, std::string name);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Evaluation left the domain of an operation (pole, log of a non-positive
/// value, ...). Carries the offending sub-expression and its argument value.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, std::string subexpression, double value);
  const std::string& subexpression() const noexcept { return subexpression_; }
  double value() const noexcept { return value_; }

 private:
  std::string subexpression_;
  double value_;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Exp, Ln, Sqrt, Pow, Abs };

std::string_view function_name(Function f);
std::optional<Function> function_from_name(std::string_view name);
std::size_t function_arity(Function f);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  struct Number {
    double value;  // finite, >= 0; negative literals are Negate(Number)
  };
  struct Variable {
    std::string name;
  };
  struct Negate {
    NodePtr operand;
  };
  struct Binary {
    BinaryOp op;
    NodePtr lhs;
    NodePtr rhs;
  };
  struct Call {
    Function fn;
    std::vector<NodePtr> args;
  };

  std::variant<Number, Variable, Negate, Binary, Call> data;
};

class Expression {
 public:
  /// The literal 0.
  Expression();
  explicit Expression(NodePtr root);

  static Expression parse(std::string_view text);
  static Expression constant(double value);
  static Expression variable(std::string name);
  static Expression call(Function fn, std::vector<Expression> args);

  const Node& node() const noexcept { return *root_; }
  const NodePtr& root() const noexcept { return root_; }

  /// Infix text that parses back to a structurally identical tree.
  std::string to_string() const;

  std::set<std::string> variables() const;
  bool is_constant() const { return variables().empty(); }

  /// If this is a literal (possibly negated), its value.
  std::optional<double> literal_value() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  NodePtr root_;
};

Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);
Expression pow(const Expression& base, const Expression& exponent);
Expression exp(const Expression& a);
Expression ln(const Expression& a);
Expression sqrt(const Expression& a);
Expression abs(const Expression& a);

/// Symbolic partial derivative. Only zero/identity folding is applied, so the
/// result is a plain tree, not a simplified form.
Expression derivative(const Expression& e, std::string_view wrt);

/// Ordered (name, value) pairs. The order is the index convention used by
/// gradients and Hessians computed against this binding.
class Binding {
 public:
  Binding() = default;
  Binding(std::initializer_list<std::pair<std::string, double>> entries);
  Binding(std::vector<std::string> names, std::vector<double> values);

  /// Appends a coordinate; names must be unique.
  void add(std::string name, double value);
  void set(std::string_view name, double value);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  double at(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
};

/// An expression compiled against an ordered coordinate list.
class ScalarField {
 public:
  ScalarField();
  /// Throws BindError if the expression references an undeclared name.
  ScalarField(Expression e, std::vector<std::string> coordinates);

  const Expression& expression() const noexcept { return expr_; }
  const std::vector<std::string>& coordinates() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.size(); }

  double value(std::span<const double> x) const;
  /// Value and the full gradient (one entry per coordinate).
  double gradient(std::span<const double> x, std::span<double> grad) const;
  Eigen::VectorXd gradient(std::span<const double> x) const;
  /// Gradient restricted to the coordinate indices in `wrt`, in that order.
  Eigen::VectorXd gradient(std::span<const double> x, std::span<const std::size_t> wrt) const;
  /// Symmetric Hessian over the full coordinate list; entries (i, j) and
  /// (j, i) are the same stored number.
  Eigen::MatrixXd hessian(std::span<const double> x) const;
  Eigen::MatrixXd hessian(std::span<const double> x, std::span<const std::size_t> wrt) const;

  struct Instr;

 private:
  Expression expr_;
  std::vector<std::string> coords_;
  std::shared_ptr<const std::vector<Instr>> tape_;
  std::size_t depth_ = 0;
};

double eval(const Expression& e, const Binding& b);
Eigen::VectorXd grad(const Expression& e, const Binding& b, const std::vector<std::string>& wrt);
Eigen::MatrixXd hessian(const Expression& e, const Binding& b, const std::vector<std::string>& wrt);

}  // namespace ctherm::expr
