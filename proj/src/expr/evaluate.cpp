#include <cmath>

#include <fmt/format.h>

#include "ctherm/expr.hpp"

namespace ctherm::expr {

struct ScalarField::Instr {
  enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, PowInt, PowReal, PowGeneral, Exp, Ln, Sqrt, Abs };
  Op op;
  double constant = 0.0;  // literal value, or the folded exponent for PowInt/PowReal
  std::size_t index = 0;  // coordinate index for Var
  const Node* source = nullptr;
};

namespace {

using Instr = ScalarField::Instr;
using Op = Instr::Op;

// Evaluates a constant subtree in plain doubles; nullopt if it leaves the domain.
std::optional<double> fold_constant(const Node& n);

std::optional<double> fold_constant(const Node& n) {
  if (const auto* num = std::get_if<Node::Number>(&n.data)) return num->value;
  if (std::holds_alternative<Node::Variable>(n.data)) return std::nullopt;
  try {
    return eval(Expression(std::shared_ptr<const Node>(std::shared_ptr<const Node>{}, &n)), Binding{});
  } catch (const DomainError&) {
    return std::nullopt;
  } catch (const BindError&) {
    return std::nullopt;
  }
}

bool is_integral(double v) { return std::isfinite(v) && std::nearbyint(v) == v && std::abs(v) < 1e15; }

class Compiler {
 public:
  Compiler(const std::vector<std::string>& coords) : coords_(coords) {}

  void emit(const Node& n) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Node::Number>) {
            push({Op::Const, v.value, 0, &n}, +1);
          } else if constexpr (std::is_same_v<T, Node::Variable>) {
            std::size_t i = 0;
            while (i < coords_.size() && coords_[i] != v.name) ++i;
            if (i == coords_.size())
              throw BindError(fmt::format("unbound coordinate '{}'", v.name), v.name);
            push({Op::Var, 0.0, i, &n}, +1);
          } else if constexpr (std::is_same_v<T, Node::Negate>) {
            emit(*v.operand);
            push({Op::Neg, 0.0, 0, &n}, 0);
          } else if constexpr (std::is_same_v<T, Node::Binary>) {
            if (v.op == BinaryOp::Pow) {
              emit_pow(*v.lhs, *v.rhs, n);
              return;
            }
            emit(*v.lhs);
            emit(*v.rhs);
            const Op op = v.op == BinaryOp::Add   ? Op::Add
                          : v.op == BinaryOp::Sub ? Op::Sub
                          : v.op == BinaryOp::Mul ? Op::Mul
                                                  : Op::Div;
            push({op, 0.0, 0, &n}, -1);
          } else {
            if (v.fn == Function::Pow) {
              emit_pow(*v.args[0], *v.args[1], n);
              return;
            }
            emit(*v.args[0]);
            const Op op = v.fn == Function::Exp    ? Op::Exp
                          : v.fn == Function::Ln   ? Op::Ln
                          : v.fn == Function::Sqrt ? Op::Sqrt
                                                   : Op::Abs;
            push({op, 0.0, 0, &n}, 0);
          }
        },
        n.data);
  }

  std::vector<Instr> tape;
  std::size_t max_depth = 0;

 private:
  void emit_pow(const Node& base, const Node& exponent, const Node& self) {
    emit(base);
    bool has_vars = false;
    {
      Expression probe(std::shared_ptr<const Node>(std::shared_ptr<const Node>{}, &exponent));
      has_vars = !probe.variables().empty();
    }
    if (!has_vars) {
      if (const auto c = fold_constant(exponent)) {
        push({is_integral(*c) ? Op::PowInt : Op::PowReal, *c, 0, &self}, 0);
        return;
      }
    }
    emit(exponent);
    push({Op::PowGeneral, 0.0, 0, &self}, -1);
  }

  void push(Instr in, int delta) {
    tape.push_back(in);
    depth_ += delta;
    max_depth = std::max(max_depth, depth_);
  }

  const std::vector<std::string>& coords_;
  std::size_t depth_ = 0;
};

// Forward-mode jet: value, gradient over `dim` slots, and the upper triangle
// of the Hessian packed row-wise. Order 0/1/2 controls what is propagated.
struct Jet {
  double v = 0.0;
  std::vector<double> g;
  std::vector<double> h;
};

class JetMachine {
 public:
  JetMachine(std::size_t dim, int order, std::size_t depth)
      : dim_(order >= 1 ? dim : 0), packed_(order >= 2 ? dim * (dim + 1) / 2 : 0), stack_(depth) {
    for (auto& j : stack_) {
      j.g.assign(dim_, 0.0);
      j.h.assign(packed_, 0.0);
    }
  }

  Jet& top() { return stack_[sp_ - 1]; }
  Jet& below() { return stack_[sp_ - 2]; }

  void push_const(double c) {
    Jet& j = stack_[sp_++];
    j.v = c;
    std::fill(j.g.begin(), j.g.end(), 0.0);
    std::fill(j.h.begin(), j.h.end(), 0.0);
  }

  void push_var(double x, std::ptrdiff_t slot) {
    push_const(x);
    if (slot >= 0 && dim_ > 0) top().g[static_cast<std::size_t>(slot)] = 1.0;
  }

  // top <- f(top) with f, f', f'' at the current value.
  void chain(double f, double f1, double f2) {
    Jet& a = top();
    if (packed_) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j, ++k) a.h[k] = f1 * a.h[k] + f2 * a.g[i] * a.g[j];
    }
    for (auto& gi : a.g) gi *= f1;
    a.v = f;
  }

  void add(double sign) {
    Jet& b = top();
    Jet& a = below();
    a.v = sign > 0 ? a.v + b.v : a.v - b.v;
    for (std::size_t i = 0; i < dim_; ++i) a.g[i] = sign > 0 ? a.g[i] + b.g[i] : a.g[i] - b.g[i];
    for (std::size_t k = 0; k < packed_; ++k) a.h[k] = sign > 0 ? a.h[k] + b.h[k] : a.h[k] - b.h[k];
    --sp_;
  }

  // a * b; when value_override is set it replaces the product value (used for
  // division so that the value matches a plain a / b).
  void mul(std::optional<double> value_override = std::nullopt) {
    Jet& b = top();
    Jet& a = below();
    if (packed_) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j, ++k)
          a.h[k] = a.v * b.h[k] + b.v * a.h[k] + a.g[i] * b.g[j] + b.g[i] * a.g[j];
    }
    for (std::size_t i = 0; i < dim_; ++i) a.g[i] = a.v * b.g[i] + b.v * a.g[i];
    a.v = value_override ? *value_override : a.v * b.v;
    --sp_;
  }

  void swap_top() { std::swap(stack_[sp_ - 1], stack_[sp_ - 2]); }

  std::size_t dim() const { return dim_; }
  std::size_t packed() const { return packed_; }

 private:
  std::size_t dim_;
  std::size_t packed_;
  std::vector<Jet> stack_;
  std::size_t sp_ = 0;
};

std::string node_text(const Node* n) {
  return Expression(std::shared_ptr<const Node>(std::shared_ptr<const Node>{}, n)).to_string();
}

[[noreturn]] void domain_fail(const std::string& what, const Node* n, double value) {
  const std::string text = node_text(n);
  throw DomainError(fmt::format("domain error: {} (value {}) in '{}'", what, value, text), text, value);
}

Jet run(const std::vector<Instr>& tape, std::size_t depth, std::span<const double> x,
        std::span<const std::ptrdiff_t> slots, std::size_t dim, int order) {
  JetMachine m(dim, order, std::max<std::size_t>(depth, 1));
  const bool derivs = order >= 1;
  for (const Instr& in : tape) {
    switch (in.op) {
      case Op::Const: m.push_const(in.constant); break;
      case Op::Var: m.push_var(x[in.index], slots.empty() ? -1 : slots[in.index]); break;
      case Op::Neg: m.chain(-m.top().v, -1.0, 0.0); break;
      case Op::Add: m.add(+1); break;
      case Op::Sub: m.add(-1); break;
      case Op::Mul: m.mul(); break;
      case Op::Div: {
        const double den = m.top().v;
        if (den == 0.0) domain_fail("division by zero", in.source, den);
        const double quotient = m.below().v / den;
        m.chain(1.0 / den, -1.0 / (den * den), 2.0 / (den * den * den));
        m.mul(quotient);
        break;
      }
      case Op::PowInt: {
        const double xv = m.top().v;
        const double n = in.constant;
        if (xv == 0.0 && n < 0.0) domain_fail("division by zero in negative power", in.source, xv);
        if (n == 0.0) {
          m.chain(1.0, 0.0, 0.0);
        } else if (n == 1.0) {
          m.chain(xv, 1.0, 0.0);
        } else if (n == 2.0) {
          m.chain(xv * xv, 2.0 * xv, 2.0);
        } else {
          m.chain(std::pow(xv, n), n * std::pow(xv, n - 1.0), n * (n - 1.0) * std::pow(xv, n - 2.0));
        }
        break;
      }
      case Op::PowReal: {
        const double xv = m.top().v;
        const double c = in.constant;
        if (!(xv > 0.0)) domain_fail("non-integer power of non-positive base", in.source, xv);
        m.chain(std::pow(xv, c), c * std::pow(xv, c - 1.0), c * (c - 1.0) * std::pow(xv, c - 2.0));
        break;
      }
      case Op::PowGeneral: {
        // base^y = exp(y ln base), base > 0
        const double y = m.top().v;
        const double base = m.below().v;
        if (!(base > 0.0)) domain_fail("variable power of non-positive base", in.source, base);
        const double value = std::pow(base, y);
        m.swap_top();  // base on top
        m.chain(std::log(base), 1.0 / base, -1.0 / (base * base));
        m.mul();  // y * ln(base)
        m.chain(value, value, value);
        break;
      }
      case Op::Exp: {
        const double e = std::exp(m.top().v);
        m.chain(e, e, e);
        break;
      }
      case Op::Ln: {
        const double xv = m.top().v;
        if (!(xv > 0.0)) domain_fail("ln of non-positive value", in.source, xv);
        m.chain(std::log(xv), 1.0 / xv, -1.0 / (xv * xv));
        break;
      }
      case Op::Sqrt: {
        const double xv = m.top().v;
        if (xv < 0.0 || (derivs && xv == 0.0)) domain_fail("sqrt outside its domain", in.source, xv);
        const double r = std::sqrt(xv);
        if (derivs)
          m.chain(r, 0.5 / r, -0.25 / (r * xv));
        else
          m.chain(r, 0.0, 0.0);
        break;
      }
      case Op::Abs: {
        const double xv = m.top().v;
        if (derivs && xv == 0.0) domain_fail("abs is not differentiable at zero", in.source, xv);
        m.chain(std::abs(xv), xv > 0.0 ? 1.0 : -1.0, 0.0);
        break;
      }
    }
    if (!std::isfinite(m.top().v)) domain_fail("non-finite result", in.source, m.top().v);
  }
  Jet out = m.top();
  for (double gi : out.g)
    if (!std::isfinite(gi)) domain_fail("non-finite derivative", tape.back().source, out.v);
  for (double hk : out.h)
    if (!std::isfinite(hk)) domain_fail("non-finite second derivative", tape.back().source, out.v);
  return out;
}

Eigen::MatrixXd unpack(const std::vector<double>& h, std::size_t dim) {
  Eigen::MatrixXd out(dim, dim);
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j, ++k) {
      out(i, j) = h[k];
      out(j, i) = h[k];
    }
  return out;
}

std::vector<std::ptrdiff_t> slots_for(std::size_t ncoords, std::span<const std::size_t> wrt) {
  std::vector<std::ptrdiff_t> slots(ncoords, -1);
  for (std::size_t k = 0; k < wrt.size(); ++k) {
    if (wrt[k] >= ncoords) throw std::out_of_range("ScalarField: derivative index out of range");
    if (slots[wrt[k]] != -1) throw std::invalid_argument("ScalarField: repeated derivative index");
    slots[wrt[k]] = static_cast<std::ptrdiff_t>(k);
  }
  return slots;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

}  // namespace

ScalarField::ScalarField() : ScalarField(Expression(), {}) {}

ScalarField::ScalarField(Expression e, std::vector<std::string> coordinates)
    : expr_(std::move(e)), coords_(std::move(coordinates)) {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    for (std::size_t j = i + 1; j < coords_.size(); ++j)
      if (coords_[i] == coords_[j])
        throw std::invalid_argument(fmt::format("ScalarField: duplicate coordinate '{}'", coords_[i]));
  Compiler c(coords_);
  c.emit(expr_.node());
  depth_ = c.max_depth;
  tape_ = std::make_shared<const std::vector<Instr>>(std::move(c.tape));
}

double ScalarField::value(std::span<const double> x) const {
  if (x.size() != coords_.size()) throw std::invalid_argument("ScalarField::value: dimension mismatch");
  return run(*tape_, depth_, x, {}, 0, 0).v;
}

double ScalarField::gradient(std::span<const double> x, std::span<double> grad) const {
  if (x.size() != coords_.size() || grad.size() != coords_.size())
    throw std::invalid_argument("ScalarField::gradient: dimension mismatch");
  const auto idx = all_indices(coords_.size());
  const auto slots = slots_for(coords_.size(), idx);
  const Jet j = run(*tape_, depth_, x, slots, coords_.size(), 1);
  std::copy(j.g.begin(), j.g.end(), grad.begin());
  return j.v;
}

Eigen::VectorXd ScalarField::gradient(std::span<const double> x) const {
  const auto idx = all_indices(coords_.size());
  return gradient(x, idx);
}

Eigen::VectorXd ScalarField::gradient(std::span<const double> x, std::span<const std::size_t> wrt) const {
  if (x.size() != coords_.size()) throw std::invalid_argument("ScalarField::gradient: dimension mismatch");
  const auto slots = slots_for(coords_.size(), wrt);
  const Jet j = run(*tape_, depth_, x, slots, wrt.size(), 1);
  return Eigen::Map<const Eigen::VectorXd>(j.g.data(), static_cast<Eigen::Index>(j.g.size()));
}

Eigen::MatrixXd ScalarField::hessian(std::span<const double> x) const {
  const auto idx = all_indices(coords_.size());
  return hessian(x, idx);
}

Eigen::MatrixXd ScalarField::hessian(std::span<const double> x, std::span<const std::size_t> wrt) const {
  if (x.size() != coords_.size()) throw std::invalid_argument("ScalarField::hessian: dimension mismatch");
  const auto slots = slots_for(coords_.size(), wrt);
  const Jet j = run(*tape_, depth_, x, slots, wrt.size(), 2);
  return unpack(j.h, wrt.size());
}

namespace {

std::vector<std::size_t> indices_in(const Binding& b, const std::vector<std::string>& wrt) {
  std::vector<std::size_t> idx;
  idx.reserve(wrt.size());
  for (const auto& name : wrt) {
    const auto i = b.index_of(name);
    if (!i) throw BindError(fmt::format("derivative coordinate '{}' is not bound", name), name);
    idx.push_back(*i);
  }
  return idx;
}

}  // namespace

double eval(const Expression& e, const Binding& b) {
  return ScalarField(e, b.names()).value(b.values());
}

Eigen::VectorXd grad(const Expression& e, const Binding& b, const std::vector<std::string>& wrt) {
  return ScalarField(e, b.names()).gradient(b.values(), indices_in(b, wrt));
}

Eigen::MatrixXd hessian(const Expression& e, const Binding& b, const std::vector<std::string>& wrt) {
  return ScalarField(e, b.names()).hessian(b.values(), indices_in(b, wrt));
}

}  // namespace ctherm::expr
