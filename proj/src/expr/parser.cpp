#include <cctype>
#include <charconv>

#include <fmt/format.h>

#include "ctherm/expr.hpp"

namespace ctherm::expr {
namespace {

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End, Invalid };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

// Recursive descent, precedence low to high:
//   additive       := multiplicative (('+' | '-') multiplicative)*
//   multiplicative := unary (('*' | '/') unary)*
//   unary          := '-' unary | power
//   power          := primary ('^' unary)?
//   primary        := number | name | name '(' args ')' | '(' additive ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Expression parse() {
    NodePtr root = additive();
    if (tok_.kind != Tok::End)
      fail(fmt::format("unexpected {}", describe(tok_)),
           {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    return Expression(root);
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    std::string msg = fmt::format("syntax error at offset {}: {}", tok_.offset, what);
    if (!expected.empty()) msg += fmt::format("; expected {}", fmt::join(expected, ", "));
    throw ParseError(msg, tok_.offset, std::move(expected));
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return fmt::format("'{}'", t.text);
  }

  void advance() {
    std::size_t i = pos_;
    while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
    tok_ = Token{Tok::End, i, {}};
    if (i >= text_.size()) {
      pos_ = i;
      return;
    }
    const char c = text_[i];
    auto single = [&](Tok k) {
      tok_ = Token{k, i, text_.substr(i, 1)};
      pos_ = i + 1;
    };
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      if (j < text_.size() && text_[j] == '.') {
        ++j;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      }
      if (j < text_.size() && (text_[j] == 'e' || text_[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
        if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) {
          while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
          j = k;
        }
      }
      double value = 0.0;
      const auto res = std::from_chars(text_.data() + i, text_.data() + j, value);
      if (res.ec != std::errc() || res.ptr != text_.data() + j) {
        tok_ = Token{Tok::Invalid, i, text_.substr(i, j - i)};
        pos_ = j;
        return;
      }
      tok_ = Token{Tok::Number, i, text_.substr(i, j - i), value};
      pos_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        ++j;
      tok_ = Token{Tok::Name, i, text_.substr(i, j - i)};
      pos_ = j;
      return;
    }
    tok_ = Token{Tok::Invalid, i, text_.substr(i, 1)};
    pos_ = i + 1;
  }

  NodePtr additive() {
    NodePtr lhs = multiplicative();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const BinaryOp op = tok_.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      NodePtr rhs = multiplicative();
      lhs = std::make_shared<const Node>(Node{Node::Binary{op, lhs, rhs}});
    }
    return lhs;
  }

  NodePtr multiplicative() {
    NodePtr lhs = unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const BinaryOp op = tok_.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      advance();
      NodePtr rhs = unary();
      lhs = std::make_shared<const Node>(Node{Node::Binary{op, lhs, rhs}});
    }
    return lhs;
  }

  NodePtr unary() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return std::make_shared<const Node>(Node{Node::Negate{unary()}});
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (tok_.kind == Tok::Caret) {
      advance();
      NodePtr exponent = unary();
      return std::make_shared<const Node>(Node{Node::Binary{BinaryOp::Pow, base, exponent}});
    }
    return base;
  }

  NodePtr primary() {
    switch (tok_.kind) {
      case Tok::Number: {
        const double v = tok_.number;
        advance();
        return std::make_shared<const Node>(Node{Node::Number{v}});
      }
      case Tok::Name: {
        const Token name = tok_;
        advance();
        if (tok_.kind != Tok::LParen)
          return std::make_shared<const Node>(Node{Node::Variable{std::string(name.text)}});
        const auto fn = function_from_name(name.text);
        if (!fn) {
          throw ParseError(fmt::format("unknown function '{}' at offset {}", name.text, name.offset),
                           name.offset, {"exp", "ln", "sqrt", "pow", "abs"});
        }
        advance();
        std::vector<NodePtr> args;
        args.push_back(additive());
        while (tok_.kind == Tok::Comma) {
          advance();
          args.push_back(additive());
        }
        if (tok_.kind != Tok::RParen) fail(fmt::format("unexpected {}", describe(tok_)), {"','", "')'"});
        if (args.size() != function_arity(*fn)) {
          throw ParseError(fmt::format("function '{}' takes {} argument(s), got {}", name.text,
                                       function_arity(*fn), args.size()),
                           name.offset, {});
        }
        advance();
        return std::make_shared<const Node>(Node{Node::Call{*fn, std::move(args)}});
      }
      case Tok::LParen: {
        advance();
        NodePtr inner = additive();
        if (tok_.kind != Tok::RParen) fail(fmt::format("unexpected {}", describe(tok_)), {"')'"});
        advance();
        return inner;
      }
      default:
        fail(fmt::format("unexpected {}", describe(tok_)), {"number", "name", "'('", "'-'"});
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_{Tok::End, 0, {}};
};

}  // namespace

Expression Expression::parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace ctherm::expr
