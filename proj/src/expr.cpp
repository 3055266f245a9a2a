// torickgk — recursive-descent parser, evaluator, and canonical printer for
// the expression potential language.
#include "torickgk/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace torickgk {

namespace {

using Op = ExprNode::Op;

ExprPtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

ExprPtr make_const(double v) { return make_node({Op::constant, v, -1, nullptr, nullptr}); }
ExprPtr make_var(int i) { return make_node({Op::variable, 0.0, i, nullptr, nullptr}); }
ExprPtr make_unary(Op op, ExprPtr a) { return make_node({op, 0.0, -1, std::move(a), nullptr}); }
ExprPtr make_binary(Op op, ExprPtr a, ExprPtr b) {
  return make_node({op, 0.0, -1, std::move(a), std::move(b)});
}

[[noreturn]] void syntax_error(size_t pos, const std::string& what) {
  throw_config("SyntaxError", "at position " + std::to_string(pos) + ": " + what);
}

class Parser {
public:
  Parser(const std::string& src, int m) : src_(src), m_(m) {}

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size())
      syntax_error(pos_, "unexpected trailing input");
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek_char(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept_char(char c) {
    if (peek_char(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept_char('+'))
        lhs = make_binary(Op::add, lhs, parse_term());
      else if (accept_char('-'))
        lhs = make_binary(Op::sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      if (accept_char('*'))
        lhs = make_binary(Op::mul, lhs, parse_factor());
      else if (accept_char('/'))
        lhs = make_binary(Op::div, lhs, parse_factor());
      else
        return lhs;
    }
  }

  ExprPtr parse_factor() {
    if (accept_char('-')) return make_unary(Op::neg, parse_factor());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    // Right-associative; the exponent re-enters at factor level so that
    // 2^-3 parses while -2^2 still means -(2^2).
    if (accept_char('^')) return make_binary(Op::pow, base, parse_factor());
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) syntax_error(pos_, "unexpected end of input");
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      skip_ws();
      if (!accept_char(')')) syntax_error(pos_, "expected ')'");
      return e;
    }
    syntax_error(pos_, std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    size_t start = pos_;
    const char* begin = src_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) syntax_error(start, "malformed number");
    pos_ += static_cast<size_t>(end - begin);
    return make_const(v);
  }

  ExprPtr parse_identifier() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name = src_.substr(start, pos_ - start);

    Op fn;
    if (name == "log")
      fn = Op::log;
    else if (name == "sqrt")
      fn = Op::sqrt_fn;
    else if (name == "exp")
      fn = Op::exp_fn;
    else if (name.size() == 3 && name.compare(0, 2, "mu") == 0 && name[2] >= '1' &&
             name[2] <= '9') {
      int idx = name[2] - '1';
      if (idx >= m_)
        throw_config("DimensionMismatch",
                     "at position " + std::to_string(start) + ": variable " + name +
                         " exceeds dimension m=" + std::to_string(m_));
      return make_var(idx);
    } else {
      throw_config("UnknownIdentifier",
                   "at position " + std::to_string(start) + ": '" + name + "'");
    }

    // Functions take exactly one parenthesized argument.
    if (!accept_char('('))
      throw_config("ArityError", "at position " + std::to_string(start) + ": function '" +
                                     name + "' requires one parenthesized argument");
    ExprPtr arg = parse_expr();
    skip_ws();
    if (peek_char(','))
      throw_config("ArityError", "at position " + std::to_string(pos_) + ": function '" +
                                     name + "' takes exactly one argument");
    if (!accept_char(')')) syntax_error(pos_, "expected ')'");
    return make_unary(fn, arg);
  }

  const std::string& src_;
  int m_;
  size_t pos_ = 0;
};

int precedence(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub:
      return 1;
    case Op::mul:
    case Op::div:
      return 2;
    case Op::neg:
      return 3;
    case Op::pow:
      return 4;
    default:
      return 5;  // atoms: constants, variables, function calls
  }
}

void print_node(const ExprPtr& n, std::string& out);

void print_child(const ExprPtr& child, int parent_prec, bool needs_paren_on_tie,
                 std::string& out) {
  int cp = precedence(child->op);
  bool paren = cp < parent_prec || (cp == parent_prec && needs_paren_on_tie);
  if (paren) out += '(';
  print_node(child, out);
  if (paren) out += ')';
}

void print_node(const ExprPtr& n, std::string& out) {
  switch (n->op) {
    case Op::constant:
      out += format_double(n->value);
      return;
    case Op::variable:
      out += "mu";
      out += static_cast<char>('1' + n->var);
      return;
    case Op::add:
      print_child(n->a, 1, false, out);
      out += " + ";
      print_child(n->b, 1, true, out);
      return;
    case Op::sub:
      print_child(n->a, 1, false, out);
      out += " - ";
      print_child(n->b, 1, true, out);
      return;
    case Op::mul:
      print_child(n->a, 2, false, out);
      out += "*";
      print_child(n->b, 2, true, out);
      return;
    case Op::div:
      print_child(n->a, 2, false, out);
      out += "/";
      print_child(n->b, 2, true, out);
      return;
    case Op::neg:
      out += "-";
      // Parenthesize everything below an atom so "--x" never appears.
      print_child(n->a, 5, false, out);
      return;
    case Op::pow:
      // Left operand of '^' must bind tighter (it is not re-entered as a
      // power), the right operand re-enters at factor level.
      print_child(n->a, 5, false, out);
      out += "^";
      print_child(n->b, 3, false, out);
      return;
    case Op::log:
      out += "log(";
      print_node(n->a, out);
      out += ")";
      return;
    case Op::sqrt_fn:
      out += "sqrt(";
      print_node(n->a, out);
      out += ")";
      return;
    case Op::exp_fn:
      out += "exp(";
      print_node(n->a, out);
      out += ")";
      return;
  }
}

[[noreturn]] void domain_error(const ExprPtr& node, const std::string& what) {
  std::string repr;
  print_node(node, repr);
  throw_numerical("DomainError", what + " in '" + repr + "'");
}

double eval_node(const ExprPtr& n, const Vec& x) {
  switch (n->op) {
    case Op::constant:
      return n->value;
    case Op::variable:
      return x(n->var);
    case Op::add:
      return eval_node(n->a, x) + eval_node(n->b, x);
    case Op::sub:
      return eval_node(n->a, x) - eval_node(n->b, x);
    case Op::mul:
      return eval_node(n->a, x) * eval_node(n->b, x);
    case Op::div: {
      double num = eval_node(n->a, x);
      double den = eval_node(n->b, x);
      if (den == 0.0) {
        std::string repr;
        print_node(n, repr);
        throw_numerical("DivByZero", "division by zero in '" + repr + "'");
      }
      return num / den;
    }
    case Op::pow: {
      double base = eval_node(n->a, x);
      double expo = eval_node(n->b, x);
      if (base < 0.0 && expo != std::floor(expo))
        domain_error(n, "non-integer power of a negative base");
      if (base == 0.0 && expo < 0.0) domain_error(n, "zero raised to a negative power");
      return std::pow(base, expo);
    }
    case Op::neg:
      return -eval_node(n->a, x);
    case Op::log: {
      double v = eval_node(n->a, x);
      if (v <= 0.0) domain_error(n, "log of a non-positive value");
      return std::log(v);
    }
    case Op::sqrt_fn: {
      double v = eval_node(n->a, x);
      if (v < 0.0) domain_error(n, "sqrt of a negative value");
      return std::sqrt(v);
    }
    case Op::exp_fn:
      return std::exp(eval_node(n->a, x));
  }
  throw_numerical("DomainError", "corrupt expression node");
}

}  // namespace

Expression parse_expression(const std::string& src, int m) {
  if (m < 1 || m > 9) throw_config("DimensionMismatch", "m must be in 1..9");
  Parser p(src, m);
  return Expression{p.parse(), m};
}

double eval_expression(const Expression& e, const Vec& x) {
  if (x.size() != e.m)
    throw_config("DimensionMismatch", "point dimension " + std::to_string(x.size()) +
                                          " != expression dimension " + std::to_string(e.m));
  double v = eval_node(e.root, x);
  if (!std::isfinite(v)) {
    std::string repr;
    print_node(e.root, repr);
    throw_numerical("DomainError", "non-finite result evaluating '" + repr + "'");
  }
  return v;
}

std::string print_expression(const Expression& e) {
  std::string out;
  print_node(e.root, out);
  return out;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->op != b->op) return false;
  if (a->op == ExprNode::Op::constant) return a->value == b->value;
  if (a->op == ExprNode::Op::variable) return a->var == b->var;
  if (!expr_equal(a->a, b->a)) return false;
  if ((a->b == nullptr) != (b->b == nullptr)) return false;
  return a->b == nullptr || expr_equal(a->b, b->b);
}

}  // namespace torickgk
