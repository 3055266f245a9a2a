// torickgk — tiny arithmetic language for user-supplied potentials τ(mu1..mum).
//
// Grammar (whitespace-insensitive, no implicit multiplication):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?          // right-associative: 2^3^2 = 512
//   atom   := number | muK | fn '(' expr ')' | '(' expr ')'
//   fn     := log | sqrt | exp
// Identifiers are exactly mu1..mu9; unary minus binds looser than '^'.
#pragma once

#include <memory>
#include <string>

#include "torickgk/common.hpp"

namespace torickgk {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Op {
    constant,
    variable,  // var ∈ [0, m)
    add,
    sub,
    mul,
    div,
    pow,
    neg,
    log,
    sqrt_fn,
    exp_fn
  };
  Op op;
  double value = 0.0;  // constant
  int var = -1;        // variable (0-based)
  ExprPtr a, b;        // operands (unary ops use `a` only)
};

/// A parsed expression together with the dimension it was validated against.
struct Expression {
  ExprPtr root;
  int m = 0;
};

/// Parse `src` for dimension `m`. Errors carry the 0-based byte offset:
/// SyntaxError(position), UnknownIdentifier, ArityError, DimensionMismatch.
Expression parse_expression(const std::string& src, int m);

/// Evaluate at x (size m). Throws DomainError (log/sqrt of non-positive,
/// non-integer power of a negative base, non-finite result) or DivByZero,
/// each quoting the offending subexpression.
double eval_expression(const Expression& e, const Vec& x);

/// Canonical printer: minimal parentheses under the grammar above;
/// parse ∘ print ∘ parse is the identity on ASTs.
std::string print_expression(const Expression& e);

/// Structural equality of ASTs (used by the round-trip property tests).
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

}  // namespace torickgk
