#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "finmon/scalar.hpp"

namespace finmon {

// Closed expression grammar for test functions and curve components:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := unary ("^" nonneg-int)?       (^ right-associative)
//   unary  := "-" unary | atom
//   atom   := rational | "pi" | var | func "(" expr ")" | "(" expr ")"
//   var    := "x" positive-int
//   func   := "sin" | "cos" | "exp"
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Pi, Var, Lit };
    Kind kind;
    ExprPtr lhs, rhs;        // binary nodes; unary nodes use lhs only
    unsigned exponent = 0;   // Pow
    std::size_t var = 0;     // Var, 1-based
    mpq_class lit;           // Lit
};

// Parses per the grammar; errors carry a 0-based position.
ExprPtr parse_expr(std::string_view text, std::size_t dim);

// sin/cos/exp/pi nodes require the float backend.
bool requires_float(const Expr& e);

Scalar eval_expr(const Expr& e, std::span<const Scalar> coords, Backend backend);

// Fully parenthesized canonical form; reparses to a structurally equal AST.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

} // namespace finmon
