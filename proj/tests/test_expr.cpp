#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finmon/expr.hpp"
#include "finmon/rng.hpp"

using namespace finmon;

namespace {

Scalar eval_exact(const std::string& text, std::vector<long> coords) {
    std::vector<Scalar> cs;
    for (long c : coords) cs.push_back(Scalar::exact_int(c));
    return eval_expr(*parse_expr(text, cs.size()), cs, Backend::Exact);
}

double eval_float(const std::string& text, std::vector<double> coords) {
    std::vector<Scalar> cs;
    for (double c : coords) cs.push_back(Scalar::fp(c));
    return eval_expr(*parse_expr(text, cs.size()), cs, Backend::Float).to_complex().real();
}

} // namespace

TEST_CASE("basic parses and exact evaluation") {
    CHECK(eval_exact("x1^2 + 3/2", {2}) == Scalar::exact(mpq_class(11, 2)));
    CHECK(eval_exact("x1*x2", {7, 0}) == Scalar::exact_int(0));
    CHECK(eval_exact("2*x1 - x2/3", {1, 6}) == Scalar::exact_int(0));
    CHECK(eval_exact("(x1+1)^3", {1}) == Scalar::exact_int(8));
}

TEST_CASE("rational literals bind the denominator, terms divide") {
    CHECK(eval_exact("3/2", {}) == Scalar::exact(mpq_class(3, 2)));
    // "x1/2" is term-level division, not a literal
    CHECK(eval_exact("x1/2", {5}) == Scalar::exact(mpq_class(5, 2)));
    CHECK(eval_exact("1/2*x1", {4}) == Scalar::exact_int(2));
}

TEST_CASE("unary minus binds tighter than the exponent") {
    // grammar: factor := unary ("^" nonneg-int)?, so -x1^2 = (-x1)^2
    CHECK(eval_exact("-x1^2", {2}) == Scalar::exact_int(4));
    CHECK(eval_exact("0 - x1^2", {2}) == Scalar::exact_int(-4));
}

TEST_CASE("syntax errors carry a 0-based position") {
    try {
        parse_expr("sin(", 1);
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 4);
    }
    CHECK_THROWS_AS(parse_expr("x1 + ", 1), SyntaxError);
    CHECK_THROWS_AS(parse_expr("x1 @ 2", 1), SyntaxError);
    CHECK_THROWS_AS(parse_expr("x1^-2", 1), SyntaxError); // exponent must be nonnegative
    CHECK_THROWS_AS(parse_expr("x3", 2), VariableOutOfRange);
    CHECK_THROWS_AS(parse_expr("foo(x1)", 1), UnknownIdentifier);
}

TEST_CASE("transcendentals require the float backend") {
    std::vector<Scalar> c{Scalar::exact_int(0)};
    CHECK_THROWS_AS(eval_expr(*parse_expr("sin(x1)", 1), c, Backend::Exact),
                    BackendMismatch);
    CHECK_THROWS_AS(eval_expr(*parse_expr("pi", 1), c, Backend::Exact), BackendMismatch);
    CHECK(eval_float("sin(0)", {0.0}) == 0.0);
    CHECK(eval_float("cos(pi)", {0.0}) == doctest::Approx(-1.0));
    CHECK(eval_float("exp(1)", {0.0}) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("exact division by zero is reported") {
    CHECK_THROWS_AS(eval_exact("1/(x1-1)", {1}), DivisionByZero);
}

namespace {

// random AST per the grammar, for the round-trip property
ExprPtr random_ast(SplitMix64& rng, std::size_t dim, int depth) {
    auto node = [](Expr e) { return std::make_shared<const Expr>(std::move(e)); };
    if (depth == 0 || rng.below(4) == 0) {
        switch (rng.below(3)) {
            case 0: {
                Expr e{Expr::Kind::Lit};
                // the parser never produces negative literals (minus is a
                // Neg node), so fixed points of print/parse have lit >= 0
                e.lit = mpq_class(rng.range(0, 9), rng.range(1, 9));
                e.lit.canonicalize();
                return node(std::move(e));
            }
            case 1: {
                Expr e{Expr::Kind::Var};
                e.var = 1 + rng.below(dim);
                return node(std::move(e));
            }
            default: return node(Expr{Expr::Kind::Pi});
        }
    }
    switch (rng.below(8)) {
        case 0: case 1: {
            Expr e{Expr::Kind::Add};
            e.lhs = random_ast(rng, dim, depth - 1);
            e.rhs = random_ast(rng, dim, depth - 1);
            return node(std::move(e));
        }
        case 2: {
            Expr e{Expr::Kind::Sub};
            e.lhs = random_ast(rng, dim, depth - 1);
            e.rhs = random_ast(rng, dim, depth - 1);
            return node(std::move(e));
        }
        case 3: {
            Expr e{Expr::Kind::Mul};
            e.lhs = random_ast(rng, dim, depth - 1);
            e.rhs = random_ast(rng, dim, depth - 1);
            return node(std::move(e));
        }
        case 4: {
            Expr e{Expr::Kind::Div};
            e.lhs = random_ast(rng, dim, depth - 1);
            e.rhs = random_ast(rng, dim, depth - 1);
            return node(std::move(e));
        }
        case 5: {
            Expr e{Expr::Kind::Pow};
            e.lhs = random_ast(rng, dim, depth - 1);
            e.exponent = static_cast<unsigned>(rng.below(5));
            return node(std::move(e));
        }
        case 6: {
            Expr e{Expr::Kind::Neg};
            e.lhs = random_ast(rng, dim, depth - 1);
            return node(std::move(e));
        }
        default: {
            Expr e{static_cast<Expr::Kind>(static_cast<int>(Expr::Kind::Sin) + rng.below(3))};
            e.lhs = random_ast(rng, dim, depth - 1);
            return node(std::move(e));
        }
    }
}

} // namespace

TEST_CASE("print/parse round-trip is structurally exact") {
    SplitMix64 rng(42);
    for (int k = 0; k < 300; ++k) {
        ExprPtr e = random_ast(rng, 3, 4);
        std::string text = to_string(*e);
        ExprPtr back = parse_expr(text, 3);
        CHECK_MESSAGE(structurally_equal(*e, *back), "round-trip failed for: ", text);
    }
}

TEST_CASE("requires_float detects transcendental nodes") {
    CHECK(requires_float(*parse_expr("sin(x1)", 1)));
    CHECK(requires_float(*parse_expr("x1 + pi", 1)));
    CHECK_FALSE(requires_float(*parse_expr("x1^2 + 3/2", 1)));
}
