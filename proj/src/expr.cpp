#include "finmon/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace finmon {

namespace {

ExprPtr node(Expr e) { return std::make_shared<Expr>(std::move(e)); }

ExprPtr binary(Expr::Kind k, ExprPtr l, ExprPtr r) {
    Expr e;
    e.kind = k;
    e.lhs = std::move(l);
    e.rhs = std::move(r);
    return node(std::move(e));
}

ExprPtr unary(Expr::Kind k, ExprPtr l) {
    Expr e;
    e.kind = k;
    e.lhs = std::move(l);
    return node(std::move(e));
}

class Parser {
public:
    Parser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view text_;
    std::size_t dim_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+'))
                e = binary(Expr::Kind::Add, e, term());
            else if (eat('-'))
                e = binary(Expr::Kind::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (eat('*'))
                e = binary(Expr::Kind::Mul, e, factor());
            else if (eat('/'))
                e = binary(Expr::Kind::Div, e, factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        ExprPtr base = unary_expr();
        if (eat('^')) {
            Expr e;
            e.kind = Expr::Kind::Pow;
            e.lhs = base;
            e.exponent = static_cast<unsigned>(read_uint("exponent"));
            return node(std::move(e));
        }
        return base;
    }

    ExprPtr unary_expr() {
        if (eat('-')) return unary(Expr::Kind::Neg, unary_expr());
        return atom();
    }

    unsigned long read_uint(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start)
            throw SyntaxError(std::string("expected ") + what, pos_);
        return std::stoul(std::string(text_.substr(start, pos_ - start)));
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("expected expression", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return rational();
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw SyntaxError("expected expression", pos_);
    }

    ExprPtr rational() {
        unsigned long num = read_uint("number");
        mpq_class q(static_cast<long>(num));
        if (peek() == '/') {
            // lookahead: only a literal denominator binds here; otherwise
            // the '/' belongs to term()
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                std::size_t dpos = pos_;
                unsigned long den = read_uint("denominator");
                if (den == 0) throw SyntaxError("denominator must be positive", dpos);
                q = mpq_class(static_cast<long>(num), static_cast<long>(den));
                q.canonicalize();
            } else {
                pos_ = save;
            }
        }
        Expr e;
        e.kind = Expr::Kind::Lit;
        e.lit = q;
        return node(std::move(e));
    }

    ExprPtr identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string id(text_.substr(start, pos_ - start));
        if (id == "pi") {
            Expr e;
            e.kind = Expr::Kind::Pi;
            return node(std::move(e));
        }
        if (id == "sin" || id == "cos" || id == "exp") {
            if (!eat('(')) throw SyntaxError("expected '(' after '" + id + "'", pos_);
            ExprPtr arg = expr();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            Expr::Kind k = id == "sin"   ? Expr::Kind::Sin
                           : id == "cos" ? Expr::Kind::Cos
                                         : Expr::Kind::Exp;
            return unary(k, arg);
        }
        if (id.size() > 1 && id[0] == 'x' &&
            std::all_of(id.begin() + 1, id.end(),
                        [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
            std::size_t idx = std::stoul(id.substr(1));
            if (idx == 0 || idx > dim_)
                throw VariableOutOfRange("variable x" + std::to_string(idx) +
                                         " out of range for dimension " + std::to_string(dim_));
            Expr e;
            e.kind = Expr::Kind::Var;
            e.var = idx;
            return node(std::move(e));
        }
        throw UnknownIdentifier("unknown identifier '" + id + "'");
    }
};

} // namespace

ExprPtr parse_expr(std::string_view text, std::size_t dim) {
    return Parser(text, dim).parse();
}

bool requires_float(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Sin:
        case Expr::Kind::Cos:
        case Expr::Kind::Exp:
        case Expr::Kind::Pi:
            return true;
        case Expr::Kind::Var:
        case Expr::Kind::Lit:
            return false;
        default:
            break;
    }
    if (e.lhs && requires_float(*e.lhs)) return true;
    if (e.rhs && requires_float(*e.rhs)) return true;
    return false;
}

Scalar eval_expr(const Expr& e, std::span<const Scalar> coords, Backend backend) {
    switch (e.kind) {
        case Expr::Kind::Lit:
            return backend == Backend::Exact ? Scalar::exact(e.lit) : Scalar::fp(e.lit.get_d());
        case Expr::Kind::Var: {
            if (e.var > coords.size())
                throw VariableOutOfRange("variable x" + std::to_string(e.var) +
                                         " exceeds coordinate count " +
                                         std::to_string(coords.size()));
            const Scalar& v = coords[e.var - 1];
            if (v.backend() != backend)
                throw BackendMismatch("coordinate backend does not match evaluation backend");
            return v;
        }
        case Expr::Kind::Pi:
            if (backend == Backend::Exact)
                throw BackendMismatch("'pi' requires the float backend");
            return Scalar::fp(M_PI);
        case Expr::Kind::Neg:
            return -eval_expr(*e.lhs, coords, backend);
        case Expr::Kind::Add:
            return eval_expr(*e.lhs, coords, backend) + eval_expr(*e.rhs, coords, backend);
        case Expr::Kind::Sub:
            return eval_expr(*e.lhs, coords, backend) - eval_expr(*e.rhs, coords, backend);
        case Expr::Kind::Mul:
            return eval_expr(*e.lhs, coords, backend) * eval_expr(*e.rhs, coords, backend);
        case Expr::Kind::Div:
            return eval_expr(*e.lhs, coords, backend) / eval_expr(*e.rhs, coords, backend);
        case Expr::Kind::Pow:
            return eval_expr(*e.lhs, coords, backend).pow(e.exponent);
        case Expr::Kind::Sin:
        case Expr::Kind::Cos:
        case Expr::Kind::Exp: {
            if (backend == Backend::Exact)
                throw BackendMismatch("transcendental functions require the float backend");
            std::complex<double> z = eval_expr(*e.lhs, coords, backend).to_complex();
            std::complex<double> r = e.kind == Expr::Kind::Sin   ? std::sin(z)
                                     : e.kind == Expr::Kind::Cos ? std::cos(z)
                                                                 : std::exp(z);
            return Scalar::fp(r);
        }
    }
    throw Error("unreachable expression kind");
}

namespace {
std::string print(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Lit: {
            if (e.lit.get_den() == 1) return e.lit.get_num().get_str();
            return e.lit.get_str();
        }
        case Expr::Kind::Var:
            return "x" + std::to_string(e.var);
        case Expr::Kind::Pi:
            return "pi";
        case Expr::Kind::Neg:
            // a Pow child would otherwise rebind: "-a^2" parses as (-a)^2
            if (e.lhs->kind == Expr::Kind::Pow) return "-(" + print(*e.lhs) + ")";
            return "-" + print(*e.lhs);
        case Expr::Kind::Add:
            return "(" + print(*e.lhs) + "+" + print(*e.rhs) + ")";
        case Expr::Kind::Sub:
            return "(" + print(*e.lhs) + "-" + print(*e.rhs) + ")";
        case Expr::Kind::Mul:
            return "(" + print(*e.lhs) + "*" + print(*e.rhs) + ")";
        case Expr::Kind::Div: {
            std::string r = print(*e.rhs);
            // "1/1/9" would relex as the literal 1/1; keep the divisor apart
            if (e.lhs->kind == Expr::Kind::Lit && e.lhs->lit.get_den() == 1 &&
                std::isdigit(static_cast<unsigned char>(r[0])))
                r = "(" + r + ")";
            return "(" + print(*e.lhs) + "/" + r + ")";
        }
        case Expr::Kind::Pow: {
            std::string base = e.lhs->kind == Expr::Kind::Pow || e.lhs->kind == Expr::Kind::Lit
                                   ? "(" + print(*e.lhs) + ")"
                                   : print(*e.lhs);
            return base + "^" + std::to_string(e.exponent);
        }
        case Expr::Kind::Sin:
            return "sin(" + print(*e.lhs) + ")";
        case Expr::Kind::Cos:
            return "cos(" + print(*e.lhs) + ")";
        case Expr::Kind::Exp:
            return "exp(" + print(*e.lhs) + ")";
    }
    throw Error("unreachable expression kind");
}
} // namespace

std::string to_string(const Expr& e) { return print(e); }

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Lit:
            return a.lit == b.lit;
        case Expr::Kind::Var:
            return a.var == b.var;
        case Expr::Kind::Pi:
            return true;
        case Expr::Kind::Pow:
            return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
        default:
            break;
    }
    if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
    if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
    if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
    return true;
}

} // namespace finmon
