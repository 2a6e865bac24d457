#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "errors.hpp"

namespace spinv {

const char* elementary_name(Elementary f) {
    switch (f) {
        case Elementary::exp: return "exp";
        case Elementary::log: return "log";
        case Elementary::sin: return "sin";
        case Elementary::cos: return "cos";
        case Elementary::sqrt: return "sqrt";
        case Elementary::arccos: return "arccos";
    }
    return "?";
}

namespace {

NodePtr node(ExprNode&& n) { return std::make_shared<const ExprNode>(std::move(n)); }

}  // namespace

NodePtr make_const(double v) {
    ExprNode n{};
    n.kind = ExprKind::constant;
    n.value = v;
    n.depends = false;
    return node(std::move(n));
}

NodePtr make_var(int j, int d) {
    ExprNode n{};
    n.kind = ExprKind::variable;
    n.j = j;
    n.d = d;
    n.depends = true;
    return node(std::move(n));
}

bool is_const_value(const NodePtr& e, double v) {
    return e && e->kind == ExprKind::constant && e->value == v;
}

NodePtr make_add(NodePtr a, NodePtr b) {
    if (is_const_value(a, 0.0)) return b;
    if (is_const_value(b, 0.0)) return a;
    ExprNode n{};
    n.kind = ExprKind::add;
    n.depends = a->depends || b->depends;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return node(std::move(n));
}

NodePtr make_sub(NodePtr a, NodePtr b) {
    if (is_const_value(b, 0.0)) return a;
    if (is_const_value(a, 0.0)) return make_neg(std::move(b));
    ExprNode n{};
    n.kind = ExprKind::sub;
    n.depends = a->depends || b->depends;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return node(std::move(n));
}

NodePtr make_neg(NodePtr a) {
    if (a->kind == ExprKind::constant) return make_const(-a->value);
    ExprNode n{};
    n.kind = ExprKind::neg;
    n.depends = a->depends;
    n.lhs = std::move(a);
    return node(std::move(n));
}

NodePtr make_mul(NodePtr a, NodePtr b) {
    if (is_const_value(a, 0.0) || is_const_value(b, 0.0)) return make_const(0.0);
    if (is_const_value(a, 1.0)) return b;
    if (is_const_value(b, 1.0)) return a;
    ExprNode n{};
    n.kind = ExprKind::mul;
    n.depends = a->depends || b->depends;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return node(std::move(n));
}

NodePtr make_div(NodePtr a, NodePtr b) {
    if (is_const_value(a, 0.0)) return make_const(0.0);
    if (is_const_value(b, 1.0)) return a;
    ExprNode n{};
    n.kind = ExprKind::div;
    n.depends = a->depends || b->depends;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return node(std::move(n));
}

NodePtr make_pow(NodePtr base, int exponent) {
    if (exponent == 0) return make_const(1.0);
    if (exponent == 1) return base;
    ExprNode n{};
    n.kind = ExprKind::pow_int;
    n.exponent = exponent;
    n.depends = base->depends;
    n.lhs = std::move(base);
    return node(std::move(n));
}

NodePtr make_func(Elementary f, NodePtr arg) {
    ExprNode n{};
    n.kind = ExprKind::func;
    n.f = f;
    n.depends = arg->depends;
    n.lhs = std::move(arg);
    return node(std::move(n));
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::constant: return a->value == b->value;
        case ExprKind::variable: return a->j == b->j && a->d == b->d;
        case ExprKind::pow_int:
            return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
        case ExprKind::func:
            return a->f == b->f && structurally_equal(a->lhs, b->lhs);
        case ExprKind::neg: return structurally_equal(a->lhs, b->lhs);
        default:
            return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
    }
}

// ----------------------------------------------------------------- parsing

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    int n;
    int d;

    [[noreturn]] void fail(const std::string& msg, std::size_t where) const {
        throw parse_error(msg + " at position " + std::to_string(where), where);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek_char(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool consume_char(char c) {
        if (peek_char(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr parse_expression() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (consume_char('+'))
                lhs = make_add(std::move(lhs), parse_term());
            else if (consume_char('-'))
                lhs = make_sub(std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (consume_char('*'))
                lhs = make_mul(std::move(lhs), parse_unary());
            else if (consume_char('/'))
                lhs = make_div(std::move(lhs), parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (consume_char('-')) return make_neg(parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (consume_char('^')) {
            skip_ws();
            std::size_t start = pos;
            bool negative = false;
            if (pos < text.size() && text[pos] == '-') {
                negative = true;
                ++pos;
            }
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                fail("exponent must be an integer literal", start);
            long v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                v = v * 10 + (text[pos] - '0');
                if (v > 1000000) fail("exponent too large", start);
                ++pos;
            }
            return make_pow(std::move(base), static_cast<int>(negative ? -v : v));
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input", pos);
        char ch = text[pos];
        if (ch == '(') {
            ++pos;
            NodePtr inner = parse_expression();
            if (!consume_char(')')) fail("expected ')'", pos);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(ch))) return parse_identifier();
        fail(std::string("unexpected character '") + ch + "'", pos);
    }

    NodePtr parse_number() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            } else {
                pos = mark;  // 'e' belongs to something else
            }
        }
        std::string lit = text.substr(start, pos - start);
        char* end = nullptr;
        double v = std::strtod(lit.c_str(), &end);
        if (end != lit.c_str() + lit.size()) fail("malformed number '" + lit + "'", start);
        return make_const(v);
    }

    NodePtr parse_identifier() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);
        if (name == "pi") return make_const(3.14159265358979323846);
        if (name.size() >= 2 && name[0] == 'x' && name[1] == '_') return parse_variable(name, start);
        static const std::pair<const char*, Elementary> funcs[] = {
            {"exp", Elementary::exp},   {"log", Elementary::log},   {"sin", Elementary::sin},
            {"cos", Elementary::cos},   {"sqrt", Elementary::sqrt}, {"arccos", Elementary::arccos},
        };
        for (const auto& [fname, f] : funcs) {
            if (name == fname) {
                if (!consume_char('(')) fail("expected '(' after function name", pos);
                NodePtr arg = parse_expression();
                if (!consume_char(')')) fail("expected ')'", pos);
                return make_func(f, std::move(arg));
            }
        }
        fail("unknown identifier '" + name + "'", start);
    }

    NodePtr parse_variable(const std::string& name, std::size_t start) {
        // x_j_d, both indices 0-based decimal
        std::size_t second = name.find('_', 2);
        if (second == std::string::npos || second == 2 || second + 1 >= name.size())
            fail("malformed variable '" + name + "' (expected x_j_d)", start);
        for (std::size_t i = 2; i < name.size(); ++i)
            if (i != second && !std::isdigit(static_cast<unsigned char>(name[i])))
                fail("malformed variable '" + name + "' (expected x_j_d)", start);
        int j = std::atoi(name.substr(2, second - 2).c_str());
        int dd = std::atoi(name.substr(second + 1).c_str());
        if (j >= n)
            fail("variable particle index " + std::to_string(j) + " out of range (N=" +
                     std::to_string(n) + ")",
                 start);
        if (dd >= d)
            fail("variable component index " + std::to_string(dd) + " out of range (D=" +
                     std::to_string(d) + ")",
                 start);
        return make_var(j, dd);
    }
};

}  // namespace

Expr parse_expr(const std::string& text, int n, int d) {
    if (n < 1 || d < 1) throw validation_error("parse_expr requires N >= 1 and D >= 1");
    Parser parser{text, 0, n, d};
    NodePtr root = parser.parse_expression();
    parser.skip_ws();
    if (parser.pos != text.size())
        throw parse_error("trailing input at position " + std::to_string(parser.pos), parser.pos);
    return Expr{std::move(root), n, d};
}

// ---------------------------------------------------------------- printing

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string print_node(const NodePtr& e) {
    switch (e->kind) {
        case ExprKind::constant: {
            if (e->value < 0) return "(-" + format_double(-e->value) + ")";
            return format_double(e->value);
        }
        case ExprKind::variable:
            return "x_" + std::to_string(e->j) + "_" + std::to_string(e->d);
        case ExprKind::add: return "(" + print_node(e->lhs) + " + " + print_node(e->rhs) + ")";
        case ExprKind::sub: return "(" + print_node(e->lhs) + " - " + print_node(e->rhs) + ")";
        case ExprKind::neg: return "(-" + print_node(e->lhs) + ")";
        case ExprKind::mul: return "(" + print_node(e->lhs) + " * " + print_node(e->rhs) + ")";
        case ExprKind::div: return "(" + print_node(e->lhs) + " / " + print_node(e->rhs) + ")";
        case ExprKind::pow_int:
            return "(" + print_node(e->lhs) + " ^ " +
                   (e->exponent < 0 ? "-" + std::to_string(-e->exponent)
                                    : std::to_string(e->exponent)) +
                   ")";
        case ExprKind::func:
            return std::string(elementary_name(e->f)) + "(" + print_node(e->lhs) + ")";
    }
    return "?";
}

std::string print_expr(const Expr& e) { return print_node(e.root); }

// --------------------------------------------------------- differentiation

namespace {

NodePtr diff_node(const NodePtr& e, int j, int d) {
    switch (e->kind) {
        case ExprKind::constant: return make_const(0.0);
        case ExprKind::variable: return make_const((e->j == j && e->d == d) ? 1.0 : 0.0);
        case ExprKind::add: return make_add(diff_node(e->lhs, j, d), diff_node(e->rhs, j, d));
        case ExprKind::sub: return make_sub(diff_node(e->lhs, j, d), diff_node(e->rhs, j, d));
        case ExprKind::neg: return make_neg(diff_node(e->lhs, j, d));
        case ExprKind::mul: {
            NodePtr df = diff_node(e->lhs, j, d);
            NodePtr dg = diff_node(e->rhs, j, d);
            return make_add(make_mul(std::move(df), e->rhs), make_mul(e->lhs, std::move(dg)));
        }
        case ExprKind::div: {
            NodePtr df = diff_node(e->lhs, j, d);
            NodePtr dg = diff_node(e->rhs, j, d);
            if (is_const_value(dg, 0.0)) return make_div(std::move(df), e->rhs);
            // (f' g - f g') / g^2
            return make_div(
                make_sub(make_mul(std::move(df), e->rhs), make_mul(e->lhs, std::move(dg))),
                make_pow(e->rhs, 2));
        }
        case ExprKind::pow_int: {
            NodePtr df = diff_node(e->lhs, j, d);
            // k * f^(k-1) * f'
            return make_mul(
                make_mul(make_const(static_cast<double>(e->exponent)), make_pow(e->lhs, e->exponent - 1)),
                std::move(df));
        }
        case ExprKind::func: {
            NodePtr df = diff_node(e->lhs, j, d);
            switch (e->f) {
                case Elementary::exp: return make_mul(std::move(df), e);
                case Elementary::log: return make_div(std::move(df), e->lhs);
                case Elementary::sin:
                    return make_mul(std::move(df), make_func(Elementary::cos, e->lhs));
                case Elementary::cos:
                    return make_neg(make_mul(std::move(df), make_func(Elementary::sin, e->lhs)));
                case Elementary::sqrt:
                    return make_div(std::move(df), make_mul(make_const(2.0), e));
                case Elementary::arccos:
                    // -f' / sqrt(1 - f^2)
                    return make_neg(make_div(
                        std::move(df),
                        make_func(Elementary::sqrt,
                                  make_sub(make_const(1.0), make_pow(e->lhs, 2)))));
            }
            break;
        }
    }
    throw validation_error("unhandled node kind in differentiate");
}

}  // namespace

Expr differentiate(const Expr& e, int j, int d) {
    if (j < 0 || j >= e.n)
        throw validation_error("particle index " + std::to_string(j) + " out of range");
    if (d < 0 || d >= e.d)
        throw validation_error("component index " + std::to_string(d) + " out of range");
    return Expr{diff_node(e.root, j, d), e.n, e.d};
}

Expr laplacian(const Expr& e, int j) {
    if (j < 0 || j >= e.n)
        throw validation_error("particle index " + std::to_string(j) + " out of range");
    NodePtr acc = make_const(0.0);
    for (int d = 0; d < e.d; ++d) {
        NodePtr second = diff_node(diff_node(e.root, j, d), j, d);
        acc = make_add(std::move(acc), std::move(second));
    }
    return Expr{std::move(acc), e.n, e.d};
}

// ----------------------------------------------------------------- counting

OperationCount count_ops(const NodePtr& e) {
    OperationCount c;
    switch (e->kind) {
        case ExprKind::constant:
        case ExprKind::variable:
            return c;
        case ExprKind::add:
        case ExprKind::sub:
            c = count_ops(e->lhs) + count_ops(e->rhs);
            c.free += 1;
            return c;
        case ExprKind::neg:
            c = count_ops(e->lhs);
            c.free += 1;  // multiplication by -1
            return c;
        case ExprKind::mul:
            c = count_ops(e->lhs) + count_ops(e->rhs);
            if (e->lhs->depends && e->rhs->depends)
                c.counted += 1;
            else
                c.free += 1;  // scalar multiplication
            return c;
        case ExprKind::div:
            c = count_ops(e->lhs) + count_ops(e->rhs);
            if (e->rhs->depends)
                c.counted += 1;
            else
                c.free += 1;  // division by a scalar
            return c;
        case ExprKind::pow_int:
            c = count_ops(e->lhs);
            if (e->lhs->depends)
                c.counted += 1;
            else
                c.free += 1;
            return c;
        case ExprKind::func:
            c = count_ops(e->lhs);
            if (e->lhs->depends)
                c.counted += 1;
            else
                c.free += 1;
            return c;
    }
    return c;
}

OperationCount count_ops(const Expr& e) { return count_ops(e.root); }

// --------------------------------------------------------------- evaluation

namespace {

double eval_node(const NodePtr& e, const std::vector<double>& point, int d_stride) {
    switch (e->kind) {
        case ExprKind::constant: return e->value;
        case ExprKind::variable:
            return point[static_cast<std::size_t>(e->j * d_stride + e->d)];
        case ExprKind::add: return eval_node(e->lhs, point, d_stride) + eval_node(e->rhs, point, d_stride);
        case ExprKind::sub: return eval_node(e->lhs, point, d_stride) - eval_node(e->rhs, point, d_stride);
        case ExprKind::neg: return -eval_node(e->lhs, point, d_stride);
        case ExprKind::mul: return eval_node(e->lhs, point, d_stride) * eval_node(e->rhs, point, d_stride);
        case ExprKind::div: return eval_node(e->lhs, point, d_stride) / eval_node(e->rhs, point, d_stride);
        case ExprKind::pow_int:
            return std::pow(eval_node(e->lhs, point, d_stride), static_cast<double>(e->exponent));
        case ExprKind::func: {
            double a = eval_node(e->lhs, point, d_stride);
            switch (e->f) {
                case Elementary::exp: return std::exp(a);
                case Elementary::log: return std::log(a);
                case Elementary::sin: return std::sin(a);
                case Elementary::cos: return std::cos(a);
                case Elementary::sqrt: return std::sqrt(a);
                case Elementary::arccos: return std::acos(a);
            }
        }
    }
    return 0.0;
}

}  // namespace

double eval(const Expr& e, const std::vector<double>& point) {
    if (point.size() != static_cast<std::size_t>(e.n) * static_cast<std::size_t>(e.d))
        throw dimension_error("point has " + std::to_string(point.size()) + " components, expected " +
                              std::to_string(e.n * e.d));
    return eval_node(e.root, point, e.d);
}

NodePtr substitute(const NodePtr& e, int j, int d, const NodePtr& replacement) {
    switch (e->kind) {
        case ExprKind::constant: return e;
        case ExprKind::variable: return (e->j == j && e->d == d) ? replacement : e;
        case ExprKind::add:
            return make_add(substitute(e->lhs, j, d, replacement), substitute(e->rhs, j, d, replacement));
        case ExprKind::sub:
            return make_sub(substitute(e->lhs, j, d, replacement), substitute(e->rhs, j, d, replacement));
        case ExprKind::neg: return make_neg(substitute(e->lhs, j, d, replacement));
        case ExprKind::mul:
            return make_mul(substitute(e->lhs, j, d, replacement), substitute(e->rhs, j, d, replacement));
        case ExprKind::div:
            return make_div(substitute(e->lhs, j, d, replacement), substitute(e->rhs, j, d, replacement));
        case ExprKind::pow_int: return make_pow(substitute(e->lhs, j, d, replacement), e->exponent);
        case ExprKind::func: return make_func(e->f, substitute(e->lhs, j, d, replacement));
    }
    return e;
}

}  // namespace spinv
