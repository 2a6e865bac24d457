#ifndef SPINV_EXPR_HPP
#define SPINV_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "opcount.hpp"

namespace spinv {

// Immutable expression trees over variables x_j_d (particle j, coordinate
// component d). The grammar is closed under differentiation: constants,
// variables, + - * /, integer powers, and {exp, log, sin, cos, sqrt, arccos}.

enum class ExprKind { constant, variable, add, sub, neg, mul, div, pow_int, func };

enum class Elementary { exp, log, sin, cos, sqrt, arccos };

const char* elementary_name(Elementary f);

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    double value = 0.0;      // constant
    int j = 0, d = 0;        // variable
    int exponent = 0;        // pow_int
    Elementary f = Elementary::exp;
    NodePtr lhs, rhs;
    bool depends = false;    // any variable in the subtree
};

// An expression plus its declared geometry (N particles, D components).
struct Expr {
    NodePtr root;
    int n = 0;
    int d = 0;
};

// Node constructors. They fold literal-zero branches (0 + e -> e,
// 0 * e -> 0, e^0 -> 1, ...) and multiplications by literal one; no other
// simplification is performed, so operation counts are a deterministic
// function of how an expression was built.
NodePtr make_const(double v);
NodePtr make_var(int j, int d);
NodePtr make_add(NodePtr a, NodePtr b);
NodePtr make_sub(NodePtr a, NodePtr b);
NodePtr make_neg(NodePtr a);
NodePtr make_mul(NodePtr a, NodePtr b);
NodePtr make_div(NodePtr a, NodePtr b);
NodePtr make_pow(NodePtr base, int exponent);
NodePtr make_func(Elementary f, NodePtr arg);

bool is_const_value(const NodePtr& e, double v);
bool structurally_equal(const NodePtr& a, const NodePtr& b);

// Infix grammar: '+','-' < '*','/' < unary '-' < '^'; parentheses;
// f(expr) application; variables written x_j_d (0-based); decimal literals
// and the named constant pi. Exponents are (optionally signed) integer
// literals. Throws parse_error with a character position on bad input and
// validates variable indices against (n, d).
Expr parse_expr(const std::string& text, int n, int d);

// Canonical fully parenthesized form; parse_expr(print_expr(e)) reproduces
// the tree structurally.
std::string print_expr(const Expr& e);
std::string print_node(const NodePtr& node);

// Exact symbolic partial derivative d(e)/d(x_j_d) via the chain rule.
Expr differentiate(const Expr& e, int j, int d);

// sum_d d^2 e / d x_j_d^2
Expr laplacian(const Expr& e, int j);

// Single tree walk; every internal node lands in exactly one bucket:
// variable-dependent mul/div/pow and elementary calls are counted, the rest
// (additions, subtractions, anything with a constant operand) is free.
OperationCount count_ops(const Expr& e);
OperationCount count_ops(const NodePtr& node);

// Evaluates at flattened positions: variable x_j_d reads point[j*D + d].
// Domain violations (log of a nonpositive value, etc.) surface as NaN/Inf.
double eval(const Expr& e, const std::vector<double>& point);

// Replaces every occurrence of x_j_d in e by the given subtree.
NodePtr substitute(const NodePtr& e, int j, int d, const NodePtr& replacement);

}  // namespace spinv

#endif
