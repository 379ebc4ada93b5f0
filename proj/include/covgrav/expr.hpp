#pragma once

// Closed-form expression trees for metric and vector-field components.
// Grammar: standard precedence (^  >  unary -  >  * /  >  + -), left
// associative binaries, parentheses, calls sin/cos/exp/log/sqrt/pow. The ^
// operator requires a literal exponent; the two-argument pow call accepts
// general expressions.

#include <array>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "covgrav/dual.hpp"

namespace covgrav {

struct ParseError : std::runtime_error {
    size_t offset;
    std::string expected;
    ParseError(std::string msg, size_t off, std::string exp)
        : std::runtime_error(std::move(msg)), offset(off), expected(std::move(exp)) {}
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExprNode;
using ExprPtr = std::unique_ptr<ExprNode>;

enum class ExprKind { Literal, Ident, Neg, Add, Sub, Mul, Div, PowLiteral, Call };

struct ExprNode {
    ExprKind kind;
    double literal = 0.0;      // Literal, and the exponent of PowLiteral
    bool literal_is_int = false;
    std::string name;          // Ident and Call
    ExprPtr a, b;              // operands
};

ExprPtr parse_expression(const std::string& src);
std::string print_expression(const ExprNode& e);
ExprPtr clone_expression(const ExprNode& e);

// every identifier the expression reads
void collect_identifiers(const ExprNode& e, std::set<std::string>& out);

// Evaluation context: 4 coordinate values of scalar type T plus named real
// parameters. Template so the same trees evaluate as numbers, Taylor jets or
// seeded duals.
template <class T>
struct EvalContext {
    std::array<std::string, 4> coord_names;
    std::array<T, 4> coords;
    const std::map<std::string, double>* parameters = nullptr;
};

template <class T>
T eval_expression(const ExprNode& e, const EvalContext<T>& ctx) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sqrt;
    switch (e.kind) {
        case ExprKind::Literal:
            return one_like(ctx.coords[0]) * e.literal;
        case ExprKind::Ident: {
            for (int i = 0; i < 4; ++i)
                if (ctx.coord_names[i] == e.name) return ctx.coords[i];
            if (ctx.parameters) {
                auto it = ctx.parameters->find(e.name);
                if (it != ctx.parameters->end()) return one_like(ctx.coords[0]) * it->second;
            }
            throw EvalError("unresolved identifier '" + e.name + "'");
        }
        case ExprKind::Neg:
            return -eval_expression(*e.a, ctx);
        case ExprKind::Add:
            return eval_expression(*e.a, ctx) + eval_expression(*e.b, ctx);
        case ExprKind::Sub:
            return eval_expression(*e.a, ctx) - eval_expression(*e.b, ctx);
        case ExprKind::Mul:
            return eval_expression(*e.a, ctx) * eval_expression(*e.b, ctx);
        case ExprKind::Div:
            return eval_expression(*e.a, ctx) / eval_expression(*e.b, ctx);
        case ExprKind::PowLiteral: {
            T base = eval_expression(*e.a, ctx);
            if (e.literal_is_int) return pow(base, static_cast<int>(e.literal));
            return pow(base, e.literal);
        }
        case ExprKind::Call: {
            T x = eval_expression(*e.a, ctx);
            if (e.name == "sin") return sin(x);
            if (e.name == "cos") return cos(x);
            if (e.name == "exp") return exp(x);
            if (e.name == "log") return log(x);
            if (e.name == "sqrt") return sqrt(x);
            if (e.name == "pow") return pow(x, eval_expression(*e.b, ctx));
            throw EvalError("unknown function '" + e.name + "'");
        }
    }
    throw EvalError("corrupt expression node");
}

}  // namespace covgrav
