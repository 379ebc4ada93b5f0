#include "covgrav/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace covgrav {

namespace {

const std::set<std::string> kFunctions = {"sin", "cos", "exp", "log", "sqrt", "pow"};

struct Parser {
    const std::string& src;
    size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& expected) {
        std::ostringstream msg;
        msg << "syntax error at offset " << pos << ": expected " << expected;
        throw ParseError(msg.str(), pos, expected);
    }

    ExprPtr parse() {
        skip_ws();
        if (pos >= src.size()) fail("nonempty expression");
        auto e = expr();
        skip_ws();
        if (pos != src.size()) fail("end of input or operator");
        return e;
    }

    ExprPtr expr() {
        auto lhs = term();
        for (;;) {
            if (accept('+')) {
                auto n = std::make_unique<ExprNode>();
                n->kind = ExprKind::Add;
                n->a = std::move(lhs);
                n->b = term();
                lhs = std::move(n);
            } else if (accept('-')) {
                auto n = std::make_unique<ExprNode>();
                n->kind = ExprKind::Sub;
                n->a = std::move(lhs);
                n->b = term();
                lhs = std::move(n);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) {
                auto n = std::make_unique<ExprNode>();
                n->kind = ExprKind::Mul;
                n->a = std::move(lhs);
                n->b = unary();
                lhs = std::move(n);
            } else if (accept('/')) {
                auto n = std::make_unique<ExprNode>();
                n->kind = ExprKind::Div;
                n->a = std::move(lhs);
                n->b = unary();
                lhs = std::move(n);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary() {
        if (accept('-')) {
            auto n = std::make_unique<ExprNode>();
            n->kind = ExprKind::Neg;
            n->a = unary();
            return n;
        }
        return power();
    }

    ExprPtr power() {
        auto base = primary();
        if (!accept('^')) return base;
        // exponent: literal, optionally negated
        skip_ws();
        bool neg = accept('-');
        skip_ws();
        if (pos >= src.size() || !(std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
            fail("a numeric literal exponent");
        bool is_int = false;
        double v = number(&is_int);
        auto n = std::make_unique<ExprNode>();
        n->kind = ExprKind::PowLiteral;
        n->a = std::move(base);
        n->literal = neg ? -v : v;
        n->literal_is_int = is_int;
        return n;
    }

    double number(bool* is_int) {
        const char* begin = src.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("a number");
        std::string text(begin, static_cast<size_t>(end - begin));
        *is_int = text.find_first_of(".eE") == std::string::npos;
        pos += static_cast<size_t>(end - begin);
        return v;
    }

    ExprPtr primary() {
        skip_ws();
        if (pos >= src.size()) fail("a value");
        char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            auto n = std::make_unique<ExprNode>();
            n->kind = ExprKind::Literal;
            n->literal = number(&n->literal_is_int);
            return n;
        }
        if (c == '(') {
            ++pos;
            auto e = expr();
            if (!accept(')')) fail("')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            std::string name = src.substr(start, pos - start);
            if (peek() == '(') {
                if (!kFunctions.count(name)) {
                    pos = start;
                    fail("a known function name (sin, cos, exp, log, sqrt, pow)");
                }
                ++pos;  // consume '('
                auto n = std::make_unique<ExprNode>();
                n->kind = ExprKind::Call;
                n->name = name;
                n->a = expr();
                if (name == "pow") {
                    if (!accept(',')) fail("',' between pow arguments");
                    n->b = expr();
                } else if (peek() == ',') {
                    fail("')' (function takes one argument)");
                }
                if (!accept(')')) fail("')'");
                return n;
            }
            auto n = std::make_unique<ExprNode>();
            n->kind = ExprKind::Ident;
            n->name = name;
            return n;
        }
        fail("a number, identifier, function call, or '('");
    }
};

void print_rec(const ExprNode& e, std::ostringstream& out) {
    switch (e.kind) {
        case ExprKind::Literal: {
            std::ostringstream v;
            v.precision(17);
            v << e.literal;
            out << v.str();
            break;
        }
        case ExprKind::Ident:
            out << e.name;
            break;
        case ExprKind::Neg:
            out << "(-";
            print_rec(*e.a, out);
            out << ")";
            break;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div: {
            const char* op = e.kind == ExprKind::Add   ? "+"
                             : e.kind == ExprKind::Sub ? "-"
                             : e.kind == ExprKind::Mul ? "*"
                                                       : "/";
            out << "(";
            print_rec(*e.a, out);
            out << op;
            print_rec(*e.b, out);
            out << ")";
            break;
        }
        case ExprKind::PowLiteral: {
            out << "(";
            print_rec(*e.a, out);
            std::ostringstream v;
            v.precision(17);
            v << e.literal;
            out << "^" << (e.literal < 0 ? "" : "") << v.str() << ")";
            break;
        }
        case ExprKind::Call:
            out << e.name << "(";
            print_rec(*e.a, out);
            if (e.b) {
                out << ",";
                print_rec(*e.b, out);
            }
            out << ")";
            break;
    }
}

}  // namespace

ExprPtr parse_expression(const std::string& src) {
    Parser p(src);
    return p.parse();
}

std::string print_expression(const ExprNode& e) {
    std::ostringstream out;
    print_rec(e, out);
    return out.str();
}

ExprPtr clone_expression(const ExprNode& e) {
    auto n = std::make_unique<ExprNode>();
    n->kind = e.kind;
    n->literal = e.literal;
    n->literal_is_int = e.literal_is_int;
    n->name = e.name;
    if (e.a) n->a = clone_expression(*e.a);
    if (e.b) n->b = clone_expression(*e.b);
    return n;
}

void collect_identifiers(const ExprNode& e, std::set<std::string>& out) {
    if (e.kind == ExprKind::Ident) out.insert(e.name);
    if (e.a) collect_identifiers(*e.a, out);
    if (e.b) collect_identifiers(*e.b, out);
}

}  // namespace covgrav
