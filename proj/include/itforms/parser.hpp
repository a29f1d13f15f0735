// itforms - expression parser.
//
// Grammar:
//   expr   := term { ("+"|"-") term } ;
//   term   := factor { ("*"|"/") factor } ;
//   factor := base [ "^" signed-integer ] ;
//   base   := number | ident | ident "(" expr ")" | "(" expr ")" | "-" factor ;
//
// Parsing yields a raw syntax tree first; the raw tree preserves operand
// order, which matters when the same grammar is reused for Grassmann-valued
// entries where factors anticommute.
#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "chart.hpp"
#include "errors.hpp"
#include "scalar_expr.hpp"

namespace itforms {

struct RawExpr;
using RawPtr = std::shared_ptr<const RawExpr>;

struct RawExpr {
    enum class Kind { Number, Ident, Call, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind;
    Rational number;          // Number
    std::string ident;        // Ident, Call (function name)
    long long exponent = 0;   // Pow
    RawPtr lhs, rhs;          // binary ops; Call/Neg/Pow use lhs
    std::size_t pos = 0;      // source position for diagnostics
};

namespace parser_detail {

struct Lexer {
    const std::string& text;
    std::size_t at = 0;

    explicit Lexer(const std::string& t) : text(t) {}

    void skip_ws() {
        while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
    }
    bool done() {
        skip_ws();
        return at >= text.size();
    }
    char peek() {
        skip_ws();
        return at < text.size() ? text[at] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (at < text.size() && text[at] == c) {
            ++at;
            return true;
        }
        return false;
    }
};

inline RawPtr node(RawExpr n) { return std::make_shared<RawExpr>(std::move(n)); }

inline RawPtr parse_number(Lexer& lx) {
    std::size_t start = lx.at;
    BigInt mantissa = 0;
    long long frac_digits = 0;
    bool any = false;
    while (lx.at < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.at]))) {
        mantissa = mantissa * 10 + (lx.text[lx.at] - '0');
        ++lx.at;
        any = true;
    }
    if (lx.at < lx.text.size() && lx.text[lx.at] == '.') {
        ++lx.at;
        bool frac = false;
        while (lx.at < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.at]))) {
            mantissa = mantissa * 10 + (lx.text[lx.at] - '0');
            ++frac_digits;
            ++lx.at;
            frac = true;
        }
        if (!frac) throw ParseError("expected digits after decimal point", lx.at);
    }
    if (!any) throw ParseError("expected a number", start);
    long long exp10 = 0;
    if (lx.at < lx.text.size() && (lx.text[lx.at] == 'e' || lx.text[lx.at] == 'E')) {
        std::size_t save = lx.at;
        ++lx.at;
        long long sign = 1;
        if (lx.at < lx.text.size() && (lx.text[lx.at] == '+' || lx.text[lx.at] == '-')) {
            if (lx.text[lx.at] == '-') sign = -1;
            ++lx.at;
        }
        if (lx.at < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.at]))) {
            while (lx.at < lx.text.size() &&
                   std::isdigit(static_cast<unsigned char>(lx.text[lx.at]))) {
                exp10 = exp10 * 10 + (lx.text[lx.at] - '0');
                ++lx.at;
            }
            exp10 *= sign;
        } else {
            lx.at = save;  // 'e' belongs to a following identifier, not this literal
        }
    }
    Rational value(mantissa);
    long long shift = exp10 - frac_digits;
    if (shift > 0)
        value *= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift)));
    else if (shift < 0)
        value /= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift)));
    RawExpr n;
    n.kind = RawExpr::Kind::Number;
    n.number = std::move(value);
    n.pos = start;
    return node(std::move(n));
}

inline std::string parse_ident(Lexer& lx) {
    std::size_t start = lx.at;
    std::string s;
    if (lx.at < lx.text.size() &&
        (std::isalpha(static_cast<unsigned char>(lx.text[lx.at])) || lx.text[lx.at] == '_')) {
        while (lx.at < lx.text.size() &&
               (std::isalnum(static_cast<unsigned char>(lx.text[lx.at])) ||
                lx.text[lx.at] == '_')) {
            s += lx.text[lx.at];
            ++lx.at;
        }
    }
    if (s.empty()) throw ParseError("expected an identifier", start);
    return s;
}

inline long long parse_signed_integer(Lexer& lx) {
    lx.skip_ws();
    std::size_t start = lx.at;
    long long sign = 1;
    if (lx.at < lx.text.size() && (lx.text[lx.at] == '+' || lx.text[lx.at] == '-')) {
        if (lx.text[lx.at] == '-') sign = -1;
        ++lx.at;
    }
    if (lx.at >= lx.text.size() || !std::isdigit(static_cast<unsigned char>(lx.text[lx.at])))
        throw ParseError("expected an integer exponent", start);
    long long v = 0;
    while (lx.at < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.at]))) {
        v = v * 10 + (lx.text[lx.at] - '0');
        if (v > (1ll << 40)) throw ParseError("exponent too large", start);
        ++lx.at;
    }
    return sign * v;
}

RawPtr parse_expr(Lexer& lx);

inline RawPtr parse_base(Lexer& lx) {
    lx.skip_ws();
    std::size_t start = lx.at;
    if (lx.at >= lx.text.size()) throw ParseError("unexpected end of expression", lx.at);
    char c = lx.text[lx.at];
    if (c == '-') {
        ++lx.at;
        RawExpr n;
        n.kind = RawExpr::Kind::Neg;
        n.pos = start;
        // "-" factor: bind the following factor (including a possible "^").
        RawPtr inner_base = parse_base(lx);
        if (lx.peek() == '^') {
            lx.consume('^');
            RawExpr p;
            p.kind = RawExpr::Kind::Pow;
            p.lhs = inner_base;
            p.exponent = parse_signed_integer(lx);
            p.pos = start;
            inner_base = node(std::move(p));
        }
        n.lhs = inner_base;
        return node(std::move(n));
    }
    if (c == '(') {
        ++lx.at;
        RawPtr inner = parse_expr(lx);
        if (!lx.consume(')')) throw ParseError("expected ')'", lx.at);
        return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number(lx);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = parse_ident(lx);
        if (lx.peek() == '(') {
            lx.consume('(');
            RawPtr arg = parse_expr(lx);
            if (!lx.consume(')')) throw ParseError("expected ')'", lx.at);
            RawExpr n;
            n.kind = RawExpr::Kind::Call;
            n.ident = name;
            n.lhs = arg;
            n.pos = start;
            return node(std::move(n));
        }
        RawExpr n;
        n.kind = RawExpr::Kind::Ident;
        n.ident = name;
        n.pos = start;
        return node(std::move(n));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", lx.at);
}

inline RawPtr parse_factor(Lexer& lx) {
    RawPtr base = parse_base(lx);
    if (lx.peek() == '^') {
        lx.consume('^');
        RawExpr n;
        n.kind = RawExpr::Kind::Pow;
        n.lhs = base;
        n.pos = base->pos;
        n.exponent = parse_signed_integer(lx);
        return node(std::move(n));
    }
    return base;
}

inline RawPtr parse_term(Lexer& lx) {
    RawPtr lhs = parse_factor(lx);
    while (true) {
        char c = lx.peek();
        if (c != '*' && c != '/') return lhs;
        lx.consume(c);
        RawPtr rhs = parse_factor(lx);
        RawExpr n;
        n.kind = c == '*' ? RawExpr::Kind::Mul : RawExpr::Kind::Div;
        n.lhs = lhs;
        n.rhs = rhs;
        n.pos = lhs->pos;
        lhs = node(std::move(n));
    }
}

inline RawPtr parse_expr(Lexer& lx) {
    RawPtr lhs = parse_term(lx);
    while (true) {
        char c = lx.peek();
        if (c != '+' && c != '-') return lhs;
        lx.consume(c);
        RawPtr rhs = parse_term(lx);
        RawExpr n;
        n.kind = c == '+' ? RawExpr::Kind::Add : RawExpr::Kind::Sub;
        n.lhs = lhs;
        n.rhs = rhs;
        n.pos = lhs->pos;
        lhs = node(std::move(n));
    }
}

}  // namespace parser_detail

inline RawPtr parse_raw(const std::string& text) {
    parser_detail::Lexer lx(text);
    RawPtr e = parser_detail::parse_expr(lx);
    if (!lx.done()) throw ParseError("unexpected trailing input", lx.at);
    return e;
}

inline ScalarExpr raw_to_scalar(const RawPtr& raw, const Chart& chart) {
    using K = RawExpr::Kind;
    switch (raw->kind) {
        case K::Number:
            return ScalarExpr::constant(raw->number);
        case K::Ident: {
            int idx = chart.index_of(raw->ident);
            if (idx < 0) throw UnknownIdentifierError(raw->ident, raw->pos);
            return ScalarExpr::var(idx);
        }
        case K::Call: {
            auto fn = fn_by_name(raw->ident);
            if (!fn) throw UnknownIdentifierError(raw->ident, raw->pos);
            return ScalarExpr::apply(*fn, raw_to_scalar(raw->lhs, chart));
        }
        case K::Neg:
            return -raw_to_scalar(raw->lhs, chart);
        case K::Add:
            return raw_to_scalar(raw->lhs, chart) + raw_to_scalar(raw->rhs, chart);
        case K::Sub:
            return raw_to_scalar(raw->lhs, chart) - raw_to_scalar(raw->rhs, chart);
        case K::Mul:
            return raw_to_scalar(raw->lhs, chart) * raw_to_scalar(raw->rhs, chart);
        case K::Div:
            return raw_to_scalar(raw->lhs, chart) / raw_to_scalar(raw->rhs, chart);
        case K::Pow:
            return raw_to_scalar(raw->lhs, chart).pow(raw->exponent);
    }
    throw Error("unreachable raw node kind");
}

inline ScalarExpr parse(const std::string& text, const Chart& chart) {
    return raw_to_scalar(parse_raw(text), chart);
}

}  // namespace itforms
