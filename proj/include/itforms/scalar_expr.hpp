// itforms - exact symbolic scalar expressions over chart coordinates.
//
// Expression trees are immutable and always kept in a light normal form:
// sums and products are flattened, rational constants folded, like terms in
// sums collected with rational multipliers, product factors sorted under a
// fixed total order and merged into integer powers.  x^0 -> 1, x^1 -> x,
// 0*e -> 0, 1*e -> e.  No distribution of products over sums and no trig
// simplification happens here; semantic equality is decided downstream by
// seeded randomized evaluation (eq_randomized).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "sampling.hpp"

namespace itforms {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

inline const char* fn_name(Fn f) {
    switch (f) {
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Tan: return "tan";
        case Fn::Exp: return "exp";
        case Fn::Log: return "log";
        case Fn::Sqrt: return "sqrt";
        case Fn::Sinh: return "sinh";
        case Fn::Cosh: return "cosh";
    }
    return "?";
}

inline std::optional<Fn> fn_by_name(const std::string& s) {
    static const std::pair<const char*, Fn> table[] = {
        {"sin", Fn::Sin},   {"cos", Fn::Cos},   {"tan", Fn::Tan},  {"exp", Fn::Exp},
        {"log", Fn::Log},   {"sqrt", Fn::Sqrt}, {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh}};
    for (const auto& [name, fn] : table)
        if (s == name) return fn;
    return std::nullopt;
}

namespace detail {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Constant, Var, Apply, Power, Product, Sum };
    Kind kind;
    Rational value;              // Constant
    int var = -1;                // Var
    Fn fn = Fn::Sin;             // Apply
    long long exponent = 0;      // Power
    std::vector<ExprPtr> kids;   // Apply/Power: [0] operand; Sum/Product: children
};

inline int kind_rank(ExprNode::Kind k) { return static_cast<int>(k); }

// Total structural order; 0 means structurally identical trees.
inline int compare(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
    switch (a->kind) {
        case ExprNode::Kind::Constant:
            if (a->value == b->value) return 0;
            return a->value < b->value ? -1 : 1;
        case ExprNode::Kind::Var:
            if (a->var == b->var) return 0;
            return a->var < b->var ? -1 : 1;
        case ExprNode::Kind::Apply: {
            if (a->fn != b->fn) return static_cast<int>(a->fn) < static_cast<int>(b->fn) ? -1 : 1;
            return compare(a->kids[0], b->kids[0]);
        }
        case ExprNode::Kind::Power: {
            int c = compare(a->kids[0], b->kids[0]);
            if (c != 0) return c;
            if (a->exponent == b->exponent) return 0;
            return a->exponent < b->exponent ? -1 : 1;
        }
        case ExprNode::Kind::Product:
        case ExprNode::Kind::Sum: {
            std::size_t n = std::min(a->kids.size(), b->kids.size());
            for (std::size_t i = 0; i < n; ++i) {
                int c = compare(a->kids[i], b->kids[i]);
                if (c != 0) return c;
            }
            if (a->kids.size() == b->kids.size()) return 0;
            return a->kids.size() < b->kids.size() ? -1 : 1;
        }
    }
    return 0;
}

inline ExprPtr make_constant(Rational v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Constant;
    n->value = std::move(v);
    return n;
}

inline const ExprPtr& zero_node() {
    static const ExprPtr z = make_constant(Rational(0));
    return z;
}

inline const ExprPtr& one_node() {
    static const ExprPtr o = make_constant(Rational(1));
    return o;
}

inline ExprPtr make_var(int index) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Var;
    n->var = index;
    return n;
}

inline ExprPtr make_apply(Fn f, ExprPtr arg) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Apply;
    n->fn = f;
    n->kids.push_back(std::move(arg));
    return n;
}

inline bool is_constant(const ExprPtr& e) { return e->kind == ExprNode::Kind::Constant; }
inline bool is_zero(const ExprPtr& e) { return is_constant(e) && e->value == 0; }
inline bool is_one(const ExprPtr& e) { return is_constant(e) && e->value == 1; }

inline Rational rational_pow(const Rational& base, long long n) {
    // base != 0 or n > 0 is guaranteed by the caller.
    unsigned long long m = static_cast<unsigned long long>(n < 0 ? -n : n);
    BigInt num = boost::multiprecision::pow(boost::multiprecision::numerator(base), static_cast<unsigned>(m));
    BigInt den = boost::multiprecision::pow(boost::multiprecision::denominator(base), static_cast<unsigned>(m));
    if (n < 0) std::swap(num, den);
    return Rational(num, den);
}

ExprPtr make_product(std::vector<ExprPtr> factors);
ExprPtr make_sum(std::vector<ExprPtr> terms);

inline ExprPtr make_power(ExprPtr base, long long n) {
    if (n == 1) return base;
    if (n == 0) return one_node();  // x^0 -> 1 by convention
    if (is_constant(base)) {
        if (base->value != 0) return make_constant(rational_pow(base->value, n));
        if (n > 0) return zero_node();
        // 0^negative: keep the node so evaluation reports division by zero.
    } else if (base->kind == ExprNode::Kind::Power) {
        return make_power(base->kids[0], base->exponent * n);
    } else if (base->kind == ExprNode::Kind::Product) {
        std::vector<ExprPtr> fs;
        fs.reserve(base->kids.size());
        for (const auto& k : base->kids) fs.push_back(make_power(k, n));
        return make_product(std::move(fs));
    }
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Power;
    node->kids.push_back(std::move(base));
    node->exponent = n;
    return node;
}

inline ExprPtr make_product(std::vector<ExprPtr> factors) {
    Rational c(1);
    std::vector<std::pair<ExprPtr, long long>> pows;  // (base, exponent)
    std::function<void(const ExprPtr&)> absorb = [&](const ExprPtr& f) {
        if (is_constant(f)) {
            c *= f->value;
        } else if (f->kind == ExprNode::Kind::Product) {
            for (const auto& k : f->kids) absorb(k);
        } else if (f->kind == ExprNode::Kind::Power) {
            pows.emplace_back(f->kids[0], f->exponent);
        } else {
            pows.emplace_back(f, 1);
        }
    };
    for (const auto& f : factors) absorb(f);
    if (c == 0) return zero_node();

    std::sort(pows.begin(), pows.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    std::vector<ExprPtr> out;
    for (std::size_t i = 0; i < pows.size();) {
        std::size_t j = i;
        long long e = 0;
        while (j < pows.size() && compare(pows[i].first, pows[j].first) == 0) {
            e += pows[j].second;
            ++j;
        }
        if (e != 0) {
            ExprPtr p = make_power(pows[i].first, e);
            if (is_constant(p)) {
                c *= p->value;
                if (c == 0) return zero_node();
            } else {
                out.push_back(std::move(p));
            }
        }
        i = j;
    }
    if (out.empty()) return make_constant(c);
    if (c == 1 && out.size() == 1) return out[0];

    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Product;
    if (c != 1) node->kids.push_back(make_constant(c));
    for (auto& f : out) node->kids.push_back(std::move(f));
    if (node->kids.size() == 1) return node->kids[0];
    return node;
}

// Splits a normalized term into (rational multiplier, core).  The core of a
// pure constant is the empty pointer.
inline std::pair<Rational, ExprPtr> term_split(const ExprPtr& t) {
    if (is_constant(t)) return {t->value, nullptr};
    if (t->kind == ExprNode::Kind::Product && is_constant(t->kids[0])) {
        Rational c = t->kids[0]->value;
        if (t->kids.size() == 2) return {c, t->kids[1]};
        auto node = std::make_shared<ExprNode>();
        node->kind = ExprNode::Kind::Product;
        node->kids.assign(t->kids.begin() + 1, t->kids.end());
        return {c, node};
    }
    return {Rational(1), t};
}

inline ExprPtr term_join(const Rational& c, const ExprPtr& core) {
    if (!core) return make_constant(c);
    if (c == 0) return zero_node();
    if (c == 1) return core;
    return make_product({make_constant(c), core});
}

inline ExprPtr make_sum(std::vector<ExprPtr> terms) {
    Rational c(0);
    std::vector<std::pair<ExprPtr, Rational>> collected;  // (core, multiplier)
    std::function<void(const ExprPtr&)> absorb = [&](const ExprPtr& t) {
        if (t->kind == ExprNode::Kind::Sum) {
            for (const auto& k : t->kids) absorb(k);
            return;
        }
        auto [mult, core] = term_split(t);
        if (!core)
            c += mult;
        else
            collected.emplace_back(core, mult);
    };
    for (const auto& t : terms) absorb(t);

    std::sort(collected.begin(), collected.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    std::vector<ExprPtr> out;
    for (std::size_t i = 0; i < collected.size();) {
        std::size_t j = i;
        Rational m(0);
        while (j < collected.size() && compare(collected[i].first, collected[j].first) == 0) {
            m += collected[j].second;
            ++j;
        }
        if (m != 0) out.push_back(term_join(m, collected[i].first));
        i = j;
    }
    if (out.empty()) return make_constant(c);
    if (c == 0 && out.size() == 1) return out[0];

    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Sum;
    if (c != 0) node->kids.push_back(make_constant(c));
    for (auto& t : out) node->kids.push_back(std::move(t));
    if (node->kids.size() == 1) return node->kids[0];
    return node;
}

inline ExprPtr derivative(const ExprPtr& e, int coord) {
    switch (e->kind) {
        case ExprNode::Kind::Constant:
            return zero_node();
        case ExprNode::Kind::Var:
            return e->var == coord ? one_node() : zero_node();
        case ExprNode::Kind::Sum: {
            std::vector<ExprPtr> parts;
            for (const auto& k : e->kids) parts.push_back(derivative(k, coord));
            return make_sum(std::move(parts));
        }
        case ExprNode::Kind::Product: {
            std::vector<ExprPtr> parts;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                ExprPtr di = derivative(e->kids[i], coord);
                if (is_zero(di)) continue;
                std::vector<ExprPtr> fs;
                fs.reserve(e->kids.size());
                for (std::size_t j = 0; j < e->kids.size(); ++j)
                    fs.push_back(j == i ? di : e->kids[j]);
                parts.push_back(make_product(std::move(fs)));
            }
            return make_sum(std::move(parts));
        }
        case ExprNode::Kind::Power: {
            ExprPtr db = derivative(e->kids[0], coord);
            if (is_zero(db)) return zero_node();
            return make_product({make_constant(Rational(e->exponent)),
                                 make_power(e->kids[0], e->exponent - 1), db});
        }
        case ExprNode::Kind::Apply: {
            const ExprPtr& u = e->kids[0];
            ExprPtr du = derivative(u, coord);
            if (is_zero(du)) return zero_node();
            ExprPtr outer;
            switch (e->fn) {
                case Fn::Sin: outer = make_apply(Fn::Cos, u); break;
                case Fn::Cos: outer = make_product({make_constant(Rational(-1)), make_apply(Fn::Sin, u)}); break;
                case Fn::Tan: outer = make_power(make_apply(Fn::Cos, u), -2); break;
                case Fn::Exp: outer = make_apply(Fn::Exp, u); break;
                case Fn::Log: outer = make_power(u, -1); break;
                case Fn::Sqrt:
                    outer = make_product({make_constant(Rational(1, 2)),
                                          make_power(make_apply(Fn::Sqrt, u), -1)});
                    break;
                case Fn::Sinh: outer = make_apply(Fn::Cosh, u); break;
                case Fn::Cosh: outer = make_apply(Fn::Sinh, u); break;
            }
            return make_product({std::move(outer), std::move(du)});
        }
    }
    return zero_node();
}

std::string print(const ExprPtr& e, const std::function<std::string(int)>& name_of);

inline std::string print_term(const ExprPtr& e, const std::function<std::string(int)>& name_of) {
    // Renders a product/atom; parenthesizes sums so the output re-parses.
    if (e->kind == ExprNode::Kind::Sum) return "(" + print(e, name_of) + ")";
    return print(e, name_of);
}

inline std::string print(const ExprPtr& e, const std::function<std::string(int)>& name_of) {
    switch (e->kind) {
        case ExprNode::Kind::Constant: {
            const BigInt& num = boost::multiprecision::numerator(e->value);
            const BigInt& den = boost::multiprecision::denominator(e->value);
            std::string s = num.str();
            if (den != 1) s += "/" + den.str();
            return s;
        }
        case ExprNode::Kind::Var:
            return name_of(e->var);
        case ExprNode::Kind::Apply:
            return std::string(fn_name(e->fn)) + "(" + print(e->kids[0], name_of) + ")";
        case ExprNode::Kind::Power: {
            const ExprPtr& b = e->kids[0];
            bool parens = !(b->kind == ExprNode::Kind::Var || b->kind == ExprNode::Kind::Apply ||
                            (b->kind == ExprNode::Kind::Constant && b->value >= 0 &&
                             boost::multiprecision::denominator(b->value) == 1));
            std::string bs = print(b, name_of);
            if (parens) bs = "(" + bs + ")";
            return bs + "^" + std::to_string(e->exponent);
        }
        case ExprNode::Kind::Product: {
            std::string s;
            std::size_t start = 0;
            if (is_constant(e->kids[0])) {
                const Rational& c = e->kids[0]->value;
                start = 1;
                if (c == -1)
                    s = "-";
                else {
                    s = print(e->kids[0], name_of);
                    if (c < 0) s = "(" + s + ")";  // keeps "-2 * x" unambiguous mid-sum
                    s += " * ";
                }
            }
            for (std::size_t i = start; i < e->kids.size(); ++i) {
                if (i > start) s += " * ";
                s += print_term(e->kids[i], name_of);
            }
            return s;
        }
        case ExprNode::Kind::Sum: {
            std::string s;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                auto [mult, core] = term_split(e->kids[i]);
                bool negative = mult < 0;
                ExprPtr positive = negative ? term_join(-mult, core) : e->kids[i];
                if (i == 0)
                    s += negative ? "-" : "";
                else
                    s += negative ? " - " : " + ";
                s += print_term(positive, name_of);
            }
            return s;
        }
    }
    return "?";
}

inline double eval(const ExprPtr& e, std::span<const double> point,
                   const std::function<std::string(int)>& name_of);

[[noreturn]] inline void eval_fail(const std::string& what, const ExprPtr& node,
                                   const std::function<std::string(int)>& name_of) {
    throw EvalError(what + " in '" + print(node, name_of) + "'");
}

inline double eval(const ExprPtr& e, std::span<const double> point,
                   const std::function<std::string(int)>& name_of) {
    double r = 0.0;
    switch (e->kind) {
        case ExprNode::Kind::Constant:
            r = e->value.convert_to<double>();
            break;
        case ExprNode::Kind::Var:
            if (e->var < 0 || static_cast<std::size_t>(e->var) >= point.size())
                eval_fail("coordinate index out of range", e, name_of);
            r = point[static_cast<std::size_t>(e->var)];
            break;
        case ExprNode::Kind::Sum:
            for (const auto& k : e->kids) r += eval(k, point, name_of);
            break;
        case ExprNode::Kind::Product:
            r = 1.0;
            for (const auto& k : e->kids) r *= eval(k, point, name_of);
            break;
        case ExprNode::Kind::Power: {
            double b = eval(e->kids[0], point, name_of);
            if (b == 0.0 && e->exponent < 0) eval_fail("division by zero", e, name_of);
            r = std::pow(b, static_cast<double>(e->exponent));
            break;
        }
        case ExprNode::Kind::Apply: {
            double u = eval(e->kids[0], point, name_of);
            switch (e->fn) {
                case Fn::Sin: r = std::sin(u); break;
                case Fn::Cos: r = std::cos(u); break;
                case Fn::Tan: r = std::tan(u); break;
                case Fn::Exp: r = std::exp(u); break;
                case Fn::Log:
                    if (u <= 0.0) eval_fail("log of nonpositive value", e, name_of);
                    r = std::log(u);
                    break;
                case Fn::Sqrt:
                    if (u < 0.0) eval_fail("sqrt of negative value", e, name_of);
                    r = std::sqrt(u);
                    break;
                case Fn::Sinh: r = std::sinh(u); break;
                case Fn::Cosh: r = std::cosh(u); break;
            }
            break;
        }
    }
    if (!std::isfinite(r)) eval_fail("non-finite value", e, name_of);
    return r;
}

}  // namespace detail

inline std::string default_coord_name(int i) { return "x" + std::to_string(i + 1); }

// Immutable symbolic scalar; all operations return new normalized values.
class ScalarExpr {
public:
    ScalarExpr() : node_(detail::zero_node()) {}

    static ScalarExpr constant(Rational v) { return ScalarExpr(detail::make_constant(std::move(v))); }
    static ScalarExpr constant(long long v) { return constant(Rational(v)); }

    // Exact conversion: every finite double is a dyadic rational.
    static ScalarExpr constant(double v) {
        if (!std::isfinite(v)) throw EvalError("cannot build a constant from a non-finite double");
        int exp2 = 0;
        double m = std::frexp(v, &exp2);
        long long mant = static_cast<long long>(std::ldexp(m, 53));
        exp2 -= 53;
        Rational r(mant);
        if (exp2 > 0)
            r *= Rational(BigInt(1) << exp2);
        else if (exp2 < 0)
            r /= Rational(BigInt(1) << -exp2);
        return constant(std::move(r));
    }

    static ScalarExpr var(int index) { return ScalarExpr(detail::make_var(index)); }
    static ScalarExpr zero() { return ScalarExpr(detail::zero_node()); }
    static ScalarExpr one() { return ScalarExpr(detail::one_node()); }

    static ScalarExpr apply(Fn f, const ScalarExpr& arg) {
        return ScalarExpr(detail::make_apply(f, arg.node_));
    }

    static ScalarExpr sum(const std::vector<ScalarExpr>& terms) {
        std::vector<detail::ExprPtr> ks;
        ks.reserve(terms.size());
        for (const auto& t : terms) ks.push_back(t.node_);
        return ScalarExpr(detail::make_sum(std::move(ks)));
    }

    static ScalarExpr product(const std::vector<ScalarExpr>& factors) {
        std::vector<detail::ExprPtr> ks;
        ks.reserve(factors.size());
        for (const auto& f : factors) ks.push_back(f.node_);
        return ScalarExpr(detail::make_product(std::move(ks)));
    }

    ScalarExpr pow(long long n) const { return ScalarExpr(detail::make_power(node_, n)); }

    ScalarExpr partial(int coord) const { return ScalarExpr(detail::derivative(node_, coord)); }

    double eval_at(std::span<const double> point) const {
        return detail::eval(node_, point, default_coord_name);
    }
    double eval_at(const std::vector<double>& point) const {
        return eval_at(std::span<const double>(point));
    }

    bool is_zero() const { return detail::is_zero(node_); }
    bool is_one() const { return detail::is_one(node_); }
    bool is_rational() const { return detail::is_constant(node_); }
    Rational rational_value() const {
        if (!is_rational()) throw Error("expression is not a rational constant");
        return node_->value;
    }

    int compare(const ScalarExpr& o) const { return detail::compare(node_, o.node_); }
    bool equals(const ScalarExpr& o) const { return compare(o) == 0; }

    std::string str(const std::function<std::string(int)>& name_of = default_coord_name) const {
        return detail::print(node_, name_of);
    }
    std::string str(const std::vector<std::string>& names) const {
        return str([&names](int i) {
            return i >= 0 && static_cast<std::size_t>(i) < names.size() ? names[i]
                                                                        : default_coord_name(i);
        });
    }

    // Rebuilds the tree bottom-up through the normalizing constructors.
    ScalarExpr normalized() const { return ScalarExpr(renorm(node_)); }

    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
        return ScalarExpr(detail::make_sum({a.node_, b.node_}));
    }
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
        return a + (-b);
    }
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
        return ScalarExpr(detail::make_product({a.node_, b.node_}));
    }
    friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
        return a * b.pow(-1);
    }
    ScalarExpr operator-() const {
        return ScalarExpr(detail::make_product({detail::make_constant(Rational(-1)), node_}));
    }

private:
    explicit ScalarExpr(detail::ExprPtr n) : node_(std::move(n)) {}

    static detail::ExprPtr renorm(const detail::ExprPtr& e) {
        using K = detail::ExprNode::Kind;
        switch (e->kind) {
            case K::Constant:
            case K::Var:
                return e;
            case K::Apply:
                return detail::make_apply(e->fn, renorm(e->kids[0]));
            case K::Power:
                return detail::make_power(renorm(e->kids[0]), e->exponent);
            case K::Product: {
                std::vector<detail::ExprPtr> ks;
                for (const auto& k : e->kids) ks.push_back(renorm(k));
                return detail::make_product(std::move(ks));
            }
            case K::Sum: {
                std::vector<detail::ExprPtr> ks;
                for (const auto& k : e->kids) ks.push_back(renorm(k));
                return detail::make_sum(std::move(ks));
            }
        }
        return e;
    }

    detail::ExprPtr node_;
};

inline ScalarExpr sin(const ScalarExpr& e) { return ScalarExpr::apply(Fn::Sin, e); }
inline ScalarExpr cos(const ScalarExpr& e) { return ScalarExpr::apply(Fn::Cos, e); }
inline ScalarExpr tan(const ScalarExpr& e) { return ScalarExpr::apply(Fn::Tan, e); }
inline ScalarExpr exp(const ScalarExpr& e) { return ScalarExpr::apply(Fn::Exp, e); }
inline ScalarExpr log(const ScalarExpr& e) { return ScalarExpr::apply(Fn::Log, e); }
inline ScalarExpr sqrt(const ScalarExpr& e) { return ScalarExpr::apply(Fn::Sqrt, e); }
inline ScalarExpr sinh(const ScalarExpr& e) { return ScalarExpr::apply(Fn::Sinh, e); }
inline ScalarExpr cosh(const ScalarExpr& e) { return ScalarExpr::apply(Fn::Cosh, e); }

struct EqVerdict {
    bool equal = true;
    std::vector<double> witness;  // set when equal == false
    double lhs = 0.0, rhs = 0.0;
};

// Seeded randomized semantic equality: TRUE iff |a-b| <= tol*(1+max(|a|,|b|))
// at every sampled point.  Points where either side raises a domain error are
// resampled, at most 10 retries each.
inline EqVerdict eq_randomized(const ScalarExpr& a, const ScalarExpr& b,
                               const SamplingDomain& dom) {
    SampleRng rng(dom.seed);
    for (int t = 0; t < dom.trials; ++t) {
        bool evaluated = false;
        double va = 0.0, vb = 0.0;
        std::vector<double> p;
        for (int attempt = 0; attempt < 10 && !evaluated; ++attempt) {
            p = dom.sample(rng);
            try {
                va = a.eval_at(p);
                vb = b.eval_at(p);
                evaluated = true;
            } catch (const EvalError&) {
            }
        }
        if (!evaluated)
            throw SamplingError("could not find an evaluable sample point in 10 retries");
        double scale = 1.0 + std::max(std::abs(va), std::abs(vb));
        if (std::abs(va - vb) > dom.tol * scale) {
            EqVerdict v;
            v.equal = false;
            v.witness = p;
            v.lhs = va;
            v.rhs = vb;
            return v;
        }
    }
    return {};
}

}  // namespace itforms
