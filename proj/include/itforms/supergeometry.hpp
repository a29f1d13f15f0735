// itforms - Z2-graded extension: Grassmann-valued scalars over a super chart,
// supermetrics with graded symmetry, the signed inverse, super-Christoffel
// symbols and the super-Riemann tensor with explicit sign factors.
#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chart.hpp"
#include "parser.hpp"
#include "scalar_expr.hpp"
#include "tensor_field.hpp"

namespace itforms {

// Chart with a parity per coordinate.  Only even coordinates are sampled;
// odd directions are formal.
struct SuperChart {
    std::vector<std::string> names;
    std::vector<int> parity;
    SamplingDomain even_domain;  // intervals for the even coordinates, in order

    int dim() const { return static_cast<int>(names.size()); }
    int n_even() const {
        int c = 0;
        for (int p : parity) c += (p == 0);
        return c;
    }
    int n_odd() const { return dim() - n_even(); }

    // Position of a coordinate within the even (resp. odd) sublist, -1 otherwise.
    int even_position(int coord) const {
        if (parity[static_cast<std::size_t>(coord)] != 0) return -1;
        int pos = 0;
        for (int i = 0; i < coord; ++i) pos += (parity[static_cast<std::size_t>(i)] == 0);
        return pos;
    }
    int odd_position(int coord) const {
        if (parity[static_cast<std::size_t>(coord)] != 1) return -1;
        int pos = 0;
        for (int i = 0; i < coord; ++i) pos += (parity[static_cast<std::size_t>(i)] == 1);
        return pos;
    }

    std::vector<std::string> even_names() const {
        std::vector<std::string> out;
        for (int i = 0; i < dim(); ++i)
            if (parity[static_cast<std::size_t>(i)] == 0) out.push_back(names[static_cast<std::size_t>(i)]);
        return out;
    }

    void validate() const {
        if (names.empty()) throw ModelError("super chart must have at least one coordinate");
        if (parity.size() != names.size())
            throw ModelError("parities array length does not match the chart dimension");
        for (int p : parity)
            if (p != 0 && p != 1) throw ModelError("parities must be 0 or 1");
        if (n_even() > 0 && static_cast<int>(even_domain.intervals.size()) != n_even())
            throw ModelError("even sampling domain does not match the even coordinate count");
    }
};

// Grassmann-valued scalar: a map from sorted odd-index subsets (bitmasks) to
// coefficients in the even coordinates.  theta^2 = 0 is structural; products
// accumulate reordering signs.
class SuperScalar {
public:
    SuperScalar() = default;
    explicit SuperScalar(int n_odd) : n_odd_(n_odd) {}

    static SuperScalar from_scalar(ScalarExpr body, int n_odd) {
        SuperScalar s(n_odd);
        if (!body.is_zero()) s.terms_[0] = std::move(body);
        return s;
    }
    static SuperScalar zero(int n_odd) { return SuperScalar(n_odd); }
    static SuperScalar one(int n_odd) { return from_scalar(ScalarExpr::one(), n_odd); }
    static SuperScalar theta(int odd_index, int n_odd) {
        SuperScalar s(n_odd);
        s.terms_[1u << odd_index] = ScalarExpr::one();
        return s;
    }

    int n_odd() const { return n_odd_; }
    const std::map<std::uint32_t, ScalarExpr>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ScalarExpr coefficient(std::uint32_t mask) const {
        auto it = terms_.find(mask);
        return it == terms_.end() ? ScalarExpr::zero() : it->second;
    }
    ScalarExpr body() const { return coefficient(0); }

    bool is_homogeneous(int parity) const {
        for (const auto& [mask, coeff] : terms_)
            if ((std::popcount(mask) & 1) != (parity & 1)) return false;
        return true;
    }

    friend SuperScalar operator+(const SuperScalar& a, const SuperScalar& b) {
        SuperScalar out(std::max(a.n_odd_, b.n_odd_));
        out.terms_ = a.terms_;
        for (const auto& [mask, coeff] : b.terms_) {
            auto it = out.terms_.find(mask);
            if (it == out.terms_.end())
                out.terms_[mask] = coeff;
            else {
                ScalarExpr s = it->second + coeff;
                if (s.is_zero())
                    out.terms_.erase(it);
                else
                    it->second = std::move(s);
            }
        }
        return out;
    }

    SuperScalar operator-() const {
        SuperScalar out(n_odd_);
        for (const auto& [mask, coeff] : terms_) out.terms_[mask] = -coeff;
        return out;
    }

    friend SuperScalar operator-(const SuperScalar& a, const SuperScalar& b) { return a + (-b); }

    friend SuperScalar operator*(const SuperScalar& a, const SuperScalar& b) {
        SuperScalar out(std::max(a.n_odd_, b.n_odd_));
        for (const auto& [m1, c1] : a.terms_)
            for (const auto& [m2, c2] : b.terms_) {
                if (m1 & m2) continue;  // repeated odd generator
                int sign = merge_sign(m1, m2);
                ScalarExpr c = c1 * c2;
                if (sign < 0) c = -c;
                std::uint32_t mask = m1 | m2;
                auto it = out.terms_.find(mask);
                if (it == out.terms_.end()) {
                    if (!c.is_zero()) out.terms_[mask] = std::move(c);
                } else {
                    ScalarExpr s = it->second + c;
                    if (s.is_zero())
                        out.terms_.erase(it);
                    else
                        it->second = std::move(s);
                }
            }
        return out;
    }

    friend SuperScalar operator*(const ScalarExpr& c, const SuperScalar& s) {
        return SuperScalar::from_scalar(c, s.n_odd_) * s;
    }

    // Partial along an even coordinate (position within the even sublist).
    SuperScalar partial_even(int even_pos) const {
        SuperScalar out(n_odd_);
        for (const auto& [mask, coeff] : terms_) {
            ScalarExpr d = coeff.partial(even_pos);
            if (!d.is_zero()) out.terms_[mask] = std::move(d);
        }
        return out;
    }

    // Left partial along an odd coordinate: kills terms without theta_j and
    // carries the sign of moving d/d theta_j past the preceding odd factors.
    SuperScalar partial_odd(int odd_pos) const {
        SuperScalar out(n_odd_);
        const std::uint32_t bit = 1u << odd_pos;
        for (const auto& [mask, coeff] : terms_) {
            if (!(mask & bit)) continue;
            int before = std::popcount(mask & (bit - 1));
            out.terms_[mask & ~bit] = (before & 1) ? -coeff : coeff;
        }
        return out;
    }

    std::string str(const SuperChart& chart) const {
        if (terms_.empty()) return "0";
        std::vector<std::string> odd_names;
        for (int i = 0; i < chart.dim(); ++i)
            if (chart.parity[static_cast<std::size_t>(i)] == 1)
                odd_names.push_back(chart.names[static_cast<std::size_t>(i)]);
        auto even = chart.even_names();
        std::string out;
        bool first = true;
        for (const auto& [mask, coeff] : terms_) {
            if (!first) out += " + ";
            first = false;
            std::string cs = coeff.str(even);
            if (mask == 0) {
                out += cs;
                continue;
            }
            if (cs == "1")
                ;
            else if (cs == "-1")
                out += "-";
            else
                out += "(" + cs + ") ";
            bool first_theta = true;
            for (int j = 0; j < n_odd_; ++j)
                if (mask & (1u << j)) {
                    if (!first_theta) out += " ";
                    first_theta = false;
                    out += odd_names[static_cast<std::size_t>(j)];
                }
        }
        return out;
    }

    // Sign of concatenating two sorted Grassmann monomials: (-1)^inversions.
    static int merge_sign(std::uint32_t m1, std::uint32_t m2) {
        int inv = 0;
        for (std::uint32_t rest = m1; rest;) {
            std::uint32_t low = rest & (~rest + 1);
            int i = std::countr_zero(low);
            inv += std::popcount(m2 & ((1u << i) - 1));  // j in m2 with j < i
            rest ^= low;
        }
        return (inv & 1) ? -1 : 1;
    }

private:
    int n_odd_ = 0;
    std::map<std::uint32_t, ScalarExpr> terms_;
};

// Partial along a chart coordinate (dispatches on its parity).
inline SuperScalar super_partial(const SuperChart& chart, int coord, const SuperScalar& s) {
    if (chart.parity[static_cast<std::size_t>(coord)] == 0)
        return s.partial_even(chart.even_position(coord));
    return s.partial_odd(chart.odd_position(coord));
}

// Randomized equality per Grassmann monomial over the even sampling domain.
inline bool super_eq_randomized(const SuperScalar& a, const SuperScalar& b,
                                const SamplingDomain& even_dom) {
    std::vector<std::uint32_t> masks;
    for (const auto& [m, c] : a.terms()) masks.push_back(m);
    for (const auto& [m, c] : b.terms()) masks.push_back(m);
    for (std::uint32_t m : masks) {
        EqVerdict v = eq_randomized(a.coefficient(m), b.coefficient(m), even_dom);
        if (!v.equal) return false;
    }
    return true;
}

using SuperMatrix = std::vector<std::vector<SuperScalar>>;

inline SuperMatrix super_zero_matrix(int n, int n_odd) {
    return SuperMatrix(static_cast<std::size_t>(n),
                       std::vector<SuperScalar>(static_cast<std::size_t>(n), SuperScalar::zero(n_odd)));
}

// Entries multiply in left-to-right order, which matters for odd entries.
inline SuperMatrix super_mat_mul(const SuperMatrix& a, const SuperMatrix& b, int n_odd) {
    const int n = static_cast<int>(a.size());
    SuperMatrix out = super_zero_matrix(n, n_odd);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SuperScalar s = SuperScalar::zero(n_odd);
            for (int k = 0; k < n; ++k)
                s = s + a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                            b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(s);
        }
    return out;
}

struct SuperMetric {
    SuperChart chart;
    SuperMatrix g;      // g_{mu nu}, graded symmetric, even overall
    SuperMatrix g_inv;  // g^{mu nu}: (-1)^{gamma.alpha} g_{nu alpha} g^{nu gamma} = delta
};

namespace detail {

inline void check_body_nondegenerate(const SuperChart& chart, const ScalarExpr& det) {
    if (chart.n_even() == 0) {
        // Purely odd chart: the body matrix is constant in no variables;
        // evaluate once at the empty point.
        double d = det.eval_at(std::vector<double>{});
        if (std::abs(d) < 1e-12)
            throw DegenerateMetricError("supermetric body is degenerate", {});
        return;
    }
    SampleRng rng(chart.even_domain.seed);
    for (int t = 0; t < chart.even_domain.trials; ++t) {
        bool evaluated = false;
        double d = 0.0;
        std::vector<double> p;
        for (int attempt = 0; attempt < 10 && !evaluated; ++attempt) {
            p = chart.even_domain.sample(rng);
            try {
                d = det.eval_at(p);
                evaluated = true;
            } catch (const EvalError&) {
            }
        }
        if (!evaluated)
            throw SamplingError("could not evaluate the supermetric body determinant");
        if (std::abs(d) < 1e-12)
            throw DegenerateMetricError("supermetric body is degenerate at a sample point", p);
    }
}

}  // namespace detail

// Solves the displayed identity (-1)^{gamma.alpha} g_{nu alpha} g^{nu gamma}
// = delta^gamma_alpha: with G^T X = D (D = diag((-1)^{alpha-bar})), the body
// inverse handles the Grassmann-degree-0 part and the nilpotent remainder
// enters through a terminating Neumann series.
inline SuperMatrix super_inverse_metric(const SuperChart& chart, const SuperMatrix& g) {
    const int n = chart.dim();
    const int n_odd = chart.n_odd();

    ExprMatrix body_t = zero_matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            body_t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].body();
    auto [body_inv_t, det] = matrix_inverse(body_t);
    detail::check_body_nondegenerate(chart, det);

    SuperMatrix a_inv = super_zero_matrix(n, n_odd);  // inverse of the body of G^T
    SuperMatrix nil = super_zero_matrix(n, n_odd);    // nilpotent part of G^T
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = SuperScalar::from_scalar(
                body_inv_t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], n_odd);
            SuperScalar entry = g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            SuperScalar without_body = entry - SuperScalar::from_scalar(entry.body(), n_odd);
            nil[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(without_body);
        }

    // X = sum_k (-A^{-1} N)^k A^{-1}; terminates by nilpotency.
    SuperMatrix x = a_inv;
    SuperMatrix term = a_inv;
    for (int k = 0; k <= n_odd + 1; ++k) {
        SuperMatrix nt = super_mat_mul(nil, term, n_odd);
        SuperMatrix next = super_mat_mul(a_inv, nt, n_odd);
        bool all_zero = true;
        for (auto& row : next)
            for (auto& e : row) {
                e = -e;
                if (!e.is_zero()) all_zero = false;
            }
        if (all_zero) break;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                    next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        term = std::move(next);
    }

    // Right-multiply by D: column gamma scaled by (-1)^{gamma-bar}.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (chart.parity[static_cast<std::size_t>(j)] == 1)
                x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    -x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return x;
}

inline SuperMetric make_supermetric(SuperChart chart, SuperMatrix g) {
    chart.validate();
    const int n = chart.dim();
    if (static_cast<int>(g.size()) != n) throw ModelError("supermetric is not square");
    for (const auto& row : g)
        if (static_cast<int>(row.size()) != n) throw ModelError("supermetric is not square");

    for (int m = 0; m < n; ++m)
        for (int nu = 0; nu < n; ++nu) {
            const int pm = chart.parity[static_cast<std::size_t>(m)];
            const int pn = chart.parity[static_cast<std::size_t>(nu)];
            const auto& e = g[static_cast<std::size_t>(m)][static_cast<std::size_t>(nu)];
            if (!e.is_homogeneous(pm + pn))
                throw ModelError("supermetric entry g[" + std::to_string(m) + "][" +
                                 std::to_string(nu) + "] is not parity homogeneous");
            SuperScalar mirror = g[static_cast<std::size_t>(nu)][static_cast<std::size_t>(m)];
            if ((pm & pn & 1) != 0) mirror = -mirror;  // (-1)^{mu-bar nu-bar}
            if (!super_eq_randomized(e, mirror, chart.even_domain))
                throw ModelError("supermetric violates graded symmetry at g[" + std::to_string(m) +
                                 "][" + std::to_string(nu) + "]");
        }

    SuperMetric sm;
    sm.g_inv = super_inverse_metric(chart, g);
    sm.chart = std::move(chart);
    sm.g = std::move(g);
    return sm;
}

// Super-Christoffel symbols, layout [alpha][mu][beta] as in the classical
// module (alpha upper, mu the direction index):
//   Gamma^alpha_{mu beta} = 1/2 g^{gamma alpha} [ (-1)^{gb + mb(mb+gb)} d_mu g_{beta gamma}
//                           + (-1)^{gb + bb(mb+bb+gb)} d_beta g_{mu gamma}
//                           - d_gamma g_{beta mu} ],
// with gb, mb, bb the parities of gamma, mu, beta.
inline std::vector<SuperScalar> super_christoffel(const SuperMetric& sm) {
    const SuperChart& chart = sm.chart;
    const int n = chart.dim();
    const int n_odd = chart.n_odd();
    const ScalarExpr half = ScalarExpr::constant(Rational(1, 2));
    std::vector<SuperScalar> out(static_cast<std::size_t>(n * n * n), SuperScalar::zero(n_odd));
    auto idx = [n](int a, int m, int b) { return static_cast<std::size_t>((a * n + m) * n + b); };
    for (int a = 0; a < n; ++a)
        for (int m = 0; m < n; ++m)
            for (int b = 0; b < n; ++b) {
                const int mb = chart.parity[static_cast<std::size_t>(m)];
                const int bb = chart.parity[static_cast<std::size_t>(b)];
                SuperScalar acc = SuperScalar::zero(n_odd);
                for (int gq = 0; gq < n; ++gq) {
                    const int gb = chart.parity[static_cast<std::size_t>(gq)];
                    const SuperScalar& ginv = sm.g_inv[static_cast<std::size_t>(gq)][static_cast<std::size_t>(a)];
                    if (ginv.is_zero()) continue;
                    const int e1 = (gb + mb * (mb + gb)) & 1;
                    const int e2 = (gb + bb * (mb + bb + gb)) & 1;
                    SuperScalar t1 = super_partial(chart, m, sm.g[static_cast<std::size_t>(b)][static_cast<std::size_t>(gq)]);
                    SuperScalar t2 = super_partial(chart, b, sm.g[static_cast<std::size_t>(m)][static_cast<std::size_t>(gq)]);
                    SuperScalar t3 = super_partial(chart, gq, sm.g[static_cast<std::size_t>(b)][static_cast<std::size_t>(m)]);
                    if (e1) t1 = -t1;
                    if (e2) t2 = -t2;
                    SuperScalar bracket = t1 + t2 - t3;
                    acc = acc + ginv * bracket;
                }
                out[idx(a, m, b)] = half * acc;
            }
    return out;
}

// Super-Riemann tensor, stored [gamma][beta][alpha][nu] with nu the upper
// index; the formula's third-term sign base "(-)" is read as "(-1)".
inline std::vector<SuperScalar> super_riemann(const SuperMetric& sm,
                                              const std::vector<SuperScalar>& gamma) {
    const SuperChart& chart = sm.chart;
    const int n = chart.dim();
    const int n_odd = chart.n_odd();
    auto G = [&](int nu, int dir, int low) {
        return gamma[static_cast<std::size_t>((nu * n + dir) * n + low)];
    };
    std::vector<SuperScalar> out(static_cast<std::size_t>(n * n * n * n), SuperScalar::zero(n_odd));
    auto idx = [n](int g, int b, int a, int nu) {
        return static_cast<std::size_t>(((g * n + b) * n + a) * n + nu);
    };
    for (int gq = 0; gq < n; ++gq)
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a)
                for (int nu = 0; nu < n; ++nu) {
                    const int gb = chart.parity[static_cast<std::size_t>(gq)];
                    const int bb = chart.parity[static_cast<std::size_t>(b)];
                    const int ab = chart.parity[static_cast<std::size_t>(a)];
                    const int nb = chart.parity[static_cast<std::size_t>(nu)];
                    SuperScalar acc = SuperScalar::zero(n_odd);

                    SuperScalar t1 = super_partial(chart, b, G(nu, a, gq));
                    if ((ab * (bb + gb) + bb * (bb + nb)) & 1) t1 = -t1;
                    acc = acc + t1;

                    SuperScalar t2 = super_partial(chart, gq, G(nu, a, b));
                    if (((bb * (bb + gb + nb)) & 1) == 0) t2 = -t2;
                    acc = acc + t2;

                    for (int mu = 0; mu < n; ++mu) {
                        const int ub = chart.parity[static_cast<std::size_t>(mu)];
                        SuperScalar q1 = G(nu, mu, b) * G(mu, a, gq);
                        if ((ub * bb + ab * gb) & 1) q1 = -q1;
                        acc = acc + q1;
                        SuperScalar q2 = G(nu, mu, gq) * G(mu, a, b);
                        if (((bb * (ab + gb) + ub * gb) & 1) == 0) q2 = -q2;
                        acc = acc + q2;
                    }
                    out[idx(gq, b, a, nu)] = acc;
                }
    return out;
}

// Grassmann-aware conversion of a parsed raw expression: odd coordinates may
// appear as plain product factors (order preserved); functions, powers and
// divisors must be purely even.
inline SuperScalar raw_to_super(const RawPtr& raw, const SuperChart& chart) {
    using K = RawExpr::Kind;
    const int n_odd = chart.n_odd();
    switch (raw->kind) {
        case K::Number:
            return SuperScalar::from_scalar(ScalarExpr::constant(raw->number), n_odd);
        case K::Ident: {
            int coord = -1;
            for (int i = 0; i < chart.dim(); ++i)
                if (chart.names[static_cast<std::size_t>(i)] == raw->ident) coord = i;
            if (coord < 0) throw UnknownIdentifierError(raw->ident, raw->pos);
            if (chart.parity[static_cast<std::size_t>(coord)] == 1)
                return SuperScalar::theta(chart.odd_position(coord), n_odd);
            return SuperScalar::from_scalar(ScalarExpr::var(chart.even_position(coord)), n_odd);
        }
        case K::Call: {
            auto fn = fn_by_name(raw->ident);
            if (!fn) throw UnknownIdentifierError(raw->ident, raw->pos);
            SuperScalar arg = raw_to_super(raw->lhs, chart);
            if (!arg.is_homogeneous(0) || !(arg - SuperScalar::from_scalar(arg.body(), n_odd)).is_zero())
                throw ModelError("function arguments must be purely even expressions");
            return SuperScalar::from_scalar(ScalarExpr::apply(*fn, arg.body()), n_odd);
        }
        case K::Neg:
            return -raw_to_super(raw->lhs, chart);
        case K::Add:
            return raw_to_super(raw->lhs, chart) + raw_to_super(raw->rhs, chart);
        case K::Sub:
            return raw_to_super(raw->lhs, chart) - raw_to_super(raw->rhs, chart);
        case K::Mul:
            return raw_to_super(raw->lhs, chart) * raw_to_super(raw->rhs, chart);
        case K::Div: {
            SuperScalar num = raw_to_super(raw->lhs, chart);
            SuperScalar den = raw_to_super(raw->rhs, chart);
            if (!(den - SuperScalar::from_scalar(den.body(), n_odd)).is_zero())
                throw ModelError("division by Grassmann-valued expressions is not supported");
            return den.body().pow(-1) * num;
        }
        case K::Pow: {
            SuperScalar base = raw_to_super(raw->lhs, chart);
            if (!(base - SuperScalar::from_scalar(base.body(), n_odd)).is_zero())
                throw ModelError("powers of Grassmann-valued expressions are not supported");
            return SuperScalar::from_scalar(base.body().pow(raw->exponent), n_odd);
        }
    }
    throw Error("unreachable raw node kind");
}

inline SuperScalar parse_super(const std::string& text, const SuperChart& chart) {
    return raw_to_super(parse_raw(text), chart);
}

}  // namespace itforms
