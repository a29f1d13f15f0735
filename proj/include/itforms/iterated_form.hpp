// itforms - the graded commutative algebra of iterated differential forms
// over a coordinate chart: normal-form monomials in generators d_S x^mu,
// products with Koszul signs, slot differentials d_1..d_k, the slot-swap
// involution kappa, insertion operators and Lie derivatives.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chart.hpp"
#include "multidegree.hpp"
#include "scalar_expr.hpp"

namespace itforms {

// One generator d_S x^mu.  Bit (s-1) of `slots` is set iff slot s is in S;
// in classical charts every coordinate has parity 0.
struct Generator {
    std::uint8_t slots = 0;
    int coord = 0;
    int parity = 0;

    int slot_count() const { return std::popcount(slots); }

    MultiDegree degree(int depth) const {
        MultiDegree d = MultiDegree::zero(depth);
        d.parity = parity & 1;
        for (int s = 0; s < depth; ++s)
            if (slots & (1u << s)) d.degrees[static_cast<std::size_t>(s)] = 1;
        return d;
    }

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.slots == b.slots && a.coord == b.coord;
    }
};

// Canonical generator order: slot-set size, then slot set lexicographically
// as a sorted sequence, then coordinate index.
inline int generator_cmp(const Generator& a, const Generator& b) {
    int ca = a.slot_count(), cb = b.slot_count();
    if (ca != cb) return ca < cb ? -1 : 1;
    for (int s = 0; s < 8; ++s) {
        bool ia = a.slots & (1u << s), ib = b.slots & (1u << s);
        if (ia != ib) return ia ? -1 : 1;  // smaller slot present first
    }
    if (a.coord != b.coord) return a.coord < b.coord ? -1 : 1;
    return 0;
}

struct Monomial {
    ScalarExpr coeff;
    std::vector<Generator> gens;
};

inline int generator_list_cmp(const std::vector<Generator>& a, const std::vector<Generator>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = generator_cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

class IteratedForm {
public:
    IteratedForm() = default;
    IteratedForm(int dim, int depth) : dim_(dim), depth_(depth) {}

    static IteratedForm zero(int dim, int depth) { return IteratedForm(dim, depth); }

    static IteratedForm scalar(ScalarExpr c, int dim, int depth) {
        IteratedForm f(dim, depth);
        if (!c.is_zero()) f.terms_.push_back(Monomial{std::move(c), {}});
        return f;
    }

    // d_S x^mu with S given as a list of slots (1-based).
    static IteratedForm generator(std::initializer_list<int> slots, int coord, int dim, int depth,
                                  int parity = 0) {
        std::uint8_t mask = 0;
        for (int s : slots) mask |= static_cast<std::uint8_t>(1u << (s - 1));
        return from_monomials(dim, depth, {Monomial{ScalarExpr::one(), {Generator{mask, coord, parity}}}});
    }

    static IteratedForm from_monomials(int dim, int depth, std::vector<Monomial> ms) {
        IteratedForm f(dim, depth);
        f.terms_ = normalize(std::move(ms), depth);
        return f;
    }

    int dim() const { return dim_; }
    int depth() const { return depth_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Multidegree of a homogeneous form; throws on inhomogeneous sums.
    MultiDegree multidegree() const {
        if (terms_.empty()) throw Error("degree query on the zero form");
        MultiDegree d = monomial_degree(terms_[0], depth_);
        for (std::size_t i = 1; i < terms_.size(); ++i)
            if (!(monomial_degree(terms_[i], depth_) == d))
                throw Error("degree query on an inhomogeneous form");
        return d;
    }

    bool structurally_equal(const IteratedForm& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (generator_list_cmp(terms_[i].gens, o.terms_[i].gens) != 0) return false;
            if (!terms_[i].coeff.equals(o.terms_[i].coeff)) return false;
        }
        return true;
    }

    // Coefficient of the monomial with exactly these generators (canonical
    // order not required; the key is normalized first).  Zero if absent.
    ScalarExpr coefficient(std::vector<Generator> key) const {
        int sign = 1;
        if (!sort_generators(key, depth_, sign)) return ScalarExpr::zero();
        for (const auto& m : terms_)
            if (generator_list_cmp(m.gens, key) == 0)
                return sign == 1 ? m.coeff : -m.coeff;
        return ScalarExpr::zero();
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i > 0) out += " + ";
            const Monomial& m = terms_[i];
            std::string cs = m.coeff.str(names);
            if (m.gens.empty()) {
                out += cs;
                continue;
            }
            if (cs == "1")
                ;  // omit unit coefficient
            else if (cs == "-1")
                out += "-";
            else
                out += "(" + cs + ") ";
            for (std::size_t g = 0; g < m.gens.size(); ++g) {
                if (g > 0) out += " ";
                std::string s = "d";
                for (int slot = 8; slot >= 1; --slot)
                    if (m.gens[g].slots & (1u << (slot - 1))) s += std::to_string(slot);
                s += "x^";
                int c = m.gens[g].coord;
                s += (c >= 0 && static_cast<std::size_t>(c) < names.size())
                         ? names[static_cast<std::size_t>(c)]
                         : default_coord_name(c);
                out += s;
            }
        }
        return out;
    }

    static MultiDegree monomial_degree(const Monomial& m, int depth) {
        MultiDegree d = MultiDegree::zero(depth);
        for (const auto& g : m.gens) d += g.degree(depth);
        return d;
    }

    // Sorts a generator list into canonical order accumulating the Koszul
    // sign; returns false when the monomial vanishes (repeated generator that
    // anticommutes with itself).
    static bool sort_generators(std::vector<Generator>& gens, int depth, int& sign) {
        // Insertion sort: each adjacent transposition contributes a sign.
        for (std::size_t i = 1; i < gens.size(); ++i) {
            std::size_t j = i;
            while (j > 0 && generator_cmp(gens[j - 1], gens[j]) > 0) {
                sign *= koszul_sign(gens[j - 1].degree(depth), gens[j].degree(depth));
                std::swap(gens[j - 1], gens[j]);
                --j;
            }
        }
        for (std::size_t i = 1; i < gens.size(); ++i) {
            if (gens[i - 1] == gens[i]) {
                const MultiDegree d = gens[i].degree(depth);
                if (koszul_sign(d, d) == -1) return false;  // square of an odd generator
            }
        }
        return true;
    }

    static std::vector<Monomial> normalize(std::vector<Monomial> ms, int depth) {
        std::vector<Monomial> kept;
        kept.reserve(ms.size());
        for (auto& m : ms) {
            if (m.coeff.is_zero()) continue;
            int sign = 1;
            if (!sort_generators(m.gens, depth, sign)) continue;
            if (sign == -1) m.coeff = -m.coeff;
            kept.push_back(std::move(m));
        }
        std::sort(kept.begin(), kept.end(), [](const Monomial& a, const Monomial& b) {
            return generator_list_cmp(a.gens, b.gens) < 0;
        });
        std::vector<Monomial> out;
        for (std::size_t i = 0; i < kept.size();) {
            std::size_t j = i;
            std::vector<ScalarExpr> cs;
            while (j < kept.size() && generator_list_cmp(kept[i].gens, kept[j].gens) == 0) {
                cs.push_back(kept[j].coeff);
                ++j;
            }
            ScalarExpr c = cs.size() == 1 ? cs[0] : ScalarExpr::sum(cs);
            if (!c.is_zero()) out.push_back(Monomial{std::move(c), kept[i].gens});
            i = j;
        }
        return out;
    }

private:
    int dim_ = 0;
    int depth_ = 3;
    std::vector<Monomial> terms_;
};

inline void require_compatible(const IteratedForm& a, const IteratedForm& b) {
    if (a.dim() != b.dim() || a.depth() != b.depth())
        throw Error("iterated forms live on different charts or depths");
}

inline IteratedForm add(const IteratedForm& a, const IteratedForm& b) {
    require_compatible(a, b);
    std::vector<Monomial> ms = a.terms();
    ms.insert(ms.end(), b.terms().begin(), b.terms().end());
    return IteratedForm::from_monomials(a.dim(), a.depth(), std::move(ms));
}

inline IteratedForm scalar_mul(const ScalarExpr& c, const IteratedForm& f) {
    std::vector<Monomial> ms;
    ms.reserve(f.terms().size());
    for (const auto& m : f.terms()) ms.push_back(Monomial{c * m.coeff, m.gens});
    return IteratedForm::from_monomials(f.dim(), f.depth(), std::move(ms));
}

inline IteratedForm negate(const IteratedForm& f) {
    return scalar_mul(-ScalarExpr::one(), f);
}

inline IteratedForm sub(const IteratedForm& a, const IteratedForm& b) {
    return add(a, negate(b));
}

inline IteratedForm product(const IteratedForm& a, const IteratedForm& b) {
    require_compatible(a, b);
    std::vector<Monomial> ms;
    ms.reserve(a.terms().size() * b.terms().size());
    for (const auto& ma : a.terms())
        for (const auto& mb : b.terms()) {
            Monomial m;
            m.coeff = ma.coeff * mb.coeff;
            m.gens = ma.gens;
            m.gens.insert(m.gens.end(), mb.gens.begin(), mb.gens.end());
            ms.push_back(std::move(m));
        }
    return IteratedForm::from_monomials(a.dim(), a.depth(), std::move(ms));
}

// Slot differential d_i.  On scalars f it gives sum_mu (d_mu f) d_i x^mu; on a
// generator d_S x^mu it gives d_(S u {i}) x^mu when i is not in S and zero
// otherwise; extended by the signed Leibniz rule.
inline IteratedForm differential(int slot, const IteratedForm& f) {
    if (slot < 1 || slot > f.depth())
        throw DepthError("differential slot " + std::to_string(slot) + " exceeds depth cap " +
                         std::to_string(f.depth()));
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << (slot - 1));
    std::vector<Monomial> out;
    for (const auto& m : f.terms()) {
        // Coefficient part: (d_i c) * gens, the new generator on the left.
        for (int mu = 0; mu < f.dim(); ++mu) {
            ScalarExpr dc = m.coeff.partial(mu);
            if (dc.is_zero()) continue;
            Monomial t;
            t.coeff = std::move(dc);
            t.gens.push_back(Generator{bit, mu, 0});
            t.gens.insert(t.gens.end(), m.gens.begin(), m.gens.end());
            out.push_back(std::move(t));
        }
        // Generator part: Leibniz with the sign of passing d_i over earlier
        // factors; the coefficient itself has degree zero.
        int sign = 1;
        for (std::size_t p = 0; p < m.gens.size(); ++p) {
            const Generator& g = m.gens[p];
            if (!(g.slots & bit)) {
                Monomial t;
                t.coeff = sign == 1 ? m.coeff : -m.coeff;
                t.gens = m.gens;
                t.gens[p].slots = static_cast<std::uint8_t>(g.slots | bit);
                out.push_back(std::move(t));
            }
            // d_i has degree e_i and parity 0: passing g costs (-1)^(g_i).
            if (g.slots & bit) sign = -sign;
        }
    }
    return IteratedForm::from_monomials(f.dim(), f.depth(), std::move(out));
}

// Slot-swap involution on the depth-2 subalgebra: transposes slots 1 and 2 in
// every generator and renormalizes.  Fixes scalars.
inline IteratedForm kappa(const IteratedForm& f) {
    std::vector<Monomial> out;
    out.reserve(f.terms().size());
    for (const auto& m : f.terms()) {
        Monomial t = m;
        for (auto& g : t.gens) {
            if (g.slots & ~std::uint8_t(0b11))
                throw Error("kappa is defined only on the depth-2 subalgebra");
            std::uint8_t s = 0;
            if (g.slots & 0b01) s |= 0b10;
            if (g.slots & 0b10) s |= 0b01;
            g.slots = s;
        }
        out.push_back(std::move(t));
    }
    return IteratedForm::from_monomials(f.dim(), f.depth(), std::move(out));
}

// Insertion of a vector field with scalar components into slot j: a
// derivation of degree -e_j.  Kills scalars; d_j x^mu |-> X^mu; generators
// with j in S and |S| > 1 go to zero (the field's value on a coordinate is a
// scalar); Leibniz with Koszul signs.
inline IteratedForm insert_field(int slot, std::span<const ScalarExpr> components,
                                 const IteratedForm& f) {
    if (slot < 1 || slot > f.depth())
        throw DepthError("insertion slot " + std::to_string(slot) + " exceeds depth cap " +
                         std::to_string(f.depth()));
    if (static_cast<int>(components.size()) != f.dim())
        throw Error("vector field dimension does not match the chart");
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << (slot - 1));
    std::vector<Monomial> out;
    for (const auto& m : f.terms()) {
        int sign = 1;
        for (std::size_t p = 0; p < m.gens.size(); ++p) {
            const Generator& g = m.gens[p];
            if (g.slots == bit) {
                const ScalarExpr& comp = components[static_cast<std::size_t>(g.coord)];
                if (!comp.is_zero()) {
                    Monomial t;
                    t.coeff = (sign == 1 ? m.coeff : -m.coeff) * comp;
                    t.gens = m.gens;
                    t.gens.erase(t.gens.begin() + static_cast<std::ptrdiff_t>(p));
                    out.push_back(std::move(t));
                }
            }
            // Operator degree is -e_slot (parity 0): sign flips per factor
            // carrying slot `slot`.
            if (g.slots & bit) sign = -sign;
        }
    }
    return IteratedForm::from_monomials(f.dim(), f.depth(), std::move(out));
}

inline std::vector<ScalarExpr> coordinate_field(int coord, int dim) {
    std::vector<ScalarExpr> comps(static_cast<std::size_t>(dim), ScalarExpr::zero());
    comps[static_cast<std::size_t>(coord)] = ScalarExpr::one();
    return comps;
}

inline IteratedForm insert_coordinate_field(int slot, int coord, const IteratedForm& f) {
    auto comps = coordinate_field(coord, f.dim());
    return insert_field(slot, comps, f);
}

// The insertion-of-insertion operator i^(2)_{i_{d/dx^alpha}}: bidegree
// (-1,-1); d2d1 x^mu |-> delta^mu_alpha, all other generators |-> 0; Leibniz
// with Koszul signs.
inline IteratedForm insert_insertion(int alpha, const IteratedForm& f) {
    std::vector<Monomial> out;
    for (const auto& m : f.terms()) {
        int sign = 1;
        for (std::size_t p = 0; p < m.gens.size(); ++p) {
            const Generator& g = m.gens[p];
            if (g.slots == 0b11 && g.coord == alpha) {
                Monomial t;
                t.coeff = sign == 1 ? m.coeff : -m.coeff;
                t.gens = m.gens;
                t.gens.erase(t.gens.begin() + static_cast<std::ptrdiff_t>(p));
                out.push_back(std::move(t));
            }
            // Operator degree (-1,-1): the sign flips per slot-1 and per
            // slot-2 differential in the passed factor.
            int flips = ((g.slots & 0b01) ? 1 : 0) + ((g.slots & 0b10) ? 1 : 0);
            if (flips & 1) sign = -sign;
        }
    }
    return IteratedForm::from_monomials(f.dim(), f.depth(), std::move(out));
}

// Lie derivative along a vector field acting through slot j:
// L_X = i_X o d_j + d_j o i_X (the Cartan formula; the insertion of a plain
// field has form-degree 0, so the commutator sign is +1).
inline IteratedForm lie(int slot, std::span<const ScalarExpr> components, const IteratedForm& f) {
    return add(insert_field(slot, components, differential(slot, f)),
               differential(slot, insert_field(slot, components, f)));
}

// Canonical embedding of a covariant k-tensor component table:
// s |-> sum s_{b1..bk} d_1 x^{b1} ... d_k x^{bk}.
inline IteratedForm iota(int rank, int dim, int depth,
                         const std::function<ScalarExpr(std::span<const int>)>& component) {
    if (rank > depth) throw DepthError("tensor rank exceeds form depth");
    std::vector<Monomial> ms;
    std::vector<int> idx(static_cast<std::size_t>(rank), 0);
    while (true) {
        ScalarExpr c = component(idx);
        if (!c.is_zero()) {
            Monomial m;
            m.coeff = std::move(c);
            for (int s = 0; s < rank; ++s)
                m.gens.push_back(Generator{static_cast<std::uint8_t>(1u << s),
                                           idx[static_cast<std::size_t>(s)], 0});
            ms.push_back(std::move(m));
        }
        int pos = rank - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == dim) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return IteratedForm::from_monomials(dim, depth, std::move(ms));
}

}  // namespace itforms
