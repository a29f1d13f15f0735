// itforms - form-valued derivations: finite sums of (coefficient form) x
// (basis operator), where a basis operator is a coordinate partial, a
// slot insertion of a coordinate field, or the insertion-of-insertion.
#pragma once

#include <vector>

#include "iterated_form.hpp"

namespace itforms {

struct BasisOp {
    enum class Kind { Partial, Insert, InsertInsert };
    Kind kind = Kind::Partial;
    int slot = 0;   // Insert only
    int coord = 0;  // all kinds

    static BasisOp partial(int mu) { return BasisOp{Kind::Partial, 0, mu}; }
    static BasisOp insert(int slot, int alpha) { return BasisOp{Kind::Insert, slot, alpha}; }
    static BasisOp insert_insert(int alpha) { return BasisOp{Kind::InsertInsert, 2, alpha}; }
};

inline IteratedForm apply_basis_op(const BasisOp& op, const IteratedForm& f) {
    switch (op.kind) {
        case BasisOp::Kind::Partial: {
            // Degree-zero derivation acting on coefficients only.
            std::vector<Monomial> out;
            for (const auto& m : f.terms()) {
                ScalarExpr dc = m.coeff.partial(op.coord);
                if (!dc.is_zero()) out.push_back(Monomial{std::move(dc), m.gens});
            }
            return IteratedForm::from_monomials(f.dim(), f.depth(), std::move(out));
        }
        case BasisOp::Kind::Insert:
            return insert_coordinate_field(op.slot, op.coord, f);
        case BasisOp::Kind::InsertInsert:
            return insert_insertion(op.coord, f);
    }
    throw Error("unreachable basis operator kind");
}

struct DerivationTerm {
    IteratedForm coeff;
    BasisOp op;
};

// Sum of coefficient-times-basis-operator terms; application is linear and
// each term applies its operator by the signed Leibniz rule, then multiplies
// by the coefficient form on the left.
struct FormDerivation {
    std::vector<DerivationTerm> terms;

    IteratedForm apply(const IteratedForm& f) const {
        IteratedForm acc = IteratedForm::zero(f.dim(), f.depth());
        for (const auto& t : terms) {
            IteratedForm part = apply_basis_op(t.op, f);
            if (part.is_zero()) continue;
            acc = add(acc, product(t.coeff, part));
        }
        return acc;
    }
};

}  // namespace itforms
