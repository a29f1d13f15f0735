// itforms - Z2 (+) Z^k multidegrees and the Koszul sign.
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace itforms {

// Multidegree in Z2 (+) Z^k.  The Z2 slot carries coordinate parity (always 0
// on classical charts); the Z^k slots count differentials per iteration slot.
// Operator degrees may have negative entries (insertions).
struct MultiDegree {
    int parity = 0;
    std::vector<int> degrees;

    static MultiDegree zero(int k) { return MultiDegree{0, std::vector<int>(static_cast<std::size_t>(k), 0)}; }

    MultiDegree& operator+=(const MultiDegree& o) {
        parity = (parity + o.parity) & 1;
        if (degrees.size() < o.degrees.size()) degrees.resize(o.degrees.size(), 0);
        for (std::size_t i = 0; i < o.degrees.size(); ++i) degrees[i] += o.degrees[i];
        return *this;
    }

    friend bool operator==(const MultiDegree& a, const MultiDegree& b) {
        if (a.parity != b.parity) return false;
        std::size_t n = std::max(a.degrees.size(), b.degrees.size());
        for (std::size_t i = 0; i < n; ++i) {
            int da = i < a.degrees.size() ? a.degrees[i] : 0;
            int db = i < b.degrees.size() ? b.degrees[i] : 0;
            if (da != db) return false;
        }
        return true;
    }
};

// Sign picked up when two homogeneous elements are transposed:
//   (-1)^(p_a*p_b + sum_i a_i*b_i),
// componentwise in the Z^k part (not total degree).  This is the unique rule
// under which d1- and d2-differentials commute while two d1x's anticommute
// and d2d1x-generators commute with themselves.
inline int koszul_sign(const MultiDegree& a, const MultiDegree& b) {
    int e = a.parity * b.parity;
    std::size_t n = std::min(a.degrees.size(), b.degrees.size());
    for (std::size_t i = 0; i < n; ++i) e += a.degrees[i] * b.degrees[i];
    return (e & 1) ? -1 : 1;
}

}  // namespace itforms
