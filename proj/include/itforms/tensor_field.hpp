// itforms - covariant 2-tensor fields with the symmetric/skew split and the
// exact adjugate inverse of the symmetric part.
#pragma once

#include <utility>
#include <vector>

#include "chart.hpp"
#include "iterated_form.hpp"
#include "scalar_expr.hpp"

namespace itforms {

using ExprMatrix = std::vector<std::vector<ScalarExpr>>;

inline ExprMatrix zero_matrix(int n) {
    return ExprMatrix(static_cast<std::size_t>(n),
                      std::vector<ScalarExpr>(static_cast<std::size_t>(n), ScalarExpr::zero()));
}

inline ExprMatrix identity_matrix(int n) {
    ExprMatrix m = zero_matrix(n);
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = ScalarExpr::one();
    return m;
}

// tau = g + omega with g symmetric and omega skew.
inline std::pair<ExprMatrix, ExprMatrix> split(const ExprMatrix& tau) {
    const int n = static_cast<int>(tau.size());
    ExprMatrix g = zero_matrix(n), omega = zero_matrix(n);
    const ScalarExpr half = ScalarExpr::constant(Rational(1, 2));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& a = tau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const auto& b = tau[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = half * (a + b);
            omega[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = half * (a - b);
        }
    return {std::move(g), std::move(omega)};
}

namespace detail {

inline ScalarExpr determinant(const ExprMatrix& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    std::vector<ScalarExpr> terms;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        ExprMatrix minor(n - 1, std::vector<ScalarExpr>(n - 1, ScalarExpr::zero()));
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        ScalarExpr t = m[0][j] * determinant(minor);
        terms.push_back((j % 2 == 0) ? t : -t);
    }
    return ScalarExpr::sum(terms);
}

}  // namespace detail

// Exact adjugate-based inverse; feasible at desk scale (n <= 6).
inline std::pair<ExprMatrix, ScalarExpr> matrix_inverse(const ExprMatrix& m) {
    const int n = static_cast<int>(m.size());
    if (n > 6) throw SizeError("matrix inverse supports dimension <= 6, got " + std::to_string(n));
    ScalarExpr det = detail::determinant(m);
    ScalarExpr det_inv = det.pow(-1);
    ExprMatrix inv = zero_matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ExprMatrix minor(static_cast<std::size_t>(n - 1),
                             std::vector<ScalarExpr>(static_cast<std::size_t>(n - 1), ScalarExpr::zero()));
            std::size_t rr = 0;
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;  // cofactor transpose: inv[i][j] from minor(j, i)
                std::size_t cc = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor[rr][cc++] = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                }
                ++rr;
            }
            ScalarExpr cof = n == 1 ? ScalarExpr::one() : detail::determinant(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cof * det_inv;
        }
    return {std::move(inv), std::move(det)};
}

// A covariant 2-tensor over a chart, split as tau = g + omega, with the exact
// inverse of g.  Construction verifies at the chart's sample points that
// det(g) stays away from zero.
struct TensorField2 {
    Chart chart;
    ExprMatrix tau;
    ExprMatrix g;
    ExprMatrix omega;
    ExprMatrix g_inv;
    ScalarExpr det_g;

    bool omega_is_zero() const {
        for (const auto& row : omega)
            for (const auto& e : row)
                if (!e.is_zero()) return false;
        return true;
    }

    TensorField2 metric_part() const { return make(chart, g); }

    static TensorField2 make(Chart chart, ExprMatrix tau_in) {
        const int n = chart.dim();
        if (static_cast<int>(tau_in.size()) != n)
            throw ModelError("tensor is not square of chart dimension");
        for (const auto& row : tau_in)
            if (static_cast<int>(row.size()) != n)
                throw ModelError("tensor is not square of chart dimension");

        TensorField2 tf;
        tf.chart = std::move(chart);
        tf.tau = std::move(tau_in);
        auto [g, omega] = split(tf.tau);
        tf.g = std::move(g);
        tf.omega = std::move(omega);
        auto [inv, det] = matrix_inverse(tf.g);
        tf.g_inv = std::move(inv);
        tf.det_g = std::move(det);

        // Degeneracy check by sampling, with the usual retry-on-domain-error.
        SampleRng rng(tf.chart.domain.seed);
        for (int t = 0; t < tf.chart.domain.trials; ++t) {
            bool evaluated = false;
            double d = 0.0;
            std::vector<double> p;
            for (int attempt = 0; attempt < 10 && !evaluated; ++attempt) {
                p = tf.chart.domain.sample(rng);
                try {
                    d = tf.det_g.eval_at(p);
                    evaluated = true;
                } catch (const EvalError&) {
                }
            }
            if (!evaluated)
                throw SamplingError("could not evaluate det(g) anywhere in the chart domain");
            if (std::abs(d) < 1e-12)
                throw DegenerateMetricError("metric determinant vanishes at a sample point", p);
        }
        return tf;
    }
};

// tau as an iterated (1,1)-form: tau_{mu nu} d1 x^mu d2 x^nu.
inline IteratedForm iota2(const ExprMatrix& t, int depth = 3) {
    const int n = static_cast<int>(t.size());
    return iota(2, n, depth, [&](std::span<const int> idx) {
        return t[static_cast<std::size_t>(idx[0])][static_cast<std::size_t>(idx[1])];
    });
}

}  // namespace itforms
