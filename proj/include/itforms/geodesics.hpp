// itforms - geodesic curvature of curves and fixed-step RK4 integration of
// the geodesic equation of a connection.
#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "connection.hpp"

namespace itforms {

struct CurveState {
    std::vector<double> x;
    std::vector<double> v;
    double t = 0.0;
};

class GeodesicDomainError : public Error {
public:
    GeodesicDomainError(const std::string& msg, CurveState last)
        : Error(msg), last_state(std::move(last)) {}
    CurveState last_state;
};

// Geodesic curvature of a curve given by symbolic components of one
// parameter: K^mu = Gamma^mu_{rho alpha} (dchi^rho/dt)(dchi^alpha/dt)
//                   + d^2 chi^mu / dt^2, evaluated at t0.
inline std::vector<double> geodesic_curvature(const Connection& conn,
                                              std::span<const ScalarExpr> curve, double t0) {
    const int n = conn.dim();
    if (static_cast<int>(curve.size()) != n)
        throw Error("curve component count does not match the chart dimension");
    const double tv[1] = {t0};
    std::vector<double> pos(static_cast<std::size_t>(n)), vel(static_cast<std::size_t>(n)),
        acc(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const ScalarExpr& comp = curve[static_cast<std::size_t>(i)];
        ScalarExpr d1 = comp.partial(0);
        pos[static_cast<std::size_t>(i)] = comp.eval_at(std::span<const double>(tv, 1));
        vel[static_cast<std::size_t>(i)] = d1.eval_at(std::span<const double>(tv, 1));
        acc[static_cast<std::size_t>(i)] = d1.partial(0).eval_at(std::span<const double>(tv, 1));
    }
    std::vector<double> g = eval_gamma(conn, pos);
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int mu = 0; mu < n; ++mu) {
        double s = acc[static_cast<std::size_t>(mu)];
        for (int r = 0; r < n; ++r)
            for (int a = 0; a < n; ++a)
                s += g[static_cast<std::size_t>((mu * n + r) * n + a)] *
                     vel[static_cast<std::size_t>(r)] * vel[static_cast<std::size_t>(a)];
        k[static_cast<std::size_t>(mu)] = s;
    }
    return k;
}

namespace detail {

inline bool in_domain(const SamplingDomain& dom, std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < dom.intervals[i].lo || x[i] > dom.intervals[i].hi) return false;
    return true;
}

inline void geodesic_rhs(const Connection& conn, const CurveState& s, std::vector<double>& dx,
                         std::vector<double>& dv) {
    const int n = conn.dim();
    std::vector<double> g = eval_gamma(conn, s.x);
    for (int mu = 0; mu < n; ++mu) {
        dx[static_cast<std::size_t>(mu)] = s.v[static_cast<std::size_t>(mu)];
        double a = 0.0;
        for (int r = 0; r < n; ++r)
            for (int b = 0; b < n; ++b)
                a -= g[static_cast<std::size_t>((mu * n + r) * n + b)] *
                     s.v[static_cast<std::size_t>(r)] * s.v[static_cast<std::size_t>(b)];
        dv[static_cast<std::size_t>(mu)] = a;
    }
}

}  // namespace detail

// Classical fixed-step RK4 on xdot = v, vdot = -Gamma(x) v v.  Returns
// steps+1 states; leaves the chart's sampling domain -> error carrying the
// last valid state.
inline std::vector<CurveState> integrate(const Connection& conn, const CurveState& s0,
                                         double t_end, int steps) {
    if (steps < 1) throw Error("step count must be >= 1");
    const int n = conn.dim();
    if (static_cast<int>(s0.x.size()) != n || static_cast<int>(s0.v.size()) != n)
        throw Error("initial state dimension does not match the chart");
    if (!detail::in_domain(conn.chart.domain, s0.x))
        throw GeodesicDomainError("initial position is outside the chart domain", s0);

    const double h = (t_end - s0.t) / steps;
    std::vector<CurveState> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    traj.push_back(s0);

    std::vector<double> k1x(n), k1v(n), k2x(n), k2v(n), k3x(n), k3v(n), k4x(n), k4v(n);
    CurveState tmp = s0;
    for (int step = 0; step < steps; ++step) {
        const CurveState& cur = traj.back();
        detail::geodesic_rhs(conn, cur, k1x, k1v);
        for (int i = 0; i < n; ++i) {
            tmp.x[static_cast<std::size_t>(i)] = cur.x[static_cast<std::size_t>(i)] + 0.5 * h * k1x[static_cast<std::size_t>(i)];
            tmp.v[static_cast<std::size_t>(i)] = cur.v[static_cast<std::size_t>(i)] + 0.5 * h * k1v[static_cast<std::size_t>(i)];
        }
        detail::geodesic_rhs(conn, tmp, k2x, k2v);
        for (int i = 0; i < n; ++i) {
            tmp.x[static_cast<std::size_t>(i)] = cur.x[static_cast<std::size_t>(i)] + 0.5 * h * k2x[static_cast<std::size_t>(i)];
            tmp.v[static_cast<std::size_t>(i)] = cur.v[static_cast<std::size_t>(i)] + 0.5 * h * k2v[static_cast<std::size_t>(i)];
        }
        detail::geodesic_rhs(conn, tmp, k3x, k3v);
        for (int i = 0; i < n; ++i) {
            tmp.x[static_cast<std::size_t>(i)] = cur.x[static_cast<std::size_t>(i)] + h * k3x[static_cast<std::size_t>(i)];
            tmp.v[static_cast<std::size_t>(i)] = cur.v[static_cast<std::size_t>(i)] + h * k3v[static_cast<std::size_t>(i)];
        }
        detail::geodesic_rhs(conn, tmp, k4x, k4v);

        CurveState next;
        next.t = cur.t + h;
        next.x.resize(static_cast<std::size_t>(n));
        next.v.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const std::size_t u = static_cast<std::size_t>(i);
            next.x[u] = cur.x[u] + h / 6.0 * (k1x[u] + 2.0 * (k2x[u] + k3x[u]) + k4x[u]);
            next.v[u] = cur.v[u] + h / 6.0 * (k1v[u] + 2.0 * (k2v[u] + k3v[u]) + k4v[u]);
        }
        if (!detail::in_domain(conn.chart.domain, next.x))
            throw GeodesicDomainError("trajectory left the chart domain at step " +
                                          std::to_string(step + 1),
                                      traj.back());
        traj.push_back(std::move(next));
    }
    return traj;
}

// g(v, v) along a trajectory; constant for geodesics of a metric connection.
inline std::vector<double> speed_along(const ExprMatrix& g,
                                       const std::vector<CurveState>& trajectory) {
    const int n = static_cast<int>(g.size());
    std::vector<double> out;
    out.reserve(trajectory.size());
    for (const auto& s : trajectory) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto& e = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (e.is_zero()) continue;
                sum += e.eval_at(s.x) * s.v[static_cast<std::size_t>(i)] * s.v[static_cast<std::size_t>(j)];
            }
        out.push_back(sum);
    }
    return out;
}

}  // namespace itforms
