#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "frontlab/bundle.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/singular.hpp"
#include "frontlab/surface.hpp"

namespace frontlab {

/// Compensated accumulator; keeps integral results independent of
/// floating-point reassociation.
struct KahanSum {
    double s = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

struct RegionSummary {
    Role role = Role::FirstHom;
    int chi_plus = 0;
    int chi_minus = 0;
    long faces_plus = 0;
    long faces_minus = 0;
    long faces_mixed = 0;
};

/// Euler characteristics of M+ = {lambda > 0} and M- = {lambda < 0} by
/// cubical homology on the shifted node grid (plus pole fans on sphere
/// charts).  chi(M+) + chi(M-) equals chi of the domain when the grid
/// resolves the singular set.
inline RegionSummary decompose_regions(const SurfaceDescriptor& s, Role role, int nu = 256,
                                       int nv = 256) {
    using trace_detail::Axis;
    using trace_detail::make_axis;
    check_role(s, role);
    const ParamDomain& d = s.domain;
    Axis au = make_axis(d.u_min, d.u_max, nu, d.u_periodic, d.pole_at_u_min, d.pole_at_u_max);
    Axis av = make_axis(d.v_min, d.v_max, nv, d.v_periodic, false, false);
    const int NU = au.nnodes(), NV = av.nnodes();

    std::vector<char> P(static_cast<std::size_t>(NU) * NV);
    for (int i = 0; i < NU; ++i)
        for (int j = 0; j < NV; ++j)
            P[static_cast<std::size_t>(i) * NV + j] =
                jacobian(s, {au.x[i], av.x[j]}, role) > 0 ? 1 : 0;
    auto pos = [&](int i, int j) {
        int wi = d.u_periodic ? ((i % NU) + NU) % NU : i;
        int wj = ((j % NV) + NV) % NV;
        return P[static_cast<std::size_t>(wi) * NV + wj] != 0;
    };

    RegionSummary out;
    out.role = role;
    for (int want = 0; want < 2; ++want) {
        bool target = want == 0;
        long V = 0, E = 0, F = 0;
        for (int i = 0; i < NU; ++i)
            for (int j = 0; j < NV; ++j)
                if (pos(i, j) == target) ++V;
        int eu_rows = d.u_periodic ? NU : NU - 1;
        for (int i = 0; i < eu_rows; ++i)
            for (int j = 0; j < NV; ++j)
                if (pos(i, j) == target && pos(i + 1, j) == target) ++E;
        int ev_cols = d.v_periodic ? NV : NV - 1;
        for (int i = 0; i < NU; ++i)
            for (int j = 0; j < ev_cols; ++j)
                if (pos(i, j) == target && pos(i, j + 1) == target) ++E;
        for (int i = 0; i < eu_rows; ++i)
            for (int j = 0; j < ev_cols; ++j) {
                bool all = pos(i, j) == target && pos(i + 1, j) == target &&
                           pos(i, j + 1) == target && pos(i + 1, j + 1) == target;
                bool any = pos(i, j) == target || pos(i + 1, j) == target ||
                           pos(i, j + 1) == target || pos(i + 1, j + 1) == target;
                if (all) ++F;
                if (want == 0 && any && !all) ++out.faces_mixed;
            }
        // pole fans: the pole vertex takes the sign of the adjacent ring
        auto add_pole = [&](int ring, long& Vr, long& Er, long& Fr) {
            bool psign = pos(ring, 0);
            for (int j = 0; j < NV; ++j)
                if (pos(ring, j) != psign) return;  // mixed ring: resolved by margin check
            if (psign != target) return;
            ++Vr;
            for (int j = 0; j < NV; ++j) {
                ++Er;  // spoke
                ++Fr;  // triangle (ring edge counted already)
            }
        };
        if (d.pole_at_u_min) add_pole(0, V, E, F);
        if (d.pole_at_u_max) add_pole(NU - 1, V, E, F);

        int chi = static_cast<int>(V - E + F);
        if (target) {
            out.chi_plus = chi;
            out.faces_plus = F;
        } else {
            out.chi_minus = chi;
            out.faces_minus = F;
        }
    }
    return out;
}

namespace quad_detail {

inline constexpr double kGL3x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
inline constexpr double kGL3w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
inline constexpr double kGL5x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                    0.5384693101056831, 0.9061798459386640};
inline constexpr double kGL5w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                    0.4786286704993665, 0.2369268850561891};

template <typename F>
double gl3_cell(F&& f, double u0, double u1, double v0, double v1) {
    double hu = 0.5 * (u1 - u0), hv = 0.5 * (v1 - v0);
    double cu = 0.5 * (u1 + u0), cv = 0.5 * (v1 + v0);
    double s = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            s += kGL3w[a] * kGL3w[b] * f(Point2{cu + hu * kGL3x[a], cv + hv * kGL3x[b]});
    return s * hu * hv;
}

/// Area and centroid of the {lambda > 0} part of a leaf square, from the
/// bilinear model through the corner values.
struct Clip {
    double area = 0;
    Point2 centroid{0, 0};
};

inline Clip clip_positive(double u0, double u1, double v0, double v1, double l00, double l10,
                          double l11, double l01) {
    Point2 poly[8];
    int n = 0;
    Point2 corner[4] = {{u0, v0}, {u1, v0}, {u1, v1}, {u0, v1}};
    double val[4] = {l00, l10, l11, l01};
    for (int k = 0; k < 4; ++k) {
        int k2 = (k + 1) % 4;
        if (val[k] > 0) poly[n++] = corner[k];
        if ((val[k] > 0) != (val[k2] > 0)) {
            double t = val[k] / (val[k] - val[k2]);
            poly[n++] = corner[k] + t * (corner[k2] - corner[k]);
        }
    }
    Clip c;
    if (n < 3) return c;
    double A2 = 0, cu = 0, cv = 0;
    for (int k = 0; k < n; ++k) {
        const Point2& a = poly[k];
        const Point2& b = poly[(k + 1) % n];
        double w = a.u * b.v - b.u * a.v;
        A2 += w;
        cu += (a.u + b.u) * w;
        cv += (a.v + b.v) * w;
    }
    c.area = 0.5 * A2;
    if (std::fabs(A2) > 1e-300) c.centroid = {cu / (3 * A2), cv / (3 * A2)};
    return c;
}

}  // namespace quad_detail

/// Integral of fn over the full chart rectangle (smooth integrands),
/// composite 3x3 Gauss-Legendre on an n x m partition.
template <typename F>
double integrate_smooth(const SurfaceDescriptor& s, F&& fn, int nu = 128, int nv = 128) {
    const ParamDomain& d = s.domain;
    double hu = d.u_len() / nu, hv = d.v_len() / nv;
    KahanSum sum;
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j)
            sum.add(quad_detail::gl3_cell(fn, d.u_min + i * hu, d.u_min + (i + 1) * hu,
                                          d.v_min + j * hv, d.v_min + (j + 1) * hv));
    return sum.value();
}

/// Integral of fn over {sign * lambda > 0}.  Cells cut by the singular set
/// are resolved by quadtree refinement; leaf squares use the bilinear clip
/// polygon of lambda with a centroid sample.
template <typename F>
double integrate_indicator(const SurfaceDescriptor& s, Role role, F&& fn, int sign, int nu = 128,
                           int nv = 128, int depth = 4) {
    check_role(s, role);
    const ParamDomain& d = s.domain;
    auto lam = [&](Point2 q) { return sign * jacobian(s, q, role); };

    KahanSum sum;
    std::function<void(double, double, double, double, double, double, double, double, int)> rec =
        [&](double u0, double u1, double v0, double v1, double l00, double l10, double l11,
            double l01, int lvl) {
            bool p00 = l00 > 0, p10 = l10 > 0, p11 = l11 > 0, p01 = l01 > 0;
            double lc = lam({0.5 * (u0 + u1), 0.5 * (v0 + v1)});
            bool pc = lc > 0;
            if (p00 == p10 && p00 == p11 && p00 == p01 && p00 == pc) {
                if (p00) sum.add(quad_detail::gl3_cell(fn, u0, u1, v0, v1));
                return;
            }
            if (lvl >= depth) {
                quad_detail::Clip c = quad_detail::clip_positive(u0, u1, v0, v1, l00, l10, l11, l01);
                if (c.area > 0) sum.add(c.area * fn(c.centroid));
                return;
            }
            double um = 0.5 * (u0 + u1), vm = 0.5 * (v0 + v1);
            double lb = lam({um, v0}), lt = lam({um, v1});
            double ll = lam({u0, vm}), lr = lam({u1, vm});
            rec(u0, um, v0, vm, l00, lb, lc, ll, lvl + 1);
            rec(um, u1, v0, vm, lb, l10, lr, lc, lvl + 1);
            rec(u0, um, vm, v1, ll, lc, lt, l01, lvl + 1);
            rec(um, u1, vm, v1, lc, lr, l11, lt, lvl + 1);
        };

    double hu = d.u_len() / nu, hv = d.v_len() / nv;
    std::vector<double> row0(static_cast<std::size_t>(nv) + 1), row1(row0);
    for (int j = 0; j <= nv; ++j) row0[j] = lam({d.u_min, d.v_min + j * hv});
    for (int i = 0; i < nu; ++i) {
        double u0 = d.u_min + i * hu, u1 = d.u_min + (i + 1) * hu;
        for (int j = 0; j <= nv; ++j) row1[j] = lam({u1, d.v_min + j * hv});
        for (int j = 0; j < nv; ++j)
            rec(u0, u1, d.v_min + j * hv, d.v_min + (j + 1) * hv, row0[j], row1[j], row1[j + 1],
                row0[j + 1], 0);
        std::swap(row0, row1);
    }
    return sum.value();
}

/// Integral of the singular-curvature density over a traced curve
/// (the measure kappa d-tau).  A3 markers split the curve into quadrature
/// panels so nodes never coincide with a marker.
inline double integrate_curve_density(const SurfaceDescriptor& s, const SingularCurve& c,
                                      int subdiv = 64) {
    using namespace quad_detail;
    double span = c.closed ? c.total : c.tp.back();
    std::vector<double> breaks{0.0};
    for (const auto& m : c.markers)
        if (m.t > 1e-12 * span && m.t < span * (1 - 1e-12)) breaks.push_back(m.t);
    breaks.push_back(span);
    std::sort(breaks.begin(), breaks.end());

    KahanSum sum;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        double a = breaks[p], b = breaks[p + 1];
        int m = std::max(8, static_cast<int>(std::ceil(subdiv * (b - a) / span)));
        for (int k = 0; k < m; ++k) {
            double x0 = a + (b - a) * k / m, x1 = a + (b - a) * (k + 1) / m;
            double h = 0.5 * (x1 - x0), cx = 0.5 * (x0 + x1);
            for (int g = 0; g < 5; ++g)
                sum.add(h * kGL5w[g] * curve_density(s, c, cx + h * kGL5x[g]));
        }
    }
    return sum.value();
}

}  // namespace frontlab
