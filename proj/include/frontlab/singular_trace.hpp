#pragma once

// Marching-squares tracer for the singular set {lambda = 0} and the
// per-curve post-processing (orientation, A3 markers, degeneracy test).
// Included at the end of singular.hpp.

#include <cstdio>

namespace frontlab {

namespace trace_detail {

struct Crossing {
    Point2 q;
    std::vector<std::int64_t> adj;
    bool used = false;
};

}  // namespace trace_detail

inline std::vector<SingularCurve> trace_singular_curves(const SurfaceDescriptor& s, Role role,
                                                        int nu, int nv, double refine_tol,
                                                        bool strict_beaks) {
    using namespace trace_detail;
    check_role(s, role);
    const ParamDomain& d = s.domain;
    if (nu < 8 || nv < 8) throw UsageError("grid must be at least 8x8");
    double scale = lambda_scale(s, role);

    Axis au = make_axis(d.u_min, d.u_max, nu, d.u_periodic, d.pole_at_u_min, d.pole_at_u_max);
    Axis av = make_axis(d.v_min, d.v_max, nv, d.v_periodic, false, false);
    const int NU = au.nnodes(), NV = av.nnodes();
    const int ncu = au.ncells(), ncv = av.ncells();

    std::vector<double> L(static_cast<std::size_t>(NU) * NV);
    for (int i = 0; i < NU; ++i)
        for (int j = 0; j < NV; ++j)
            L[static_cast<std::size_t>(i) * NV + j] = jacobian(s, {au.x[i], av.x[j]}, role);

    auto lam = [&](int i, int j) {
        int wi = d.u_periodic ? ((i % NU) + NU) % NU : i;
        int wj = d.v_periodic ? ((j % NV) + NV) % NV : j;
        return L[static_cast<std::size_t>(wi) * NV + wj];
    };

    const double coarse_tol = 1e-8 * scale;
    std::map<std::int64_t, Crossing> cross;

    auto ensure_root = [&](std::int64_t key, Point2 a, Point2 b, double la,
                           double lb) -> Crossing& {
        auto it = cross.find(key);
        if (it == cross.end()) {
            Point2 r = edge_root(s, role, a, b, la, lb, refine_tol);
            it = cross.emplace(key, Crossing{d.wrap(r), {}, false}).first;
        }
        return it->second;
    };

    for (int i = 0; i < ncu; ++i) {
        for (int j = 0; j < ncv; ++j) {
            double u0 = au.node(i), u1 = au.node(i + 1);
            double v0 = av.node(j), v1 = av.node(j + 1);
            double l00 = lam(i, j), l10 = lam(i + 1, j);
            double l01 = lam(i, j + 1), l11 = lam(i + 1, j + 1);
            if (std::fabs(l00) < coarse_tol && std::fabs(l10) < coarse_tol &&
                std::fabs(l01) < coarse_tol && std::fabs(l11) < coarse_tol)
                throw AccuracyError("grid too coarse to separate the singular set from zero");

            bool b00 = l00 > 0, b10 = l10 > 0, b01 = l01 > 0, b11 = l11 > 0;
            struct E {
                std::int64_t key;
                Point2 a, b;
                double la, lb;
                bool hit;
            };
            E bottom{edge_key(0, i, j, NU, NV), {u0, v0}, {u1, v0}, l00, l10, b00 != b10};
            E top{edge_key(0, i, j + 1, NU, NV), {u0, v1}, {u1, v1}, l01, l11, b01 != b11};
            E left{edge_key(1, i, j, NU, NV) + (1LL << 40), {u0, v0}, {u0, v1}, l00, l01,
                   b00 != b01};
            E right{edge_key(1, i + 1, j, NU, NV) + (1LL << 40), {u1, v0}, {u1, v1}, l10, l11,
                    b10 != b11};

            int nhit = bottom.hit + top.hit + left.hit + right.hit;
            if (nhit == 0) continue;

            auto link = [&](const E& e1, const E& e2) {
                Crossing& c1 = ensure_root(e1.key, e1.a, e1.b, e1.la, e1.lb);
                Crossing& c2 = ensure_root(e2.key, e2.a, e2.b, e2.la, e2.lb);
                c1.adj.push_back(e2.key);
                c2.adj.push_back(e1.key);
            };

            if (nhit == 2) {
                const E* hits[2];
                int k = 0;
                for (const E* e : {&bottom, &top, &left, &right})
                    if (e->hit) hits[k++] = e;
                link(*hits[0], *hits[1]);
            } else if (nhit == 4) {
                double lc = jacobian(s, {0.5 * (u0 + u1), 0.5 * (v0 + v1)}, role);
                // saddle cell: the center sample picks the pairing
                if ((lc > 0) == b00) {
                    link(bottom, right);
                    link(top, left);
                } else {
                    link(bottom, left);
                    link(top, right);
                }
            } else {
                throw AccuracyError("inconsistent sign pattern in a grid cell");
            }
        }
    }

    // walk the adjacency graph: open chains first, then closed loops
    std::vector<std::vector<std::int64_t>> chains;
    auto walk = [&](std::int64_t start) {
        std::vector<std::int64_t> chain{start};
        cross[start].used = true;
        std::int64_t prev = -1, cur = start;
        while (true) {
            std::int64_t next = -1;
            for (std::int64_t n : cross[cur].adj)
                if (n != prev && !cross[n].used) {
                    next = n;
                    break;
                }
            if (next < 0) break;
            cross[next].used = true;
            chain.push_back(next);
            prev = cur;
            cur = next;
        }
        return chain;
    };
    for (auto& [key, c] : cross)
        if (!c.used && c.adj.size() == 1) chains.push_back(walk(key));
    for (auto& [key, c] : cross)
        if (!c.used) chains.push_back(walk(key));

    double dom = std::max(d.u_len(), d.v_len());
    std::vector<SingularCurve> out;
    for (auto& chain : chains) {
        SingularCurve c;
        c.role = role;
        c.scale = scale;
        c.closed = cross[chain.front()].adj.size() > 1 && cross[chain.back()].adj.size() > 1;
        for (std::int64_t k : chain) {
            Point2 q = project_to_sigma(s, role, cross[k].q, scale);
            if (!c.pts.empty() && norm(d.diff(q, c.pts.back())) < 1e-9 * dom) continue;
            c.pts.push_back(q);
        }
        if (c.closed && c.pts.size() >= 2 &&
            norm(d.diff(c.pts.front(), c.pts.back())) < 1e-9 * dom)
            c.pts.pop_back();
        if (c.pts.size() < 3) continue;  // sub-cell fragment, below resolution

        // pole exclusion zone
        if (d.pole_at_u_min || d.pole_at_u_max) {
            for (const Point2& p : c.pts) {
                if ((d.pole_at_u_min && p.u - d.u_min < kPoleMargin) ||
                    (d.pole_at_u_max && d.u_max - p.u < kPoleMargin))
                    throw AccuracyError("singular curve enters the pole exclusion zone");
            }
        }

        // orient with M+ = {lambda > 0} on the left
        {
            std::size_t best = 0;
            double bl = -1;
            for (std::size_t k = 0; k + 1 < c.pts.size(); ++k) {
                double len = norm(d.diff(c.pts[k + 1], c.pts[k]));
                if (len > bl) {
                    bl = len;
                    best = k;
                }
            }
            Point2 t = d.diff(c.pts[best + 1], c.pts[best]);
            Point2 mid = c.pts[best] + 0.5 * t;
            Point2 g = grad_lambda(s, d.wrap(mid), role);
            if (g.u * (-t.v) + g.v * t.u < 0) std::reverse(c.pts.begin(), c.pts.end());
        }

        c.tp.assign(c.pts.size(), 0.0);
        for (std::size_t k = 1; k < c.pts.size(); ++k)
            c.tp[k] = c.tp[k - 1] + norm(d.diff(c.pts[k], c.pts[k - 1]));
        c.total = c.tp.back() +
                  (c.closed ? norm(d.diff(c.pts.front(), c.pts.back())) : 0.0);
        if (!(c.total > 0)) continue;

        // uniformly degenerate circle: the null direction stays tangent
        {
            double worst = 0;
            std::size_t step = std::max<std::size_t>(1, c.pts.size() / 32);
            for (std::size_t k = 0; k < c.pts.size(); k += step) {
                Point2 g = grad_lambda(s, c.pts[k], role);
                double gn = norm(g);
                if (gn < 1e-12 * scale / dom) continue;
                Point2 eta = null_direction(s, c.pts[k], role);
                worst = std::max(worst, std::fabs(dot(g, eta)) / gn);
            }
            c.degenerate = worst < 1e-6;
        }

        // A3 markers: zeros of lambda' with a sign-continuous null field
        if (!c.degenerate) {
            std::vector<double> lp(c.pts.size());
            std::vector<Point2> etas(c.pts.size());
            for (std::size_t k = 0; k < c.pts.size(); ++k) {
                Point2 eta = null_direction(s, c.pts[k], role);
                if (k > 0 && dot(eta, etas[k - 1]) < 0) eta = -1.0 * eta;
                etas[k] = eta;
                lp[k] = dot(grad_lambda(s, c.pts[k], role), eta);
            }
            auto refine_marker = [&](double ta, double tb, Point2 eta_ref) {
                auto lamp = [&](double t, Point2& eta_io) {
                    Point2 q = sigma_point(s, c, t, scale);
                    Point2 eta = null_direction(s, q, role);
                    if (dot(eta, eta_io) < 0) eta = -1.0 * eta;
                    eta_io = eta;
                    return dot(grad_lambda(s, q, role), eta);
                };
                Point2 eta = eta_ref;
                double fa = lamp(ta, eta);
                for (int it = 0; it < 64 && tb - ta > 1e-12 * c.total; ++it) {
                    double tm = 0.5 * (ta + tb);
                    Point2 eta_m = eta;
                    double fm = lamp(tm, eta_m);
                    if ((fm > 0) == (fa > 0)) {
                        ta = tm;
                        fa = fm;
                        eta = eta_m;
                    } else {
                        tb = tm;
                    }
                }
                return 0.5 * (ta + tb);
            };
            std::size_t n = c.pts.size();
            std::size_t nseg = c.closed ? n : n - 1;
            for (std::size_t k = 0; k < nseg; ++k) {
                std::size_t k2 = (k + 1) % n;
                double l2v = lp[k2];
                if (c.closed && k2 == 0 && dot(etas[0], etas[n - 1]) < 0) l2v = -l2v;
                if ((lp[k] > 0) == (l2v > 0)) continue;
                double ta = c.tp[k];
                double tb = (k2 == 0) ? c.total : c.tp[k2];
                A3Marker m;
                m.t = refine_marker(ta, tb, etas[k]);
                m.q = sigma_point(s, c, m.t, scale);
                SingularPointRecord rec =
                    classify_singular_point(s, m.q, role, strict_beaks, scale);
                m.cls = rec.cls;
                m.sign = (rec.cls == SingClass::A3) ? rec.a3sign : (rec.l2 > 0 ? 1 : -1);
                c.markers.push_back(m);
            }
            std::sort(c.markers.begin(), c.markers.end(),
                      [](const A3Marker& a, const A3Marker& b) { return a.t < b.t; });
        }

        out.push_back(std::move(c));
    }

    // deterministic ordering: by first point, lexicographic
    std::sort(out.begin(), out.end(), [](const SingularCurve& a, const SingularCurve& b) {
        if (a.pts.front().u != b.pts.front().u) return a.pts.front().u < b.pts.front().u;
        return a.pts.front().v < b.pts.front().v;
    });
    return out;
}

struct CurveSample {
    double t = 0;
    Point2 q;
    double lambda_prime = 0;
    double density = 0;
    double speed = 0;
    std::optional<double> kappa;
    std::string cls;
};

/// Uniform samples along a traced curve (markers inserted exactly), with
/// the quantities exported by the CSV writer.
inline std::vector<CurveSample> sample_curve(const SurfaceDescriptor& s, const SingularCurve& c,
                                             int n) {
    std::vector<double> ts;
    double span = c.closed ? c.total : c.tp.back();
    for (int i = 0; i < n; ++i) ts.push_back(c.closed ? span * i / n : span * i / (n - 1));
    for (const auto& m : c.markers) ts.push_back(m.t);
    std::sort(ts.begin(), ts.end());

    std::vector<CurveSample> out;
    for (double t : ts) {
        CurveSample cs;
        cs.t = t;
        cs.q = sigma_point(s, c, t);
        Point2 eta = null_direction(s, cs.q, c.role);
        cs.lambda_prime = std::fabs(dot(grad_lambda(s, cs.q, c.role), eta));
        cs.density = curve_density(s, c, t);
        cs.speed = curve_speed(s, c, t);
        cs.kappa = singular_curvature(s, c, t);
        bool at_marker = false;
        for (const auto& m : c.markers)
            if (std::fabs(t - m.t) < 1e-9 * c.total) at_marker = true;
        if (c.degenerate) cs.cls = "degenerate-circle";
        else if (at_marker) cs.cls = "A3";
        else cs.cls = "A2";
        out.push_back(cs);
    }
    return out;
}

}  // namespace frontlab
