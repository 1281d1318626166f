#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/bundle.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/surface.hpp"

namespace frontlab {

inline constexpr double kGridOffset = 0.10355339059327376;  // (sqrt(2)-1)/4
inline constexpr double kPoleMargin = 1e-2;

/// Typical magnitude of lambda over the domain; reference for all
/// singularity tolerances.
inline double lambda_scale(const SurfaceDescriptor& s, Role role) {
    const ParamDomain& d = s.domain;
    double m = 0;
    const int n = 24;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Point2 q{d.u_min + (i + 0.41) * d.u_len() / n, d.v_min + (j + 0.37) * d.v_len() / n};
            m = std::max(m, std::fabs(jacobian(s, q, role)));
        }
    }
    if (m == 0) throw HypothesisError("lambda vanishes identically");
    return m;
}

/// Kernel direction of the homomorphism at a rank-1 point (unit vector,
/// sign unspecified).
inline Point2 null_direction(const SurfaceDescriptor& s, Point2 q, Role role) {
    check_role(s, role);
    HomFrameData fr = hom_frame(s, q);
    Mat2 G = (role == Role::FirstHom) ? fr.G : *fr.G_sharp;
    // eigenvector of G^T G for the smaller eigenvalue
    double a = G.a * G.a + G.c * G.c;
    double b = G.a * G.b + G.c * G.d;
    double c = G.b * G.b + G.d * G.d;
    double tr = a + c;
    double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
    double mu_small = 0.5 * (tr - disc);
    double mu_large = 0.5 * (tr + disc);
    if (mu_large < 1e-20 * (1 + tr))
        throw HypothesisError("homomorphism has rank 0 at the query point");
    // (a - mu, b; b, c - mu) x = 0
    Point2 eta;
    if (std::fabs(a - mu_small) > std::fabs(c - mu_small))
        eta = {-b, a - mu_small};
    else
        eta = {c - mu_small, -b};
    double n = norm(eta);
    if (n < 1e-14 * std::sqrt(tr + 1e-300)) eta = {1, 0};  // isotropic: any direction
    else eta = (1.0 / n) * eta;
    return eta;
}

struct LambdaJet {
    double lambda = 0;
    double l1 = 0, l2 = 0, l3 = 0;  // derivatives along the null line
    Point2 eta;
};

/// Directional derivatives of lambda along the straight line through q in
/// the null direction, by 4th-order central differences.
inline LambdaJet lambda_jet_along_null(const SurfaceDescriptor& s, Point2 q, Role role,
                                       std::optional<Point2> eta_hint = std::nullopt) {
    Point2 eta = eta_hint ? *eta_hint : null_direction(s, q, role);
    double dom = std::max(s.domain.u_len(), s.domain.v_len());
    double h = 1e-3 * dom;

    auto fits = [&](double step) {
        for (int k = -3; k <= 3; ++k) {
            Point2 p{q.u + k * step * eta.u, q.v + k * step * eta.v};
            if (!s.domain.contains(p)) return false;
        }
        return true;
    };
    while (!fits(h)) {
        h *= 0.5;
        if (h < 1e-6 * dom) throw AccuracyError("null-line stencil does not fit in the domain");
    }

    double f[7];
    for (int k = -3; k <= 3; ++k)
        f[k + 3] = jacobian(s, {q.u + k * h * eta.u, q.v + k * h * eta.v}, role);

    LambdaJet out;
    out.eta = eta;
    out.lambda = f[3];
    out.l1 = (f[1] - 8 * f[2] + 8 * f[4] - f[5]) / (12 * h);
    out.l2 = (-f[1] + 16 * f[2] - 30 * f[3] + 16 * f[4] - f[5]) / (12 * h * h);
    out.l3 = (-f[6] + 8 * f[5] - 13 * f[4] + 13 * f[2] - 8 * f[1] + f[0]) / (8 * h * h * h);
    return out;
}

/// Hessian of lambda by 4th-order differences of the analytic gradient.
inline Mat2 lambda_hessian(const SurfaceDescriptor& s, Point2 q, Role role) {
    double h = 1e-4 * std::max(s.domain.u_len(), s.domain.v_len());
    auto g = [&](double du, double dv) { return grad_lambda(s, {q.u + du, q.v + dv}, role); };
    auto d1 = [&](auto&& f) {
        Point2 m2 = f(-2.0), m1 = f(-1.0), p1 = f(1.0), p2 = f(2.0);
        return Point2{(m2.u - 8 * m1.u + 8 * p1.u - p2.u) / (12 * h),
                      (m2.v - 8 * m1.v + 8 * p1.v - p2.v) / (12 * h)};
    };
    Point2 gu = d1([&](double k) { return g(k * h, 0); });
    Point2 gv = d1([&](double k) { return g(0, k * h); });
    return Mat2{gu.u, 0.5 * (gu.v + gv.u), 0.5 * (gu.v + gv.u), gv.v};
}

enum class SingClass { A2, A3, Lips, Beaks, Butterfly, Degenerate };

inline const char* sing_class_name(SingClass c) {
    switch (c) {
        case SingClass::A2: return "A2";
        case SingClass::A3: return "A3";
        case SingClass::Lips: return "lips";
        case SingClass::Beaks: return "beaks";
        case SingClass::Butterfly: return "butterfly";
        case SingClass::Degenerate: return "degenerate-unclassified";
    }
    return "?";
}

struct SingularPointRecord {
    Point2 q;
    Role role = Role::FirstHom;
    SingClass cls = SingClass::Degenerate;
    int a3sign = 0;  // +-1 for A3 points
    double lambda = 0;
    Point2 grad;
    double l1 = 0, l2 = 0, l3 = 0;
    Point2 eta;
    double hess_det = 0, hess_trace = 0;
};

/// Decision tree on the lambda-jet along the null direction and, in the
/// degenerate-gradient branch, the Hessian of lambda.
inline SingularPointRecord classify_singular_point(const SurfaceDescriptor& s, Point2 q, Role role,
                                                   bool strict_beaks = false,
                                                   std::optional<double> scale_hint = std::nullopt) {
    double scale = scale_hint ? *scale_hint : lambda_scale(s, role);
    SingularPointRecord r;
    r.q = q;
    r.role = role;
    r.lambda = jacobian(s, q, role);
    r.grad = grad_lambda(s, q, role);

    double dom = std::max(s.domain.u_len(), s.domain.v_len());
    double nondegen_tol = 1e-6 * scale / dom;
    double dtol = 1e-5 * scale;

    LambdaJet lj = lambda_jet_along_null(s, q, role);
    r.l1 = lj.l1;
    r.l2 = lj.l2;
    r.l3 = lj.l3;
    r.eta = lj.eta;

    if (norm(r.grad) > nondegen_tol) {
        if (std::fabs(lj.l1) > dtol / dom) {
            r.cls = SingClass::A2;
        } else if (std::fabs(lj.l2) > dtol / (dom * dom)) {
            r.cls = SingClass::A3;
            r.a3sign = lj.l2 > 0 ? 1 : -1;
        } else if (std::fabs(lj.l3) > 10 * dtol / (dom * dom * dom)) {
            r.cls = SingClass::Butterfly;
        } else {
            r.cls = SingClass::Degenerate;
        }
        return r;
    }

    // gradient vanishes: rank decides between lips/beaks and a violation
    null_direction(s, q, role);  // throws on rank 0
    Mat2 H = lambda_hessian(s, q, role);
    r.hess_det = H.det();
    r.hess_trace = H.trace();
    double htol = 1e-5 * scale * scale / (dom * dom * dom * dom);
    if (strict_beaks) {
        if (H.det() > htol && H.trace() > 0) r.cls = SingClass::Lips;
        else if (H.det() > htol && H.trace() < 0) r.cls = SingClass::Beaks;
        else r.cls = SingClass::Degenerate;
    } else {
        if (H.det() > htol) r.cls = SingClass::Lips;
        else if (H.det() < -htol && std::fabs(lj.l2) > dtol / (dom * dom)) r.cls = SingClass::Beaks;
        else r.cls = SingClass::Degenerate;
    }
    return r;
}

/// Sign of an A3 point: sgn(lambda'') under the fixed orientation and
/// co-orientation (invariant under null-direction flips).
inline int a3_sign(const SingularPointRecord& r) {
    if (r.cls != SingClass::A3) throw UsageError("a3_sign requires an A3 point");
    return r.a3sign;
}

struct A3Marker {
    double t = 0;
    Point2 q;
    int sign = 0;
    SingClass cls = SingClass::A3;
};

struct SingularCurve {
    Role role = Role::FirstHom;
    bool closed = true;
    bool degenerate = false;  // null direction tangent along the whole curve
    std::vector<Point2> pts;  // ordered vertices, M+ on the left
    std::vector<double> tp;   // cumulative chord parameter per vertex
    std::vector<A3Marker> markers;
    double total = 0;  // parameter length (including closing chord if closed)
    double scale = 1;  // lambda scale of the surface, cached by the tracer

    double period() const { return total; }
};

namespace trace_detail {

struct Axis {
    std::vector<double> x;
    bool periodic = false;
    double lo = 0, hi = 0;
    int ncells() const {
        return periodic ? static_cast<int>(x.size()) : static_cast<int>(x.size()) - 1;
    }
    int nnodes() const { return static_cast<int>(x.size()); }
    double node(int i) const {
        int n = nnodes();
        if (!periodic) return x[static_cast<std::size_t>(i)];
        int w = ((i % n) + n) % n;
        double shift = (hi - lo) * std::floor(double(i) / n);
        return x[static_cast<std::size_t>(w)] + shift;
    }
};

inline Axis make_axis(double lo, double hi, int n, bool periodic, bool pole_lo, bool pole_hi) {
    Axis a;
    a.periodic = periodic;
    a.lo = lo;
    a.hi = hi;
    double h = (hi - lo) / n;
    if (periodic || pole_lo || pole_hi) {
        for (int i = 0; i < n; ++i) a.x.push_back(lo + (i + kGridOffset) * h);
    } else {
        a.x.push_back(lo);
        for (int i = 0; i < n; ++i) a.x.push_back(lo + (i + kGridOffset) * h);
        a.x.push_back(hi);
    }
    return a;
}

// edge identifiers: dir 0 = u-varying, dir 1 = v-varying
inline std::int64_t edge_key(int dir, int i, int j, int ni, int nj) {
    int wi = ((i % ni) + ni) % ni;
    int wj = ((j % nj) + nj) % nj;
    return (static_cast<std::int64_t>(dir) * ni + wi) * nj + wj;
}

}  // namespace trace_detail

/// Bisection+secant zero of lambda along the straight segment a..b.
inline Point2 edge_root(const SurfaceDescriptor& s, Role role, Point2 a, Point2 b, double la,
                        double lb, double /*refine_tol*/) {
    double sa = 0, sb = 1;
    for (int it = 0; it < 80 && (sb - sa) > 1e-14; ++it) {
        double sm;
        if (std::fabs(lb - la) > 1e-300) {
            sm = sa - la * (sb - sa) / (lb - la);  // secant
            double third = (sb - sa) / 3;
            if (!(sm > sa + 1e-3 * third && sm < sb - 1e-3 * third)) sm = 0.5 * (sa + sb);
        } else {
            sm = 0.5 * (sa + sb);
        }
        Point2 q{a.u + sm * (b.u - a.u), a.v + sm * (b.v - a.v)};
        double lm = jacobian(s, q, role);
        if ((lm > 0) == (la > 0)) {
            sa = sm;
            la = lm;
        } else {
            sb = sm;
            lb = lm;
        }
    }
    double sm = 0.5 * (sa + sb);
    return {a.u + sm * (b.u - a.u), a.v + sm * (b.v - a.v)};
}

/// Newton projection of a near-root point onto {lambda = 0}.
inline Point2 project_to_sigma(const SurfaceDescriptor& s, Role role, Point2 q, double scale) {
    for (int it = 0; it < 12; ++it) {
        double l = jacobian(s, q, role);
        if (std::fabs(l) < 1e-13 * scale) break;
        Point2 g = grad_lambda(s, q, role);
        double g2 = dot(g, g);
        if (g2 < 1e-30) break;
        q = q - (l / g2) * g;
    }
    return s.domain.wrap(q);
}

std::vector<SingularCurve> trace_singular_curves(const SurfaceDescriptor& s, Role role, int nu,
                                                 int nv, double refine_tol = 1e-10,
                                                 bool strict_beaks = false);

/// Point on the curve at parameter t (chord interpolation + Newton).
inline Point2 sigma_point(const SurfaceDescriptor& s, const SingularCurve& c, double t,
                          double scale = 0) {
    if (scale <= 0) scale = c.scale;
    const auto& tp = c.tp;
    std::size_t n = c.pts.size();
    double T = c.total;
    if (c.closed) {
        t = t - T * std::floor(t / T);
    } else {
        t = std::clamp(t, 0.0, tp.back());
    }
    std::size_t k = static_cast<std::size_t>(std::upper_bound(tp.begin(), tp.end(), t) -
                                             tp.begin());
    Point2 a, b;
    double ta, tb;
    if (k == 0) {
        a = b = c.pts.front();
        ta = 0;
        tb = 0;
    } else if (k >= n) {
        if (c.closed) {
            a = c.pts.back();
            b = c.pts.back() + s.domain.diff(c.pts.front(), c.pts.back());
            ta = tp.back();
            tb = T;
        } else {
            a = b = c.pts.back();
            ta = tb = tp.back();
        }
    } else {
        a = c.pts[k - 1];
        b = a + s.domain.diff(c.pts[k], c.pts[k - 1]);
        ta = tp[k - 1];
        tb = tp[k];
    }
    double w = (tb > ta) ? (t - ta) / (tb - ta) : 0.0;
    Point2 q{a.u + w * (b.u - a.u), a.v + w * (b.v - a.v)};
    return project_to_sigma(s, c.role, q, scale);
}

/// Curve velocity dq/dt by 4th-order differences of projected positions.
inline Point2 curve_velocity(const SurfaceDescriptor& s, const SingularCurve& c, double t,
                             double scale = 0) {
    if (scale <= 0) scale = c.scale;
    double T = c.total;
    double h = 1e-3 * T;
    if (!c.closed) {
        double lo = t, hi = c.tp.back() - t;
        h = std::min(h, std::max(1e-6 * T, std::min(lo, hi) / 2.5));
        if (t < 2.5 * h || c.tp.back() - t < 2.5 * h) {
            // one-sided 2nd order at the ends
            double sgn = (t < 2.5 * h) ? 1.0 : -1.0;
            Point2 p0 = sigma_point(s, c, t, scale);
            Point2 p1 = sigma_point(s, c, t + sgn * h, scale);
            Point2 p2 = sigma_point(s, c, t + 2 * sgn * h, scale);
            Point2 d1 = s.domain.diff(p1, p0), d2 = s.domain.diff(p2, p0);
            return (sgn / h) * ((2.0) * d1 + (-0.5) * d2);
        }
    }
    Point2 pm2 = sigma_point(s, c, t - 2 * h, scale);
    Point2 pm1 = sigma_point(s, c, t - h, scale);
    Point2 pp1 = sigma_point(s, c, t + h, scale);
    Point2 pp2 = sigma_point(s, c, t + 2 * h, scale);
    Point2 p0 = sigma_point(s, c, t, scale);
    Point2 dm2 = s.domain.diff(pm2, p0), dm1 = s.domain.diff(pm1, p0);
    Point2 dp1 = s.domain.diff(pp1, p0), dp2 = s.domain.diff(pp2, p0);
    return (1.0 / (12 * h)) * (dm2 + (-8.0) * dm1 + 8.0 * dp1 + (-1.0) * dp2);
}

namespace curve_detail {

/// Unit vector spanning the rank-1 image of the homomorphism, expressed
/// in the ambient fiber (deterministic sign before alignment).
inline Vec image_direction(const SurfaceDescriptor& s, Point2 q, Role role) {
    HomFrameData fr = hom_frame(s, q);
    Mat2 G = (role == Role::FirstHom) ? fr.G : *fr.G_sharp;
    // eigenvector of G G^T for the larger eigenvalue, in the (e1,e2) frame
    double a = G.a * G.a + G.b * G.b;
    double b = G.a * G.c + G.b * G.d;
    double c = G.c * G.c + G.d * G.d;
    double tr = a + c;
    double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
    double mu_large = 0.5 * (tr + disc);
    Point2 w;
    if (std::fabs(a - mu_large) < std::fabs(c - mu_large))
        w = {-b, a - mu_large};
    else
        w = {c - mu_large, -b};
    double n = norm(w);
    if (n < 1e-14 * std::sqrt(tr + 1e-300)) {
        // diagonal matrix: both residual formulas vanish, take the axis of
        // the dominant diagonal entry directly
        w = (a >= c) ? Point2{1, 0} : Point2{0, 1};
    } else {
        w = (1.0 / n) * w;
    }
    if (w.u < 0 || (w.u == 0 && w.v < 0)) w = -1.0 * w;
    return w.u * fr.e1 + w.v * fr.e2;
}

/// Positive 90-degree rotation of a unit fiber vector (the conormal of T).
inline Vec conormal_of(const SurfaceDescriptor& s, Point2 q, const Vec& T) {
    HomFrameData fr = hom_frame(s, q);
    const AmbientModel& m = s.ambient;
    double c1 = fiber_dot(m, T, fr.e1), c2 = fiber_dot(m, T, fr.e2);
    return (-c2) * fr.e1 + c1 * fr.e2;
}

/// +1 if M+ (lambda > 0) lies on the left of the oriented curve at t.
inline double side_sign(const SurfaceDescriptor& s, const SingularCurve& c, double t,
                        double scale) {
    Point2 q = sigma_point(s, c, t, scale);
    Point2 v = curve_velocity(s, c, t, scale);
    double n = norm(v);
    if (n < 1e-300) return 1;
    Point2 left{-v.v / n, v.u / n};
    double dom = std::max(s.domain.u_len(), s.domain.v_len());
    double eps = 1e-5 * dom;
    for (int it = 0; it < 12; ++it) {
        double l = jacobian(s, {q.u + eps * left.u, q.v + eps * left.v}, c.role);
        if (std::fabs(l) > 1e-10 * scale) return l > 0 ? 1.0 : -1.0;
        eps *= 2;
    }
    return 1;
}

}  // namespace curve_detail

/// Integration density kappa * |phi(gamma-dot)| of the singular-curvature
/// measure, evaluated through the rotation rate of the image direction in
/// the bundle connection. Finite at A3 markers and on uniformly
/// degenerate circles.
inline double curve_density(const SurfaceDescriptor& s, const SingularCurve& c, double t,
                            double scale = 0) {
    if (scale <= 0) scale = c.scale;
    double T = c.total;
    double h = 1e-3 * T;
    // keep the difference stencil away from A3 markers and open ends
    for (const auto& m : c.markers) {
        double d = c.closed ? std::fabs(std::remainder(t - m.t, T)) : std::fabs(t - m.t);
        if (d > 1e-12) h = std::min(h, d / 2.5);
    }
    if (!c.closed) {
        double d = std::min(t, c.tp.back() - t);
        if (d > 1e-12) h = std::min(h, d / 2.5);
    }
    h = std::max(h, 1e-9 * T);

    Point2 q0 = sigma_point(s, c, t, scale);
    Vec Tc = curve_detail::image_direction(s, q0, c.role);
    auto aligned = [&](double tt) {
        Vec w = curve_detail::image_direction(s, sigma_point(s, c, tt, scale), c.role);
        return (fiber_dot(s.ambient, w, Tc) < 0) ? -1.0 * w : w;
    };
    Vec dT = (1.0 / (12 * h)) *
             (aligned(t - 2 * h) - 8.0 * aligned(t - h) + 8.0 * aligned(t + h) -
              aligned(t + 2 * h));
    FrontJet j = eval_jet(s, q0);
    Vec pdT = fiber_project(s.ambient, j, dT);
    Vec n = curve_detail::conormal_of(s, q0, Tc);
    double sigma = curve_detail::side_sign(s, c, t, scale);
    return sigma * fiber_dot(s.ambient, pdT, n);
}

/// |phi(gamma-dot)| at parameter t.
inline double curve_speed(const SurfaceDescriptor& s, const SingularCurve& c, double t,
                          double scale = 0) {
    if (scale <= 0) scale = c.scale;
    Point2 q = sigma_point(s, c, t, scale);
    Point2 v = curve_velocity(s, c, t, scale);
    FrontJet j = eval_jet(s, q);
    HomJet hj = hom_jet(j, c.role);
    Vec img = v.u * hj.h_u + v.v * hj.h_v;
    return std::sqrt(fiber_dot(s.ambient, img, img));
}

/// Singular curvature at an A2 curve point; nullopt when the point is too
/// close to an A3 marker (phi(gamma-dot) below tolerance => kappa diverges).
inline std::optional<double> singular_curvature(const SurfaceDescriptor& s, const SingularCurve& c,
                                                double t, double scale = 0) {
    if (scale <= 0) scale = c.scale;
    double sp = curve_speed(s, c, t, scale);
    Point2 v = curve_velocity(s, c, t, scale);
    if (sp < 1e-6 * norm(v) * std::sqrt(scale) || sp < 1e-12) return std::nullopt;
    return curve_density(s, c, t, scale) / sp;
}

}  // namespace frontlab

#include "frontlab/singular_trace.hpp"
