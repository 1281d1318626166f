#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "frontlab/domain.hpp"
#include "frontlab/taylor.hpp"
#include "frontlab/vec.hpp"

namespace frontlab {

enum class SurfaceMode { Immersion, Front, Map };

inline const char* mode_name(SurfaceMode m) {
    switch (m) {
        case SurfaceMode::Immersion: return "immersion";
        case SurfaceMode::Front: return "front";
        case SurfaceMode::Map: return "map";
    }
    return "?";
}

/// 2-jet of an ambient-space map at one domain point.
struct Jet2 {
    Vec p, p_u, p_v, p_uu, p_uv, p_vv;
};

/// Full evaluation record: the map jet and, in front/immersion mode, the
/// unit-normal jet.  Map mode leaves nu zeroed.
struct FrontJet {
    Jet2 f;
    Jet2 nu;
};

/// Vector of Taylor scalars; the jet-level analog of Vec.
template <int N>
struct TVec {
    std::array<TaylorScalar<N>, 4> c;
    int n = 3;

    TVec() = default;
    TVec(TaylorScalar<N> x, TaylorScalar<N> y) : c{x, y, {}, {}}, n(2) {}
    TVec(TaylorScalar<N> x, TaylorScalar<N> y, TaylorScalar<N> z) : c{x, y, z, {}}, n(3) {}
    TVec(TaylorScalar<N> x, TaylorScalar<N> y, TaylorScalar<N> z, TaylorScalar<N> w)
        : c{x, y, z, w}, n(4) {}

    TaylorScalar<N>& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    const TaylorScalar<N>& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
};

template <int N>
TVec<N> operator+(const TVec<N>& a, const TVec<N>& b) {
    TVec<N> r;
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}
template <int N>
TVec<N> operator-(const TVec<N>& a, const TVec<N>& b) {
    TVec<N> r;
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}
template <int N>
TVec<N> operator*(const TaylorScalar<N>& s, const TVec<N>& a) {
    TVec<N> r;
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) r.c[i] = s * a.c[i];
    return r;
}
template <int N>
TaylorScalar<N> dot(const TVec<N>& a, const TVec<N>& b) {
    TaylorScalar<N> s(0.0);
    for (int i = 0; i < a.n; ++i) s = s + a.c[i] * b.c[i];
    return s;
}
template <int N>
TVec<N> cross3(const TVec<N>& a, const TVec<N>& b) {
    return TVec<N>(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                   a[0] * b[1] - a[1] * b[0]);
}
template <int N>
TVec<N> normalized(const TVec<N>& a) {
    TaylorScalar<N> inv = recip(sqrt(dot(a, a)));
    return inv * a;
}

/// Collapse a second-order Taylor vector at (u0, v0) into a Jet2.
inline Jet2 to_jet2(const TVec<2>& f) {
    Jet2 j;
    j.p = j.p_u = j.p_v = j.p_uu = j.p_uv = j.p_vv = Vec::zero(f.n);
    for (int i = 0; i < f.n; ++i) {
        j.p[i] = f[i].v;
        j.p_u[i] = f[i].du;
        j.p_v[i] = f[i].dv;
        j.p_uu[i] = f[i].duu;
        j.p_uv[i] = f[i].duv;
        j.p_vv[i] = f[i].dvv;
    }
    return j;
}

inline TVec<2> truncate(const TVec<3>& f) {
    TVec<2> r;
    r.n = f.n;
    for (int i = 0; i < f.n; ++i) r.c[i] = truncate(f.c[i]);
    return r;
}
inline TVec<2> d_du(const TVec<3>& f) {
    TVec<2> r;
    r.n = f.n;
    for (int i = 0; i < f.n; ++i) r.c[i] = d_du(f.c[i]);
    return r;
}
inline TVec<2> d_dv(const TVec<3>& f) {
    TVec<2> r;
    r.n = f.n;
    for (int i = 0; i < f.n; ++i) r.c[i] = d_dv(f.c[i]);
    return r;
}

struct SurfaceDescriptor {
    std::string name;
    std::map<std::string, double> params;
    SurfaceMode mode = SurfaceMode::Front;
    AmbientModel ambient;
    ParamDomain domain;
    std::string doc;

    /// Analytic 2-jet at an (already wrapped) domain point.
    std::function<FrontJet(double, double)> jet_fn;

    FrontJet jet(Point2 q) const {
        Point2 w = domain.wrap(q);
        if (!domain.contains(w)) throw std::domain_error("point outside parameter domain");
        return jet_fn(w.u, w.v);
    }
};

/// Evaluate the analytic 2-jet of f (and nu where present).
inline FrontJet eval_jet(const SurfaceDescriptor& s, Point2 q) { return s.jet(q); }

/// Independent oracle: 4th-order central finite differences of f alone.
inline Jet2 finite_difference_jet(const SurfaceDescriptor& s, Point2 q, double h) {
    if (h < 1e-8) throw std::invalid_argument("finite-difference step below 1e-8");
    auto f = [&](double du, double dv) { return s.jet({q.u + du, q.v + dv}).f.p; };
    auto d1 = [&](auto&& g) {
        return (g(-2.0) - 8.0 * g(-1.0) + 8.0 * g(1.0) - g(2.0)) / (12.0 * h);
    };
    auto d2 = [&](auto&& g) {
        return (-g(-2.0) + 16.0 * g(-1.0) - 30.0 * g(0.0) + 16.0 * g(1.0) - g(2.0)) /
               (12.0 * h * h);
    };
    Jet2 j;
    j.p = f(0, 0);
    j.p_u = d1([&](double k) { return f(k * h, 0); });
    j.p_v = d1([&](double k) { return f(0, k * h); });
    j.p_uu = d2([&](double k) { return f(k * h, 0); });
    j.p_vv = d2([&](double k) { return f(0, k * h); });
    // mixed partial: 4th-order cross stencil as d/du of d/dv
    j.p_uv = d1([&](double k) {
        return d1([&](double m) { return f(k * h, m * h); });
    });
    return j;
}

/// Projection onto the fiber E_p: removes the nu-component and, in the
/// curved extrinsic models, the position component.
inline Vec fiber_project(const AmbientModel& model, const FrontJet& jet, Vec X) {
    switch (model.kind) {
        case AmbientKind::Euclidean3:
        case AmbientKind::FlatQuotient3:
            return X - dot(X, jet.nu.p) * jet.nu.p;
        case AmbientKind::Sphere3:
            X -= dot(X, jet.f.p) * jet.f.p;
            return X - dot(X, jet.nu.p) * jet.nu.p;
        case AmbientKind::Hyperbolic3:
            // Lorentzian: position is timelike (<p,p> = -1), normal spacelike.
            X += dot_lorentz(X, jet.f.p) * jet.f.p;
            return X - dot_lorentz(X, jet.nu.p) * jet.nu.p;
        case AmbientKind::PlaneTarget2:
            return X;
        case AmbientKind::SphereTarget2:
            return X - dot(X, jet.f.p) * jet.f.p;
    }
    return X;
}

/// Fiber inner product (Lorentzian models use the ambient Lorentz metric,
/// which is Riemannian on the fiber).
inline double fiber_dot(const AmbientModel& model, const Vec& a, const Vec& b) {
    if (model.kind == AmbientKind::Hyperbolic3) return dot_lorentz(a, b);
    return dot(a, b);
}

/// Co-orientation form mu on the fiber: signed area of (X, Y).
inline double mu_form(const AmbientModel& model, const FrontJet& jet, const Vec& X, const Vec& Y) {
    switch (model.kind) {
        case AmbientKind::Euclidean3:
        case AmbientKind::FlatQuotient3:
            return det3(X, Y, jet.nu.p);
        case AmbientKind::Sphere3:
        case AmbientKind::Hyperbolic3:
            return det4(jet.f.p, X, Y, jet.nu.p);
        case AmbientKind::PlaneTarget2:
            return det2(X, Y);
        case AmbientKind::SphereTarget2:
            return det3(jet.f.p, X, Y);
    }
    return 0;
}

}  // namespace frontlab
