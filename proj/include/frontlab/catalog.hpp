#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "frontlab/errors.hpp"
#include "frontlab/surface.hpp"

namespace frontlab {
namespace catalog {

struct ParamSpec {
    std::string key;
    double def;
    double lo, hi;
};

struct EntrySummary {
    std::string name;
    SurfaceMode mode;
    AmbientKind ambient;
    bool closed;
    std::vector<ParamSpec> params;
    std::string doc;
};

namespace detail {

inline double get_param(const std::map<std::string, double>& p, const ParamSpec& spec) {
    auto it = p.find(spec.key);
    double x = (it == p.end()) ? spec.def : it->second;
    if (x < spec.lo || x > spec.hi)
        throw UsageError("parameter '" + spec.key + "' out of range [" + std::to_string(spec.lo) +
                         ", " + std::to_string(spec.hi) + "]");
    return x;
}

inline void check_keys(const std::map<std::string, double>& p, const std::vector<ParamSpec>& specs) {
    for (const auto& [k, v] : p) {
        (void)v;
        bool known = false;
        for (const auto& s : specs)
            if (s.key == k) known = true;
        if (!known) throw UsageError("unknown parameter '" + k + "'");
    }
}

/// Unit sphere chart point and the radial-graph surface r(u,v)*S(u,v),
/// order 3 so that the unit normal keeps an analytic 2-jet.
inline TVec<3> sphere_chart(const T3& u, const T3& v) {
    return TVec<3>(sin(u) * cos(v), sin(u) * sin(v), cos(u));
}

/// Derive the 2-jet of the unit normal of an immersion from its 3-jet.
inline FrontJet immersion_jet(const TVec<3>& f) {
    TVec<2> fu = d_du(f), fv = d_dv(f);
    TVec<2> nu = normalized(cross3(fu, fv));
    return {to_jet2(truncate(f)), to_jet2(nu)};
}

}  // namespace detail

/// Catalog table. Jets are closed forms evaluated through truncated Taylor
/// scalars; front entries carry an explicit smooth unit normal.
inline const std::vector<EntrySummary>& table() {
    static const std::vector<EntrySummary> t = {
        {"beaks_nf", SurfaceMode::Map, AmbientKind::PlaneTarget2, false,
         {{"reflect", 0, 0, 1}},
         "normal form (u, v^3 - u^2 v) with a beaks point at the origin"},
        {"bumpy_sphere", SurfaceMode::Immersion, AmbientKind::Euclidean3, true,
         {{"amp", 0.3, 0.0, 0.45}, {"k", 3, 1, 8}},
         "radial graph 1 + amp*sin(u)^k*cos(k v) over the unit sphere"},
        {"butterfly_nf", SurfaceMode::Map, AmbientKind::PlaneTarget2, false,
         {{"reflect", 0, 0, 1}},
         "normal form (u, v^4 + u v) with a butterfly point at the origin"},
        {"clifford_torus", SurfaceMode::Front, AmbientKind::Sphere3, true,
         {},
         "flat torus in the 3-sphere with extrinsic curvature -1"},
        {"cusp_nf", SurfaceMode::Map, AmbientKind::PlaneTarget2, false,
         {{"reflect", 0, 0, 1}},
         "normal form (u, v^3 + u v) with a cusp at the origin"},
        {"cycloid_A", SurfaceMode::Front, AmbientKind::FlatQuotient3, true,
         {},
         "rotation of a cycloid, bounded positive curvature, cuspidal-edge circles"},
        {"cycloid_B", SurfaceMode::Front, AmbientKind::FlatQuotient3, true,
         {},
         "rotation of a cycloid, bounded negative curvature, torus in R^2 x S^1"},
        {"cylinder_fold", SurfaceMode::Front, AmbientKind::FlatQuotient3, false,
         {},
         "cylinder over a cusp curve; straight cuspidal edge of zero singular curvature"},
        {"ellipsoid", SurfaceMode::Immersion, AmbientKind::Euclidean3, true,
         {{"a", 5, 0.1, 50}, {"b", 4, 0.1, 50}, {"c", 1, 0.1, 50}},
         "triaxial ellipsoid with inward unit normal"},
        {"ellipsoid-parallel", SurfaceMode::Front, AmbientKind::Euclidean3, true,
         {{"a", 5, 0.1, 50}, {"b", 4, 0.1, 50}, {"c", 1, 0.1, 50}, {"t", 5.5, -100, 100}},
         "parallel front f + t*nu of the ellipsoid"},
        {"fold_map", SurfaceMode::Map, AmbientKind::PlaneTarget2, false,
         {{"eps", 1, -1, 1}},
         "plane map (u^2 + eps*v^2, v) with a fold line u = 0"},
        {"fold_nf", SurfaceMode::Map, AmbientKind::PlaneTarget2, false,
         {{"reflect", 0, 0, 1}},
         "normal form (u, v^2) with a fold line v = 0"},
        {"lips_nf", SurfaceMode::Map, AmbientKind::PlaneTarget2, false,
         {{"reflect", 0, 0, 1}},
         "normal form (u, v^3 + u^2 v) with a lips point at the origin"},
        {"sine_rotation", SurfaceMode::Immersion, AmbientKind::Euclidean3, false,
         {},
         "rotation of the sine curve (u cos v, u sin v, cos u)"},
        {"sphere", SurfaceMode::Immersion, AmbientKind::Euclidean3, true,
         {{"r", 1, 0.01, 100}},
         "round sphere with outward unit normal"},
        {"sphere_identity", SurfaceMode::Map, AmbientKind::SphereTarget2, true,
         {},
         "identity map of the unit sphere"},
        {"sphere_projection", SurfaceMode::Map, AmbientKind::PlaneTarget2, true,
         {{"amp", 0.0, 0.0, 0.45}, {"k", 3, 1, 8}},
         "orthogonal projection of the (bumpy) sphere to the xy-plane"},
        {"torus", SurfaceMode::Immersion, AmbientKind::Euclidean3, true,
         {{"R", 2, 0.1, 100}, {"r", 1, 0.01, 100}},
         "torus of revolution with outward unit normal"},
        {"unduloid", SurfaceMode::Immersion, AmbientKind::FlatQuotient3, true,
         {{"R", 2, 1.1, 100}, {"h", 2, 0.1, 100}},
         "rotationally symmetric wavy cylinder, periodic in the axis direction"},
    };
    return t;
}

inline std::vector<EntrySummary> list() { return table(); }

inline const EntrySummary& summary(const std::string& name) {
    for (const auto& e : table())
        if (e.name == name) return e;
    throw UsageError("unknown surface '" + name + "'");
}

SurfaceDescriptor build(const std::string& name, std::map<std::string, double> params = {});

/// Gauss map of a 3-space front/immersion as a map into the unit sphere.
inline SurfaceDescriptor make_gauss_map(const SurfaceDescriptor& base) {
    if (base.mode == SurfaceMode::Map) throw UsageError("surface is already a map");
    if (base.ambient.dim() != 3)
        throw UsageError("Gauss map construction requires a 3-space ambient");
    SurfaceDescriptor g;
    g.name = base.name + "-gauss";
    g.params = base.params;
    g.mode = SurfaceMode::Map;
    g.ambient.kind = AmbientKind::SphereTarget2;
    g.domain = base.domain;
    g.doc = "unit normal of " + base.name + " as a map into the sphere";
    auto base_fn = base.jet_fn;
    g.jet_fn = [base_fn](double u, double v) {
        FrontJet b = base_fn(u, v);
        FrontJet j;
        j.f = b.nu;
        return j;
    };
    return g;
}

inline SurfaceDescriptor build(const std::string& raw_name, std::map<std::string, double> params) {
    std::string name = raw_name;
    if (name == "clifford") name = "clifford_torus";
    if (name == "ellipsoid_parallel") name = "ellipsoid-parallel";
    const std::string gauss_suffix = "-gauss";
    if (name.size() > gauss_suffix.size() &&
        name.compare(name.size() - gauss_suffix.size(), gauss_suffix.size(), gauss_suffix) == 0) {
        return make_gauss_map(build(name.substr(0, name.size() - gauss_suffix.size()), params));
    }

    const EntrySummary& e = summary(name);
    detail::check_keys(params, e.params);
    std::map<std::string, double> p;
    for (const auto& s : e.params) p[s.key] = detail::get_param(params, s);

    SurfaceDescriptor d;
    d.name = e.name;
    d.params = p;
    d.mode = e.mode;
    d.ambient.kind = e.ambient;
    d.doc = e.doc;

    auto nf_domain = [&d]() {
        d.domain = {-1, 1, -1, 1, false, false, false, false};
    };

    if (name == "fold_map") {
        d.domain = {-1, 1, -2.5, 2.5, false, false, false, false};
        double eps = p["eps"];
        d.jet_fn = [eps](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            FrontJet j;
            j.f = to_jet2(TVec<2>(u * u + eps * (v * v), v));
            return j;
        };
    } else if (name == "fold_nf" || name == "cusp_nf" || name == "butterfly_nf" ||
               name == "lips_nf" || name == "beaks_nf") {
        nf_domain();
        double s = p["reflect"] > 0.5 ? -1.0 : 1.0;
        d.jet_fn = [name, s](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            T2 second;
            if (name == "fold_nf") second = v * v;
            else if (name == "cusp_nf") second = v * v * v + u * v;
            else if (name == "butterfly_nf") second = v * v * v * v + u * v;
            else if (name == "lips_nf") second = v * v * v + u * u * v;
            else second = v * v * v - u * u * v;
            FrontJet j;
            j.f = to_jet2(TVec<2>(u, s * second));
            return j;
        };
    } else if (name == "sine_rotation") {
        d.domain = {M_PI / 4, 3 * M_PI / 4, 0, 2 * M_PI, false, true, false, false};
        d.jet_fn = [](double u0, double v0) {
            T3 u = T3::var_u(u0), v = T3::var_v(v0);
            return detail::immersion_jet(TVec<3>(u * cos(v), u * sin(v), cos(u)));
        };
    } else if (name == "cycloid_A" || name == "cycloid_B") {
        d.domain = {0, 4 * M_PI, 0, 2 * M_PI, true, true, false, false};
        double sgn = (name == "cycloid_A") ? -1.0 : 1.0;  // profile radius 2 + sgn*cos u
        d.jet_fn = [sgn](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            T2 r = 2.0 + sgn * cos(u);
            TVec<2> f(r * cos(v), r * sin(v), u - sin(u));
            T2 h = 0.5 * u;
            // smooth unit normal of the rotated cycloid; z-component sign
            // follows the profile so that <nu, f_u> = 0 for all u
            TVec<2> nu(sin(h) * cos(v), sin(h) * sin(v), sgn * cos(h));
            return FrontJet{to_jet2(f), to_jet2(nu)};
        };
    } else if (name == "torus") {
        d.domain = {-M_PI, M_PI, -M_PI, M_PI, true, true, false, false};
        double R = p["R"], r = p["r"];
        if (r >= R) throw UsageError("torus requires r < R");
        d.jet_fn = [R, r](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            T2 w = R + r * cos(u);
            TVec<2> f(w * cos(v), w * sin(v), (-r) * sin(u));
            TVec<2> nu(cos(u) * cos(v), cos(u) * sin(v), T2(0.0) - sin(u));
            return FrontJet{to_jet2(f), to_jet2(nu)};
        };
    } else if (name == "sphere") {
        d.domain = {0, M_PI, 0, 2 * M_PI, false, true, true, true};
        double r = p["r"];
        d.jet_fn = [r](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            TVec<2> nu(sin(u) * cos(v), sin(u) * sin(v), cos(u));
            TVec<2> f = T2(r) * nu;
            return FrontJet{to_jet2(f), to_jet2(nu)};
        };
    } else if (name == "ellipsoid" || name == "ellipsoid-parallel") {
        d.domain = {0, M_PI, 0, 2 * M_PI, false, true, true, true};
        double a = p["a"], b = p["b"], c = p["c"];
        double t = (name == "ellipsoid-parallel") ? p["t"] : 0.0;
        d.jet_fn = [a, b, c, t](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            // v reversed so that the inward normal makes lambda positive
            TVec<2> f(a * sin(u) * cos(v), (-b) * sin(u) * sin(v), c * cos(u));
            TVec<2> g((1.0 / a) * sin(u) * cos(v), (-1.0 / b) * sin(u) * sin(v),
                      (1.0 / c) * cos(u));
            TVec<2> nu = T2(-1.0) * normalized(g);
            if (t != 0.0) f = f + T2(t) * nu;
            return FrontJet{to_jet2(f), to_jet2(nu)};
        };
    } else if (name == "bumpy_sphere") {
        d.domain = {0, M_PI, 0, 2 * M_PI, false, true, true, true};
        double amp = p["amp"];
        int k = static_cast<int>(p["k"]);
        d.jet_fn = [amp, k](double u0, double v0) {
            T3 u = T3::var_u(u0), v = T3::var_v(v0);
            TVec<3> s = detail::sphere_chart(u, v);
            T3 rho = 1.0 + amp * powi(sin(u), k) * cos(double(k) * v);
            return detail::immersion_jet(rho * s);
        };
    } else if (name == "sphere_projection") {
        d.domain = {0, M_PI, 0, 2 * M_PI, false, true, true, true};
        double amp = p["amp"];
        int k = static_cast<int>(p["k"]);
        d.jet_fn = [amp, k](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            T2 rho = 1.0 + amp * powi(sin(u), k) * cos(double(k) * v);
            FrontJet j;
            j.f = to_jet2(TVec<2>(rho * sin(u) * cos(v), rho * sin(u) * sin(v)));
            return j;
        };
    } else if (name == "sphere_identity") {
        d.domain = {0, M_PI, 0, 2 * M_PI, false, true, true, true};
        d.jet_fn = [](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            FrontJet j;
            j.f = to_jet2(TVec<2>(sin(u) * cos(v), sin(u) * sin(v), cos(u)));
            return j;
        };
    } else if (name == "clifford_torus") {
        d.domain = {-M_PI, M_PI, -M_PI, M_PI, true, true, false, false};
        d.jet_fn = [](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            double s = 1.0 / std::sqrt(2.0);
            TVec<2> f(T2(s) * cos(u), T2(s) * sin(u), T2(s) * cos(v), T2(s) * sin(v));
            TVec<2> nu(T2(s) * cos(u), T2(s) * sin(u), T2(-s) * cos(v), T2(-s) * sin(v));
            return FrontJet{to_jet2(f), to_jet2(nu)};
        };
    } else if (name == "unduloid") {
        double R = p["R"], h = p["h"];
        d.domain = {0, 2 * M_PI, 0, 2 * M_PI, true, true, false, false};
        d.jet_fn = [R, h](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            double m = h / (2 * M_PI);
            T2 r = R + cos(u);
            TVec<2> f(r * cos(v), r * sin(v), m * u);
            T2 w = recip(sqrt(T2(m * m) + sin(u) * sin(u)));
            T2 nr = T2(-m) * w, nz = T2(0.0) - sin(u) * w;
            TVec<2> nu(nr * cos(v), nr * sin(v), nz);
            return FrontJet{to_jet2(f), to_jet2(nu)};
        };
    } else if (name == "cylinder_fold") {
        d.domain = {-1, 1, 0, 2 * M_PI, false, true, false, false};
        d.jet_fn = [](double u0, double v0) {
            T2 u = T2::var_u(u0), v = T2::var_v(v0);
            TVec<2> f(u * u, u * u * u, v);
            T2 w = recip(sqrt(T2(4.0) + 9.0 * u * u));
            TVec<2> nu(T2(-3.0) * u * w, T2(2.0) * w, T2(0.0));
            return FrontJet{to_jet2(f), to_jet2(nu)};
        };
    } else {
        throw UsageError("unknown surface '" + name + "'");
    }

    d.domain.validate();
    return d;
}

}  // namespace catalog
}  // namespace frontlab
