#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/bundle.hpp"
#include "frontlab/errors.hpp"
#include "frontlab/region.hpp"
#include "frontlab/singular.hpp"
#include "frontlab/surface.hpp"

namespace frontlab {

inline constexpr double kGBAbsTol = 1e-3 * 2 * M_PI;
inline constexpr double kGBRelTol = 1e-3;
inline constexpr double kBoundedLogLimit = 50.0;

struct GaussBonnetReport {
    std::string surface;
    std::map<std::string, double> params;
    Role role = Role::FirstHom;
    std::string formula;
    double lhs = 0, rhs = 0, residual = 0, tolerance = 0;
    bool pass = false;
    std::map<std::string, double> terms;
};

struct TheoremReport {
    std::string surface;
    std::map<std::string, double> params;
    std::string theorem;
    double lhs = 0, rhs = 0, residual = 0, tolerance = 0;
    bool pass = false;
    bool exact = false;  // both sides integer-valued
    std::map<std::string, double> terms;
    std::string note;
};

/// Density of K dA-hat in chart coordinates: K * lambda = c * lambda +
/// det II / lambda.  Smooth across the singular set for fronts.
inline double k_dahat_density(const SurfaceDescriptor& s, Point2 q) {
    CurvatureSample cs = curvature_sample(s, q);
    double l = cs.lambda;
    if (std::fabs(l) < 1e-200) return k_dahat_density(s, {q.u + 1e-9, q.v + 1e-9});
    return s.ambient.curvature() * l + cs.II.det() / l;
}

/// Density of K# dA-hat# : equals lambda# when c = 0 (K# = 1), and the
/// K dA-hat density otherwise (K# lambda# = K lambda).
inline double k_sharp_dahat_density(const SurfaceDescriptor& s, Point2 q) {
    if (s.ambient.curvature() == 0.0) return jacobian(s, q, Role::SecondHom);
    return k_dahat_density(s, q);
}

struct RoleAnalysis {
    Role role = Role::FirstHom;
    std::vector<SingularCurve> curves;
    RegionSummary regions;
    int s_plus = 0, s_minus = 0;
    bool all_closed = true;
    bool all_a2a3 = true;
    int n_degenerate_circles = 0;
};

inline RoleAnalysis analyze_role(const SurfaceDescriptor& s, Role role, int nu = 256,
                                 int nv = 256, double refine_tol = 1e-10,
                                 bool strict_beaks = false) {
    RoleAnalysis a;
    a.role = role;
    a.curves = trace_singular_curves(s, role, nu, nv, refine_tol, strict_beaks);
    a.regions = decompose_regions(s, role, nu, nv);
    for (const auto& c : a.curves) {
        if (!c.closed) a.all_closed = false;
        if (c.degenerate) ++a.n_degenerate_circles;
        for (const auto& m : c.markers) {
            if (m.cls != SingClass::A3) a.all_a2a3 = false;
            if (m.sign > 0) ++a.s_plus;
            else ++a.s_minus;
        }
    }
    return a;
}

inline void require_a2a3(const RoleAnalysis& a, const char* what) {
    if (!a.all_closed)
        throw HypothesisError(std::string(what) + ": a singular curve meets the boundary");
    if (!a.all_a2a3)
        throw HypothesisError(std::string(what) +
                              ": singular set is not A2/A3 only (lips/beaks/butterfly or worse)");
}

inline double total_curve_density(const SurfaceDescriptor& s, const RoleAnalysis& a,
                                  int subdiv = 64) {
    KahanSum sum;
    for (const auto& c : a.curves) sum.add(integrate_curve_density(s, c, subdiv));
    return sum.value();
}

/// One of the four Gauss-Bonnet formulas (1p/1m for the first
/// homomorphism, 2p/2m for the second).
inline GaussBonnetReport gb_formula(const SurfaceDescriptor& s, Role role,
                                    const std::string& which, int nu = 256, int nv = 256,
                                    int quad = 128) {
    if (which != "1p" && which != "1m" && which != "2p" && which != "2m")
        throw UsageError("unknown formula id: " + which);
    Role need = (which[0] == '1') ? Role::FirstHom : Role::SecondHom;
    if (role != need) throw UsageError("formula " + which + " applies to the other homomorphism");
    if (s.mode == SurfaceMode::Map)
        throw HypothesisError("Gauss-Bonnet formulas require a front; use the map-mode checks");
    if (!s.domain.closed()) throw HypothesisError("Gauss-Bonnet formulas require a closed domain");

    RoleAnalysis a = analyze_role(s, role, nu, nv);
    require_a2a3(a, "gauss-bonnet");

    auto dens = [&](Point2 q) {
        return role == Role::FirstHom ? k_dahat_density(s, q) : k_sharp_dahat_density(s, q);
    };

    GaussBonnetReport r;
    r.surface = s.name;
    r.params = s.params;
    r.role = role;
    r.formula = which;
    r.terms["chi_plus"] = a.regions.chi_plus;
    r.terms["chi_minus"] = a.regions.chi_minus;
    r.terms["S_plus"] = a.s_plus;
    r.terms["S_minus"] = a.s_minus;

    if (which[1] == 'p') {
        r.lhs = integrate_smooth(s, dens, quad, quad);
        r.rhs = 2 * M_PI *
                ((a.regions.chi_plus - a.regions.chi_minus) + (a.s_plus - a.s_minus));
        r.terms["int_K_dAhat"] = r.lhs;
    } else {
        double ip = integrate_indicator(s, role, dens, +1, quad, quad);
        double im = integrate_indicator(s, role, dens, -1, quad, quad);
        double int_K_dA = ip - im;
        double kappa = total_curve_density(s, a);
        r.lhs = 2 * M_PI * s.domain.euler_characteristic();
        r.rhs = int_K_dA + 2 * kappa;
        r.terms["int_K_dA"] = int_K_dA;
        r.terms["int_kappa_dtau"] = kappa;
    }
    r.residual = std::fabs(r.lhs - r.rhs);
    r.tolerance = std::max(kGBAbsTol, kGBRelTol * std::max(std::fabs(r.lhs), std::fabs(r.rhs)));
    r.pass = r.residual <= r.tolerance;
    return r;
}

struct FieldStats {
    double min_abs_lambda = 1e300;
    double min_lambda = 1e300;
    double min_abs_lambda_sharp = 1e300;
    double max_abs_log_kext = 0;
    double min_kext = 1e300, max_kext = -1e300;
    double min_K = 1e300, max_K = -1e300;
};

inline FieldStats sample_field_stats(const SurfaceDescriptor& s, int n = 64) {
    FieldStats st;
    const ParamDomain& d = s.domain;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Point2 q{d.u_min + (i + 0.437) * d.u_len() / n, d.v_min + (j + 0.391) * d.v_len() / n};
            CurvatureSample cs = curvature_sample(s, q);
            st.min_abs_lambda = std::min(st.min_abs_lambda, std::fabs(cs.lambda));
            st.min_lambda = std::min(st.min_lambda, cs.lambda);
            st.min_abs_lambda_sharp = std::min(st.min_abs_lambda_sharp, std::fabs(cs.lambda_sharp));
            if (cs.K_ext) {
                st.min_kext = std::min(st.min_kext, *cs.K_ext);
                st.max_kext = std::max(st.max_kext, *cs.K_ext);
                if (*cs.K_ext != 0)
                    st.max_abs_log_kext =
                        std::max(st.max_abs_log_kext, std::fabs(std::log(std::fabs(*cs.K_ext))));
            }
            if (cs.K) {
                st.min_K = std::min(st.min_K, *cs.K);
                st.max_K = std::max(st.max_K, *cs.K);
            }
        }
    }
    return st;
}

/// Extreme singular curvature over all A2 samples of the traced curves of
/// one role.  Samples near markers where kappa diverges are skipped.
inline std::pair<double, double> kappa_extrema(const SurfaceDescriptor& s, const RoleAnalysis& a,
                                               int samples_per_curve = 48) {
    double mn = 1e300, mx = -1e300;
    for (const auto& c : a.curves) {
        double span = c.closed ? c.total : c.tp.back();
        for (int k = 0; k < samples_per_curve; ++k) {
            double t = c.closed ? span * (k + 0.5) / samples_per_curve
                                : span * (k + 0.5) / samples_per_curve;
            bool near_marker = false;
            for (const auto& m : c.markers)
                if (std::fabs(std::remainder(t - m.t, c.total)) < 0.02 * span) near_marker = true;
            if (near_marker) continue;
            std::optional<double> kap = singular_curvature(s, c, t);
            if (!kap) {
                // Degenerate sample: the arc-length speed vanishes and kappa
                // blows up, but its sign is still that of the density.  Clamp
                // the speed so the extremum keeps the correct sign.
                double sp = curve_speed(s, c, t, c.scale);
                double floor = 1e-6 * norm(curve_velocity(s, c, t, c.scale)) * std::sqrt(c.scale);
                kap = curve_density(s, c, t, c.scale) / std::max(sp, std::max(floor, 1e-12));
            }
            mn = std::min(mn, *kap);
            mx = std::max(mx, *kap);
        }
    }
    if (mn > mx) throw HypothesisError("no A2 samples available for kappa extrema");
    return {mn, mx};
}

/// Signed count of preimages of a regular value of a map-mode surface.
inline int mapping_degree(const SurfaceDescriptor& s, const Vec& value, int seeds = 64) {
    if (s.mode != SurfaceMode::Map) throw UsageError("mapping degree requires map mode");
    if (s.ambient.kind == AmbientKind::PlaneTarget2) return 0;  // non-closed target
    if (!s.domain.closed()) throw HypothesisError("mapping degree requires a closed domain");
    Vec y = normalized(value);
    // tangent basis at y
    Vec seed = std::fabs(y[0]) < 0.8 ? Vec{1, 0, 0} : Vec{0, 1, 0};
    Vec a = normalized(seed - dot(seed, y) * y);
    Vec b = cross3(y, a);

    const ParamDomain& d = s.domain;
    double dom = std::max(d.u_len(), d.v_len());
    double scale = lambda_scale(s, Role::FirstHom);
    std::vector<Point2> roots;
    int degree = 0;
    for (int i = 0; i < seeds; ++i) {
        for (int j = 0; j < seeds; ++j) {
            Point2 q{d.u_min + (i + 0.5) * d.u_len() / seeds,
                     d.v_min + (j + 0.5) * d.v_len() / seeds};
            bool ok = false;
            for (int it = 0; it < 40; ++it) {
                FrontJet jet = eval_jet(s, q);
                double fa = dot(jet.f.p, a), fb = dot(jet.f.p, b);
                if (std::sqrt(fa * fa + fb * fb) < 1e-12 && dot(jet.f.p, y) > 0) {
                    ok = true;
                    break;
                }
                double j11 = dot(jet.f.p_u, a), j12 = dot(jet.f.p_v, a);
                double j21 = dot(jet.f.p_u, b), j22 = dot(jet.f.p_v, b);
                double det = j11 * j22 - j12 * j21;
                if (std::fabs(det) < 1e-14) break;
                Point2 step{(j22 * fa - j12 * fb) / det, (-j21 * fa + j11 * fb) / det};
                if (norm(step) > 0.2 * dom) step = (0.2 * dom / norm(step)) * step;
                q = d.wrap(q - step);
                if (!d.contains(q)) break;
            }
            if (!ok) continue;
            bool dup = false;
            for (const Point2& r : roots)
                if (norm(d.diff(q, r)) < 1e-6 * dom) dup = true;
            if (dup) continue;
            roots.push_back(q);
            double lam = jacobian(s, q, Role::FirstHom);
            Point2 g = grad_lambda(s, q, Role::FirstHom);
            double dist = std::fabs(lam) / std::max(norm(g), 1e-12 * scale / dom);
            if (dist < 1e-3 * dom)
                throw HypothesisError("requested value is too close to the fold image");
            degree += lam > 0 ? 1 : -1;
        }
    }
    return degree;
}

/// Quine's formula deg(f) chi(N) = chi(M+) - chi(M-) + S+ - S- for
/// sphere-target maps; the degree is cross-checked at three values.
inline TheoremReport quine_check(const SurfaceDescriptor& s, int nu = 256, int nv = 256) {
    if (s.mode != SurfaceMode::Map || s.ambient.kind != AmbientKind::SphereTarget2)
        throw HypothesisError("Quine's formula requires a sphere-target map");
    if (!s.domain.closed()) throw HypothesisError("Quine's formula requires a closed domain");

    const Vec candidates[] = {
        normalized(Vec{0.31, 0.48, 0.82}),  normalized(Vec{-0.52, 0.70, 0.49}),
        normalized(Vec{0.77, -0.33, 0.55}), normalized(Vec{-0.12, -0.86, 0.50}),
        normalized(Vec{0.64, 0.21, -0.74}), normalized(Vec{-0.44, -0.35, -0.83}),
        normalized(Vec{0.95, 0.05, 0.31}),  normalized(Vec{0.18, 0.93, -0.32}),
    };
    std::vector<int> degs;
    for (const Vec& y : candidates) {
        if (degs.size() == 3) break;
        try {
            degs.push_back(mapping_degree(s, y));
        } catch (const HypothesisError&) {
            continue;  // fold image hit; try the next value
        }
    }
    if (degs.size() < 3) throw AccuracyError("could not find three regular values");
    if (degs[0] != degs[1] || degs[1] != degs[2])
        throw AccuracyError("mapping degree disagrees across regular values");

    RoleAnalysis a = analyze_role(s, Role::FirstHom, nu, nv);
    require_a2a3(a, "quine");

    TheoremReport r;
    r.surface = s.name;
    r.params = s.params;
    r.theorem = "quine";
    r.exact = true;
    r.lhs = degs[0] * 2;  // chi(S^2) = 2
    r.rhs = (a.regions.chi_plus - a.regions.chi_minus) + (a.s_plus - a.s_minus);
    r.terms["deg"] = degs[0];
    r.terms["chi_plus"] = a.regions.chi_plus;
    r.terms["chi_minus"] = a.regions.chi_minus;
    r.terms["S_plus"] = a.s_plus;
    r.terms["S_minus"] = a.s_minus;
    r.residual = std::fabs(r.lhs - r.rhs);
    r.tolerance = 0.5;
    r.pass = r.residual <= r.tolerance;
    return r;
}

/// 2 pi chi(M) = int (Ktilde o f) |f* dA_g| + 2 int kappa dtau for maps
/// between 2-manifolds.
inline TheoremReport prop_id_check(const SurfaceDescriptor& s, int nu = 256, int nv = 256,
                                   int quad = 128) {
    if (s.mode != SurfaceMode::Map) throw HypothesisError("this identity requires a map");
    if (!s.domain.closed()) throw HypothesisError("this identity requires a closed domain");
    RoleAnalysis a = analyze_role(s, Role::FirstHom, nu, nv);
    require_a2a3(a, "map identity");

    double ktilde = s.ambient.kind == AmbientKind::SphereTarget2 ? 1.0 : 0.0;
    double area = 0;
    if (ktilde != 0) {
        auto dens = [&](Point2 q) { return ktilde * jacobian(s, q, Role::FirstHom); };
        area = integrate_indicator(s, Role::FirstHom, dens, +1, quad, quad) -
               integrate_indicator(s, Role::FirstHom, dens, -1, quad, quad);
    }
    double kappa = total_curve_density(s, a);

    TheoremReport r;
    r.surface = s.name;
    r.params = s.params;
    r.theorem = "id";
    r.lhs = 2 * M_PI * s.domain.euler_characteristic();
    r.rhs = area + 2 * kappa;
    r.terms["int_pullback_curvature"] = area;
    r.terms["int_kappa_dtau"] = kappa;
    r.residual = std::fabs(r.lhs - r.rhs);
    r.tolerance = std::max(kGBAbsTol, kGBRelTol * std::max(std::fabs(r.lhs), std::fabs(r.rhs)));
    r.pass = r.residual <= r.tolerance;
    return r;
}

/// Rotation index of a sampled closed plane curve with cusps: unwrapped
/// angle of the tangent LINE (mod pi), snapped to a half-integer.
inline double rotation_index(const std::vector<Vec>& image_pts) {
    if (image_pts.size() < 8) throw UsageError("rotation index needs at least 8 samples");
    double scale = 0;
    for (const Vec& p : image_pts) scale = std::max(scale, norm(p));
    std::vector<double> angles;
    std::size_t n = image_pts.size();
    for (std::size_t k = 0; k < n; ++k) {
        Vec d = image_pts[(k + 1) % n] - image_pts[k];
        double len = std::hypot(d[0], d[1]);
        if (len < 1e-9 * (scale + 1)) continue;  // chord through a cusp
        angles.push_back(std::atan2(d[1], d[0]));
    }
    if (angles.size() < 8) throw AccuracyError("too few usable chords for the rotation index");
    double total = 0;
    for (std::size_t k = 0; k < angles.size(); ++k) {
        double da = angles[(k + 1) % angles.size()] - angles[k];
        total += std::remainder(da, M_PI);  // tangent line: angles modulo pi
    }
    double idx = total / (2 * M_PI);
    double snapped = std::round(idx * 2) / 2;
    if (std::fabs(idx - snapped) > 0.05)
        throw AccuracyError("rotation index did not snap to a half-integer");
    return snapped;
}

/// Rotation index of the image of one traced singular curve, oriented so
/// that the image of the map lies on its left.
inline double image_rotation_index(const SurfaceDescriptor& s, const SingularCurve& c,
                                   int samples = 2048) {
    if (!c.closed) throw HypothesisError("rotation index requires a closed singular curve");
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        Point2 q = sigma_point(s, c, c.total * k / samples);
        pts.push_back(eval_jet(s, q).f.p);
    }
    double raw = rotation_index(pts);

    // image-on-the-left test at one A2 sample: fold images cover the side
    // of the image normal the nearby regular values map to
    double t0 = 0.25 * c.total;
    Point2 q0 = sigma_point(s, c, t0);
    Point2 vel = curve_velocity(s, c, t0);
    FrontJet j0 = eval_jet(s, q0);
    HomJet hj = hom_jet(j0, Role::FirstHom);
    Vec tim = vel.u * hj.h_u + vel.v * hj.h_v;
    Point2 eta = null_direction(s, q0, c.role);
    double dom = std::max(s.domain.u_len(), s.domain.v_len());
    double eps = 1e-3 * dom;
    Vec w = eval_jet(s, s.domain.wrap({q0.u + eps * eta.u, q0.v + eps * eta.v})).f.p - j0.f.p;
    double side = tim[0] * w[1] - tim[1] * w[0];
    return side >= 0 ? raw : -raw;
}

TheoremReport verify_theorem(const SurfaceDescriptor& s, const std::string& id, int nu = 256,
                             int nv = 256, int quad = 128);

}  // namespace frontlab

#include "frontlab/theorems.hpp"
