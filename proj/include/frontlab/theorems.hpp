#pragma once

// verify_theorem: the named results of the theory, each with its
// numerically checked hypotheses.  Included at the end of gaussbonnet.hpp.

#include <cstdio>

namespace frontlab {

namespace theorem_detail {

inline TheoremReport base_report(const SurfaceDescriptor& s, const std::string& id) {
    TheoremReport r;
    r.surface = s.name;
    r.params = s.params;
    r.theorem = id;
    return r;
}

inline void finish_numeric(TheoremReport& r) {
    r.residual = std::fabs(r.lhs - r.rhs);
    r.tolerance = std::max(kGBAbsTol, kGBRelTol * std::max(std::fabs(r.lhs), std::fabs(r.rhs)));
    r.pass = r.residual <= r.tolerance;
}

inline void finish_integer(TheoremReport& r) {
    r.exact = true;
    r.residual = std::fabs(r.lhs - r.rhs);
    r.tolerance = 0.5;
    r.pass = r.residual <= r.tolerance;
}

inline void require_front(const SurfaceDescriptor& s) {
    if (s.mode == SurfaceMode::Map) throw HypothesisError("a front or immersion is required");
    if (!s.domain.closed()) throw HypothesisError("a closed domain is required");
}

inline void require_immersion(const FieldStats& st) {
    if (!(st.min_abs_lambda > 0) || st.min_lambda <= 0)
        throw HypothesisError("hypothesis violated: not an immersion (lambda vanishes or flips)");
}

inline void require_bounded_log_kext(const FieldStats& st) {
    if (st.max_abs_log_kext >= kBoundedLogLimit)
        throw HypothesisError("hypothesis violated: log|K_ext| is not bounded");
}

}  // namespace theorem_detail

inline TheoremReport verify_theorem(const SurfaceDescriptor& s, const std::string& id, int nu,
                                    int nv, int quad) {
    using namespace theorem_detail;

    if (id == "quine") return quine_check(s, nu, nv);
    if (id == "id") return prop_id_check(s, nu, nv, quad);

    TheoremReport r = base_report(s, id);

    if (id == "a") {
        // immersion: 2 chi({K_ext < 0}) = S#+ - S#-
        require_front(s);
        FieldStats st = sample_field_stats(s);
        require_immersion(st);
        RoleAnalysis a = analyze_role(s, Role::SecondHom, nu, nv);
        require_a2a3(a, "theorem a");
        r.lhs = 2 * a.regions.chi_minus;
        r.rhs = a.s_plus - a.s_minus;
        r.terms["chi_minus_sharp"] = a.regions.chi_minus;
        r.terms["S_sharp_plus"] = a.s_plus;
        r.terms["S_sharp_minus"] = a.s_minus;
        finish_integer(r);
        return r;
    }

    if (id == "b") {
        // parallel front of a convex surface: 2 chi(M-) = S+ - S-
        require_front(s);
        if (!trace_singular_curves(s, Role::SecondHom, nu, nv).empty())
            throw HypothesisError("hypothesis violated: the normal map is not a diffeomorphism");
        RoleAnalysis a = analyze_role(s, Role::FirstHom, nu, nv);
        require_a2a3(a, "theorem b");
        r.lhs = 2 * a.regions.chi_minus;
        r.rhs = a.s_plus - a.s_minus;
        r.terms["chi_minus"] = a.regions.chi_minus;
        r.terms["S_plus"] = a.s_plus;
        r.terms["S_minus"] = a.s_minus;
        finish_integer(r);
        return r;
    }

    if (id == "c") {
        // immersion in flat ambient: int kappa# dtau# = int_{M#-} K dAhat
        //                                            = int K^- dA
        require_front(s);
        if (s.ambient.curvature() != 0)
            throw HypothesisError("this identity is stated for flat ambient spaces");
        FieldStats st = sample_field_stats(s);
        require_immersion(st);
        RoleAnalysis a = analyze_role(s, Role::SecondHom, nu, nv);
        require_a2a3(a, "theorem c");
        r.lhs = total_curve_density(s, a);
        auto dens = [&](Point2 q) { return k_dahat_density(s, q); };
        r.rhs = integrate_indicator(s, Role::SecondHom, dens, -1, quad, quad);
        r.terms["int_kappa_sharp_dtau_sharp"] = r.lhs;
        r.terms["int_K_minus_dA"] = r.rhs;
        finish_numeric(r);
        return r;
    }

    if (id == "d") {
        // front with diffeomorphic normal map:
        //   int kappa dtau = int_{M-} K# dAhat# (= int_{K_t<0} K_t dAhat_t)
        require_front(s);
        if (!trace_singular_curves(s, Role::SecondHom, nu, nv).empty())
            throw HypothesisError("hypothesis violated: the normal map is not a diffeomorphism");
        RoleAnalysis a = analyze_role(s, Role::FirstHom, nu, nv);
        require_a2a3(a, "theorem d");
        r.lhs = total_curve_density(s, a);
        auto dens = [&](Point2 q) { return k_sharp_dahat_density(s, q); };
        r.rhs = integrate_indicator(s, Role::FirstHom, dens, -1, quad, quad);
        r.terms["int_kappa_dtau"] = r.lhs;
        r.terms["int_K_sharp_dAhat_sharp_over_M_minus"] = r.rhs;
        finish_numeric(r);
        return r;
    }

    if (id == "e") {
        // bounded log|K_ext|: S+ - S- = sgn(K_ext)(S#+ - S#-)
        require_front(s);
        FieldStats st = sample_field_stats(s);
        require_bounded_log_kext(st);
        if (st.min_kext < 0 && st.max_kext > 0)
            throw HypothesisError("hypothesis violated: K_ext changes sign");
        double sgn = st.max_kext < 0 ? -1.0 : 1.0;
        RoleAnalysis af = analyze_role(s, Role::FirstHom, nu, nv);
        RoleAnalysis as = analyze_role(s, Role::SecondHom, nu, nv);
        require_a2a3(af, "theorem e");
        require_a2a3(as, "theorem e");
        r.lhs = af.s_plus - af.s_minus;
        r.rhs = sgn * (as.s_plus - as.s_minus);
        r.terms["S_plus"] = af.s_plus;
        r.terms["S_minus"] = af.s_minus;
        r.terms["S_sharp_plus"] = as.s_plus;
        r.terms["S_sharp_minus"] = as.s_minus;
        r.terms["sgn_K_ext"] = sgn;
        finish_integer(r);
        return r;
    }

    if (id == "g") {
        // K_ext < 0 with bounded log: chi(M) = 0
        require_front(s);
        FieldStats st = sample_field_stats(s);
        require_bounded_log_kext(st);
        if (!(st.max_kext < 0))
            throw HypothesisError("hypothesis violated: K_ext is not negative everywhere");
        r.lhs = s.domain.euler_characteristic();
        r.rhs = 0;
        r.terms["max_K_ext"] = st.max_kext;
        r.terms["max_abs_log_K_ext"] = st.max_abs_log_kext;
        finish_integer(r);
        return r;
    }

    if (id == "add") {
        // K > 0 with bounded log|K|: kappa# < 0 at every Gauss-map A2 point
        require_front(s);
        if (s.ambient.curvature() != 0)
            throw HypothesisError("this statement is for fronts in flat ambient spaces");
        FieldStats st = sample_field_stats(s);
        if (!(st.min_K > 0)) throw HypothesisError("hypothesis violated: K is not positive");
        require_bounded_log_kext(st);
        RoleAnalysis a = analyze_role(s, Role::SecondHom, nu, nv);
        auto [mn, mx] = kappa_extrema(s, a);
        r.lhs = mx;  // extremal value found; must stay below zero
        r.rhs = 0;
        r.terms["max_kappa_sharp"] = mx;
        r.terms["min_kappa_sharp"] = mn;
        r.pass = mx < 0;
        r.residual = std::max(0.0, mx);
        r.tolerance = 0;
        r.note = "inequality: every Gauss-map A2 sample has negative singular curvature";
        return r;
    }

    if (id == "c1" || id == "d1") {
        // existence of a fold point with negative singular curvature
        require_front(s);
        FieldStats st = sample_field_stats(s);
        Role role;
        if (id == "c1") {
            require_immersion(st);
            role = Role::SecondHom;
        } else {
            if (!trace_singular_curves(s, Role::SecondHom, nu, nv).empty())
                throw HypothesisError(
                    "hypothesis violated: the normal map is not a diffeomorphism");
            role = Role::FirstHom;
        }
        if (!(st.min_K < 0))
            throw HypothesisError("hypothesis violated: no point of negative curvature");
        RoleAnalysis a = analyze_role(s, role, nu, nv);
        auto [mn, mx] = kappa_extrema(s, a);
        r.lhs = mn;
        r.rhs = 0;
        r.terms["min_kappa"] = mn;
        r.terms["max_kappa"] = mx;
        r.pass = mn < 0;
        r.residual = std::max(0.0, mn);
        r.tolerance = 0;
        r.note = "inequality: some fold point has negative singular curvature";
        return r;
    }

    if (id == "levine") {
        // plane-target map: chi(M)/2 = sum of rotation indices of the
        // fold images, oriented with the image on the left
        if (s.mode != SurfaceMode::Map || s.ambient.kind != AmbientKind::PlaneTarget2)
            throw HypothesisError("this identity requires a plane-target map");
        if (!s.domain.closed()) throw HypothesisError("a closed domain is required");
        RoleAnalysis a = analyze_role(s, Role::FirstHom, nu, nv);
        require_a2a3(a, "levine");
        double sum = 0;
        int idx = 0;
        for (const auto& c : a.curves) {
            double ind = image_rotation_index(s, c);
            char key[32];
            std::snprintf(key, sizeof key, "I_%d", ++idx);
            r.terms[key] = ind;
            sum += ind;
        }
        r.lhs = s.domain.euler_characteristic() / 2.0;
        r.rhs = sum;
        r.terms["n_curves"] = idx;
        finish_integer(r);
        r.tolerance = 0.01;
        r.pass = r.residual <= r.tolerance;
        return r;
    }

    if (id == "infty") {
        // kappa diverges to -infinity toward A3 points while the density
        // kappa |phi(gamma-dot)| stays bounded
        require_front(s);
        RoleAnalysis a = analyze_role(s, Role::FirstHom, nu, nv);
        require_a2a3(a, "theorem infty");
        int n_markers = 0;
        bool ok = true;
        double worst_ratio = 1e300;
        for (const auto& c : a.curves) {
            for (const auto& m : c.markers) {
                ++n_markers;
                for (double dir : {-1.0, 1.0}) {
                    double d0 = std::min(0.1, 0.05 * c.total);
                    double prev = 0;
                    for (int k = 0; k <= 5; ++k) {
                        double t = m.t + dir * d0 / (1 << k);
                        std::optional<double> kap = singular_curvature(s, c, t);
                        if (!kap || !(*kap < 0)) {
                            ok = false;
                            break;
                        }
                        if (k > 0) {
                            double ratio = std::fabs(*kap) / std::fabs(prev);
                            worst_ratio = std::min(worst_ratio, ratio);
                            if (ratio < 1.5) ok = false;
                        }
                        prev = *kap;
                    }
                }
            }
        }
        if (n_markers == 0) throw HypothesisError("no A3 points on the singular set");
        r.lhs = worst_ratio;
        r.rhs = 1.5;
        r.terms["n_A3"] = n_markers;
        r.terms["worst_halving_ratio"] = worst_ratio;
        r.pass = ok;
        r.residual = ok ? 0 : 1;
        r.tolerance = 0;
        r.note = "kappa -> -inf toward A3 points (|kappa| at least x1.5 per halving)";
        return r;
    }

    throw UsageError("unknown theorem id: " + id);
}

}  // namespace frontlab
