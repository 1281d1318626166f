#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "frontlab/errors.hpp"
#include "frontlab/surface.hpp"

namespace frontlab {

enum class Role { FirstHom, SecondHom };

inline const char* role_name(Role r) { return r == Role::FirstHom ? "phi" : "psi"; }

inline void check_role(const SurfaceDescriptor& s, Role role) {
    if (role == Role::SecondHom && s.mode == SurfaceMode::Map)
        throw UsageError("second homomorphism is undefined in map mode");
}

/// Images of the coordinate fields under the chosen homomorphism, plus
/// their u/v-derivatives (ambient, not yet projected).
struct HomJet {
    Vec h_u, h_v;        // phi(d_u), phi(d_v) (already fiber vectors)
    Vec h_uu, h_uv, h_vv;  // ambient partials of the sections above
};

inline HomJet hom_jet(const FrontJet& j, Role role) {
    if (role == Role::FirstHom) return {j.f.p_u, j.f.p_v, j.f.p_uu, j.f.p_uv, j.f.p_vv};
    return {j.nu.p_u, j.nu.p_v, j.nu.p_uu, j.nu.p_uv, j.nu.p_vv};
}

/// phi-Jacobian lambda = mu(phi_u, phi_v).
inline double jacobian(const SurfaceDescriptor& s, Point2 q, Role role) {
    check_role(s, role);
    FrontJet j = eval_jet(s, q);
    HomJet h = hom_jet(j, role);
    return mu_form(s.ambient, j, h.h_u, h.h_v);
}

/// Analytic gradient of lambda, by the product rule on the area form.
/// The extra determinant slots produced by differentiating the frame
/// (position / normal) vanish because those vectors already appear as
/// other arguments of the form or are fiber-orthogonal.
inline Point2 grad_lambda(const SurfaceDescriptor& s, Point2 q, Role role) {
    check_role(s, role);
    FrontJet j = eval_jet(s, q);
    HomJet h = hom_jet(j, role);
    const AmbientModel& m = s.ambient;

    auto mu3 = [&](const Vec& X, const Vec& Y) { return mu_form(m, j, X, Y); };

    double du = mu3(h.h_uu, h.h_v) + mu3(h.h_u, h.h_uv);
    double dv = mu3(h.h_uv, h.h_v) + mu3(h.h_u, h.h_vv);

    // frame-vector derivative terms for the curved/front cases
    switch (m.kind) {
        case AmbientKind::Euclidean3:
        case AmbientKind::FlatQuotient3: {
            du += det3(h.h_u, h.h_v, j.nu.p_u);
            dv += det3(h.h_u, h.h_v, j.nu.p_v);
            break;
        }
        case AmbientKind::Sphere3:
        case AmbientKind::Hyperbolic3: {
            du += det4(j.f.p_u, h.h_u, h.h_v, j.nu.p) + det4(j.f.p, h.h_u, h.h_v, j.nu.p_u);
            dv += det4(j.f.p_v, h.h_u, h.h_v, j.nu.p) + det4(j.f.p, h.h_u, h.h_v, j.nu.p_v);
            break;
        }
        case AmbientKind::SphereTarget2: {
            du += det3(j.f.p_u, h.h_u, h.h_v);
            dv += det3(j.f.p_v, h.h_u, h.h_v);
            break;
        }
        case AmbientKind::PlaneTarget2:
            break;
    }
    return {du, dv};
}

struct HomFrameData {
    Vec e1, e2;
    Mat2 G;                   // (phi_u, phi_v) = G (e1, e2)
    std::optional<Mat2> G_sharp;
};

/// Deterministic positive orthonormal fiber frame and representation
/// matrices of the homomorphisms.
inline HomFrameData hom_frame(const SurfaceDescriptor& s, Point2 q) {
    FrontJet j = eval_jet(s, q);
    const AmbientModel& m = s.ambient;
    int dim = m.dim();

    // seed axes ranked by smallness of their normal components
    std::array<int, 4> order{0, 1, 2, 3};
    auto badness = [&](int i) {
        Vec e = Vec::zero(dim);
        e[i] = 1;
        double b = 0;
        if (!m.map_mode()) b += std::fabs(fiber_dot(m, e, j.nu.p));
        if (m.kind == AmbientKind::Sphere3 || m.kind == AmbientKind::Hyperbolic3 ||
            m.kind == AmbientKind::SphereTarget2)
            b += std::fabs(fiber_dot(m, e, j.f.p));
        return b;
    };
    std::stable_sort(order.begin(), order.begin() + dim,
                     [&](int a, int b) { return badness(a) < badness(b); });

    Vec e1 = Vec::zero(dim), e2 = Vec::zero(dim);
    bool have1 = false;
    for (int idx = 0; idx < dim; ++idx) {
        Vec e = Vec::zero(dim);
        e[order[static_cast<std::size_t>(idx)]] = 1;
        Vec w = fiber_project(m, j, e);
        if (have1) w -= (fiber_dot(m, w, e1) / fiber_dot(m, e1, e1)) * e1;
        double n2 = fiber_dot(m, w, w);
        if (n2 < 1e-12) continue;
        w *= 1.0 / std::sqrt(n2);
        if (!have1) {
            e1 = w;
            have1 = true;
        } else {
            e2 = w;
            break;
        }
    }
    if (mu_form(m, j, e1, e2) < 0) e2 *= -1.0;

    HomFrameData out;
    out.e1 = e1;
    out.e2 = e2;
    HomJet h = hom_jet(j, Role::FirstHom);
    out.G = {fiber_dot(m, h.h_u, e1), fiber_dot(m, h.h_v, e1),
             fiber_dot(m, h.h_u, e2), fiber_dot(m, h.h_v, e2)};
    if (s.mode != SurfaceMode::Map) {
        HomJet hs = hom_jet(j, Role::SecondHom);
        out.G_sharp = Mat2{fiber_dot(m, hs.h_u, e1), fiber_dot(m, hs.h_v, e1),
                           fiber_dot(m, hs.h_u, e2), fiber_dot(m, hs.h_v, e2)};
    }
    return out;
}

struct CurvatureSample {
    double lambda = 0, lambda_sharp = 0;
    Mat2 I, II, III;
    std::optional<double> K;           // c + K_ext, defined off Sigma
    std::optional<double> K_ext;       // det II / det I
    std::optional<double> K_ext_sharp; // det II / det III
    double degeneracy_floor = 0;
};

inline CurvatureSample curvature_sample(const SurfaceDescriptor& s, Point2 q) {
    if (s.mode == SurfaceMode::Map)
        throw UsageError("curvature sample requires a front or immersion");
    FrontJet j = eval_jet(s, q);
    const AmbientModel& m = s.ambient;
    HomJet hp = hom_jet(j, Role::FirstHom);
    HomJet hs = hom_jet(j, Role::SecondHom);

    CurvatureSample out;
    auto sym = [&](const Vec& a1, const Vec& a2, const Vec& b1, const Vec& b2) {
        return Mat2{fiber_dot(m, a1, b1), 0.5 * (fiber_dot(m, a1, b2) + fiber_dot(m, a2, b1)),
                    0.5 * (fiber_dot(m, a1, b2) + fiber_dot(m, a2, b1)), fiber_dot(m, a2, b2)};
    };
    out.I = sym(hp.h_u, hp.h_v, hp.h_u, hp.h_v);
    out.III = sym(hs.h_u, hs.h_v, hs.h_u, hs.h_v);
    Mat2 II = sym(hp.h_u, hp.h_v, hs.h_u, hs.h_v);
    out.II = {-II.a, -II.b, -II.c, -II.d};

    out.lambda = mu_form(m, j, hp.h_u, hp.h_v);
    out.lambda_sharp = mu_form(m, j, hs.h_u, hs.h_v);

    double scale = out.I.a + out.I.d + out.III.a + out.III.d;
    out.degeneracy_floor = 1e-12 * scale * scale / 4;
    if (std::fabs(out.I.det()) > out.degeneracy_floor) {
        out.K_ext = out.II.det() / out.I.det();
        out.K = m.curvature() + *out.K_ext;
    }
    if (std::fabs(out.III.det()) > out.degeneracy_floor)
        out.K_ext_sharp = out.II.det() / out.III.det();
    return out;
}

/// Gaussian curvature of the third fundamental form.
inline std::optional<double> k_sharp(const SurfaceDescriptor& s, Point2 q) {
    if (s.ambient.curvature() == 0.0) return 1.0;
    CurvatureSample cs = curvature_sample(s, q);
    if (!cs.K || std::fabs(cs.lambda_sharp) < cs.degeneracy_floor) return std::nullopt;
    return *cs.K * cs.lambda / cs.lambda_sharp;
}

/// D_{du} phi(dv) - D_{dv} phi(du), evaluated by finite differences of the
/// first-derivative sections; certifies the symmetry condition of the
/// bundle homomorphism.
inline Vec torsion_residual(const SurfaceDescriptor& s, Point2 q, Role role,
                            double h = 1e-4) {
    check_role(s, role);
    FrontJet j0 = eval_jet(s, q);
    auto sec = [&](double du, double dv, bool v_section) {
        FrontJet j = eval_jet(s, {q.u + du, q.v + dv});
        HomJet hj = hom_jet(j, role);
        return v_section ? hj.h_v : hj.h_u;
    };
    auto d1 = [&](auto&& g) {
        return (g(-2.0) - 8.0 * g(-1.0) + 8.0 * g(1.0) - g(2.0)) / (12.0 * h);
    };
    Vec du_of_hv = d1([&](double k) { return sec(k * h, 0, true); });
    Vec dv_of_hu = d1([&](double k) { return sec(0, k * h, false); });
    return fiber_project(s.ambient, j0, du_of_hv - dv_of_hu);
}

struct FrameSample {
    Point2 q;
    Vec e1, e2;
    double theta = 0;      // unwrapped angle of hom(gamma-dot) in the frame
    bool theta_valid = true;
};

/// Discrete parallel transport of a fiber frame along a sampled path with
/// the unwrapped angle of the homomorphism image of the velocity.
inline std::vector<FrameSample> parallel_frame(const SurfaceDescriptor& s,
                                               const std::vector<Point2>& path, Role role) {
    check_role(s, role);
    std::vector<FrameSample> out;
    if (path.empty()) return out;
    out.reserve(path.size());

    FrontJet j = eval_jet(s, path[0]);
    HomFrameData f0 = hom_frame(s, path[0]);
    Vec e1 = f0.e1, e2 = f0.e2;

    double theta_prev = 0;
    bool have_theta = false;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0) {
            j = eval_jet(s, path[i]);
            // transport by projecting the previous frame onto the new fiber
            Vec w1 = fiber_project(s.ambient, j, e1);
            double n1 = std::sqrt(fiber_dot(s.ambient, w1, w1));
            if (n1 < 0.5)
                throw AccuracyError("parallel transport step too large; refine the path");
            w1 *= 1.0 / n1;
            Vec w2 = fiber_project(s.ambient, j, e2);
            w2 -= fiber_dot(s.ambient, w2, w1) * w1;
            double n2 = std::sqrt(fiber_dot(s.ambient, w2, w2));
            w2 *= 1.0 / n2;
            if (mu_form(s.ambient, j, w1, w2) < 0) w2 *= -1.0;
            e1 = w1;
            e2 = w2;
        }
        FrameSample fs;
        fs.q = path[i];
        fs.e1 = e1;
        fs.e2 = e2;

        // velocity by local chord (central where possible)
        Point2 vel{0, 0};
        if (path.size() >= 2) {
            std::size_t a = (i == 0) ? 0 : i - 1;
            std::size_t b = (i + 1 == path.size()) ? i : i + 1;
            vel = s.domain.diff(path[b], path[a]);
        }
        HomJet hj = hom_jet(j, role);
        Vec img = vel.u * hj.h_u + vel.v * hj.h_v;
        double len = std::sqrt(fiber_dot(s.ambient, img, img));
        if (len < 1e-12) {
            fs.theta_valid = false;
            fs.theta = theta_prev;
        } else {
            double raw = std::atan2(fiber_dot(s.ambient, img, e2) / len,
                                    fiber_dot(s.ambient, img, e1) / len);
            if (!have_theta) {
                fs.theta = raw;
                have_theta = true;
            } else {
                double dtheta = std::remainder(raw - theta_prev, 2 * M_PI);
                fs.theta = theta_prev + dtheta;
            }
            theta_prev = fs.theta;
        }
        out.push_back(fs);
    }
    // interpolate angles across invalid samples
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].theta_valid) continue;
        std::size_t lo = i, hi = i;
        while (lo > 0 && !out[lo].theta_valid) --lo;
        while (hi + 1 < out.size() && !out[hi].theta_valid) ++hi;
        if (out[lo].theta_valid && out[hi].theta_valid && hi > lo)
            out[i].theta = out[lo].theta +
                           (out[hi].theta - out[lo].theta) * double(i - lo) / double(hi - lo);
    }
    return out;
}

}  // namespace frontlab
