// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.  Runs the CLI binary (FRONTLAB_BIN) for the determinism
// check and the library for everything else.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frontlab/catalog.hpp"
#include "frontlab/gaussbonnet.hpp"

using namespace frontlab;

namespace {

int g_failures = 0;

void report(int n, bool ok, const std::string& label, const std::string& detail = "") {
    std::printf("criterion %2d: %s  %s%s%s\n", n, ok ? "PASS" : "FAIL", label.c_str(),
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::mt19937 rng(987654321);

Point2 random_point(const ParamDomain& d, double margin) {
    // keep finite-difference stencils inside non-periodic ranges
    double mu = d.u_periodic ? 0 : margin;
    double mv = d.v_periodic ? 0 : margin;
    std::uniform_real_distribution<double> ru(d.u_min + mu * d.u_len(),
                                              d.u_max - mu * d.u_len());
    std::uniform_real_distribution<double> rv(d.v_min + mv * d.v_len(),
                                              d.v_max - mv * d.v_len());
    return {ru(rng), rv(rng)};
}

double jet_rel_err(const Jet2& a, const Jet2& b) {
    double m = 1, e = 0;
    auto acc = [&](const Vec& x, const Vec& y) {
        e = std::max(e, norm(x - y));
        m = std::max(m, norm(x));
    };
    acc(a.p, b.p);
    acc(a.p_u, b.p_u);
    acc(a.p_v, b.p_v);
    acc(a.p_uu, b.p_uu);
    acc(a.p_uv, b.p_uv);
    acc(a.p_vv, b.p_vv);
    return e / m;
}

// ---------------------------------------------------------------- 1

void criterion_jets() {
    double worst = 0;
    std::string worst_name;
    for (const auto& e : catalog::list()) {
        auto s = catalog::build(e.name);
        for (int k = 0; k < 200; ++k) {
            Point2 q = random_point(s.domain, 0.01);
            double r = jet_rel_err(eval_jet(s, q).f, finite_difference_jet(s, q, 1e-4));
            if (r > worst) {
                worst = r;
                worst_name = e.name;
            }
        }
    }
    report(1, worst < 1e-6, "analytic jets match finite differences on all entries",
           "worst rel err " + fmt(worst) + " (" + worst_name + ")");
}

// ---------------------------------------------------------------- 2

void criterion_pointwise() {
    double worst = 0;
    std::string worst_name;
    for (const auto& e : catalog::list()) {
        if (e.mode == SurfaceMode::Map) continue;
        auto s = catalog::build(e.name);
        double scale = lambda_scale(s, Role::FirstHom);
        int used = 0;
        for (int k = 0; k < 4000 && used < 100; ++k) {
            Point2 q = random_point(s.domain, 0.03);
            CurvatureSample cs = curvature_sample(s, q);
            if (std::fabs(cs.lambda) < 0.02 * scale) continue;
            if (!cs.K || !cs.K_ext) continue;
            ++used;
            double c = s.ambient.curvature();
            double err = std::fabs(*cs.K - (c + *cs.K_ext));
            err = std::max(err, std::fabs(cs.lambda_sharp - *cs.K_ext * cs.lambda) /
                                    (1 + std::fabs(cs.lambda_sharp)));
            if (cs.K_ext_sharp && std::fabs(*cs.K_ext) > 1e-6)
                err = std::max(err, std::fabs(*cs.K_ext * *cs.K_ext_sharp - 1));
            auto ks = k_sharp(s, q);
            if (ks) {
                err = std::max(err, std::fabs(*cs.K * cs.lambda - *ks * cs.lambda_sharp) /
                                        (1 + std::fabs(*cs.K * cs.lambda)));
                if (c == 0) err = std::max(err, std::fabs(*ks - 1));
            }
            for (Role role : {Role::FirstHom, Role::SecondHom})
                err = std::max(err, norm(torsion_residual(s, q, role)));
            if (err > worst) {
                worst = err;
                worst_name = e.name;
            }
        }
        if (used < 100) {
            report(2, false, "pointwise identities", "not enough regular samples on " + e.name);
            return;
        }
    }
    report(2, worst < 1e-8, "pointwise curvature identities and torsion residuals",
           "worst " + fmt(worst) + " (" + worst_name + ")");
}

// ---------------------------------------------------------------- 3

void criterion_fold_curvature() {
    bool ok = true;
    std::string detail;
    for (double eps : {1.0, -1.0}) {
        auto s = catalog::build("fold_map", {{"eps", eps}});
        auto curves = trace_singular_curves(s, Role::FirstHom, 64, 64, 1e-12);
        if (curves.size() != 1) {
            ok = false;
            break;
        }
        const auto& c = curves[0];
        // bisect the trace parameter for the point v = 0 (the fold vertex);
        // the image parabola x = eps y^2 has geodesic curvature 2 eps there
        double lo = 0, hi = c.tp.back();
        bool inc = sigma_point(s, c, hi).v > sigma_point(s, c, lo).v;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            if ((sigma_point(s, c, mid).v < 0) == inc)
                lo = mid;
            else
                hi = mid;
        }
        double t0 = 0.5 * (lo + hi);
        auto kap = singular_curvature(s, c, t0);
        if (!kap || std::fabs(*kap - 2 * eps) > 1e-6) ok = false;
        detail += "kappa(eps=" + fmt(eps) + ")=" + (kap ? fmt(*kap) : "n/a") + " ";
    }
    report(3, ok, "fold curvature equals the parabola oracle +-2", detail);
}

// ---------------------------------------------------------------- 4

void criterion_classifier() {
    bool ok = true;
    std::string detail;
    struct Row {
        const char* name;
        SingClass cls;
    };
    for (const Row& row : {Row{"fold_nf", SingClass::A2}, Row{"cusp_nf", SingClass::A3},
                           Row{"butterfly_nf", SingClass::Butterfly},
                           Row{"lips_nf", SingClass::Lips}, Row{"beaks_nf", SingClass::Beaks}}) {
        auto s = catalog::build(row.name);
        Point2 q = row.cls == SingClass::A2 ? Point2{0.25, 0} : Point2{0, 0};
        auto rec = classify_singular_point(s, q, Role::FirstHom);
        if (rec.cls != row.cls) {
            ok = false;
            detail += std::string(row.name) + "->" + sing_class_name(rec.cls) + " ";
        }
    }
    auto plus = classify_singular_point(catalog::build("cusp_nf"), {0, 0}, Role::FirstHom);
    auto minus = classify_singular_point(catalog::build("cusp_nf", {{"reflect", 1.0}}), {0, 0},
                                         Role::FirstHom);
    if (plus.cls != SingClass::A3 || a3_sign(plus) != 1) ok = false;
    if (minus.cls != SingClass::A3 || a3_sign(minus) != -1) ok = false;
    detail += "cusp signs " + fmt(plus.a3sign) + "/" + fmt(minus.a3sign);
    report(4, ok, "normal forms classify correctly with signed cusps", detail);
}

// ---------------------------------------------------------------- 5

void criterion_torus() {
    auto s = catalog::build("torus");
    auto kda = [&](Point2 q) {
        CurvatureSample cs = curvature_sample(s, q);
        return *cs.K * cs.lambda;
    };
    double plus = integrate_indicator(s, Role::SecondHom, kda, +1);
    double minus = integrate_indicator(s, Role::SecondHom, kda, -1);
    bool ok = std::fabs(plus - 4 * M_PI) < 1e-3 * 4 * M_PI &&
              std::fabs(minus + 4 * M_PI) < 1e-3 * 4 * M_PI;

    auto c = verify_theorem(s, "c", 256, 256, 128);
    ok = ok && c.pass && std::fabs(c.lhs + 4 * M_PI) < 1e-2 * 4 * M_PI &&
         std::fabs(c.rhs + 4 * M_PI) < 1e-2 * 4 * M_PI;

    auto q = quine_check(catalog::build("torus-gauss"), 256, 256);
    ok = ok && q.pass && q.lhs == 0 && std::llround(q.rhs) == 0;

    auto pid = prop_id_check(catalog::build("torus-gauss"), 256, 256, 128);
    ok = ok && pid.residual < 1e-2 * 4 * M_PI;

    report(5, ok, "torus splits, exchange identity, degree and pullback checks",
           "intK+=" + fmt(plus) + " intK-=" + fmt(minus) + " thmC=" + fmt(c.lhs) +
               " quine " + fmt(q.lhs) + "=" + fmt(q.rhs) + " id residual " + fmt(pid.residual));
}

// ---------------------------------------------------------------- 6

void criterion_parallel_front() {
    auto s = catalog::build("ellipsoid-parallel");
    auto a = analyze_role(s, Role::FirstHom, 256, 256);
    int n_a3 = 0, n_neg = 0;
    for (const auto& c : a.curves)
        for (const auto& m : c.markers)
            if (m.cls == SingClass::A3) {
                ++n_a3;
                if (m.sign < 0) ++n_neg;
            }
    auto b = verify_theorem(s, "b", 256, 256, 96);
    bool ok = n_a3 == 4 && n_neg == 4 && a.regions.chi_minus == -2 && b.pass &&
              std::llround(b.lhs) == -4 && std::llround(b.rhs) == -4;
    report(6, ok, "ellipsoid parallel front: 4 negative swallowtails, chi(M-)=-2, -4=-4",
           "A3=" + fmt(n_a3) + " neg=" + fmt(n_neg) + " chi-=" + fmt(a.regions.chi_minus) +
               " thmB " + fmt(b.lhs) + "=" + fmt(b.rhs));
}

// ---------------------------------------------------------------- 7

void criterion_cycloid() {
    auto s = catalog::build("cycloid_B");
    FieldStats st = sample_field_stats(s);
    bool ok = st.max_kext < 0 && st.max_abs_log_kext < kBoundedLogLimit;

    auto m = gb_formula(s, Role::FirstHom, "1m", 256, 256, 128);
    ok = ok && m.residual < 1e-3 * 2 * M_PI;

    // Sigma = Sigma#: every phi-curve sample lies on the zero set of
    // lambda# as well, measured as |lambda#| / |grad lambda#|
    const double refine_tol = 1e-10;
    auto curves = trace_singular_curves(s, Role::FirstHom, 256, 256, refine_tol);
    double worst_dist = 0, worst_pair = 0;
    double sharp_scale = lambda_scale(s, Role::SecondHom);
    for (const auto& c : curves) {
        for (int k = 0; k < 32; ++k) {
            double t = c.total * (k + 0.5) / 32;
            Point2 q = sigma_point(s, c, t);
            double ls = jacobian(s, q, Role::SecondHom);
            double g = norm(grad_lambda(s, q, Role::SecondHom));
            worst_dist = std::max(worst_dist, std::fabs(ls) / std::max(g, 1e-12));

            // Lemma: kappa dtau = -kappa# dtau# along the shared edge
            SingularCurve cs2 = c;
            cs2.role = Role::SecondHom;
            cs2.scale = sharp_scale;
            double d1 = curve_density(s, c, t);
            double d2 = curve_density(s, cs2, t);
            worst_pair = std::max(worst_pair, std::fabs(d1 + d2));
        }
    }
    ok = ok && worst_dist < 10 * refine_tol && worst_pair < 1e-6;
    report(7, ok, "cycloid torus: negative pinched curvature, shared singular set",
           "maxKext=" + fmt(st.max_kext) + " 1m residual " + fmt(m.residual) + " dist(Sigma#) " +
               fmt(worst_dist) + " |kdt+k#dt#| " + fmt(worst_pair));
}

// ---------------------------------------------------------------- 8

void criterion_clifford() {
    auto s = catalog::build("clifford_torus");
    double worst = 0;
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            Point2 q{s.domain.u_min + (i + 0.41) * s.domain.u_len() / 24,
                     s.domain.v_min + (j + 0.37) * s.domain.v_len() / 24};
            CurvatureSample cs = curvature_sample(s, q);
            worst = std::max(worst, std::fabs(*cs.K_ext + 1));
        }
    auto curves = trace_singular_curves(s, Role::FirstHom, 128, 128, 1e-10);
    auto e = verify_theorem(s, "e", 128, 128, 96);
    auto g = verify_theorem(s, "g", 128, 128, 96);
    bool ok = worst < 1e-12 && curves.empty() && e.pass && g.pass &&
              s.domain.euler_characteristic() == 0;
    report(8, ok, "clifford torus: K_ext = -1, empty singular set, theorems e and g",
           "|K_ext+1| " + fmt(worst) + " curves=" + fmt(curves.size()));
}

// ---------------------------------------------------------------- 9

void criterion_blowup() {
    auto s = catalog::build("ellipsoid-parallel");
    auto curves = trace_singular_curves(s, Role::FirstHom, 256, 256, 1e-10);
    bool ok = true;
    int markers = 0;
    double worst_ratio = 1e300, worst_var = 0;
    for (const auto& c : curves) {
        for (const auto& m : c.markers) {
            ++markers;
            for (double dir : {-1.0, 1.0}) {
                double d0 = 0.1;
                double prev_kappa = 0, dens0 = 0;
                for (int k = 0; k <= 5; ++k) {
                    double t = m.t + dir * d0 / (1 << k);
                    auto kap = singular_curvature(s, c, t);
                    if (!kap || !(*kap < 0)) {
                        ok = false;
                        break;
                    }
                    double dens = curve_density(s, c, t);
                    if (k == 0) {
                        dens0 = dens;
                    } else {
                        if (!(*kap < prev_kappa)) ok = false;  // strictly decreasing
                        double ratio = std::fabs(*kap / prev_kappa);
                        worst_ratio = std::min(worst_ratio, ratio);
                        if (ratio < 1.5) ok = false;
                        double var = std::fabs(dens - dens0) / std::fabs(dens0);
                        worst_var = std::max(worst_var, var);
                        if (var >= 0.1) ok = false;
                    }
                    prev_kappa = *kap;
                }
            }
        }
    }
    ok = ok && markers == 4;
    report(9, ok, "kappa -> -inf toward swallowtails while the density stays put",
           "min ratio " + fmt(worst_ratio) + " max density variation " + fmt(worst_var));
}

// ---------------------------------------------------------------- 10

void criterion_integer_consistency() {
    bool ok = true;
    std::string detail;
    for (const auto& e : catalog::list()) {
        if (!e.closed) continue;
        auto s = catalog::build(e.name);
        std::vector<Role> roles{Role::FirstHom};
        if (e.mode != SurfaceMode::Map) roles.push_back(Role::SecondHom);
        for (Role role : roles) {
            long n0 = 0;
            for (int grid : {256, 512}) {
                RoleAnalysis a;
                try {
                    a = analyze_role(s, role, grid, grid);
                } catch (const std::exception&) {
                    ok = false;
                    detail += e.name + std::string("/") + role_name(role) + ":trace ";
                    break;
                }
                if (!a.all_a2a3 || !a.all_closed) break;  // outside the hypothesis
                long n = a.regions.chi_plus - a.regions.chi_minus + a.s_plus - a.s_minus;
                double integral;
                if (s.mode == SurfaceMode::Map) {
                    bool sph = s.ambient.kind == AmbientKind::SphereTarget2;
                    integral = sph ? integrate_smooth(
                                         s, [&](Point2 q) { return jacobian(s, q, role); }, 256,
                                         256)
                                   : 0.0;
                } else {
                    auto dens = [&](Point2 q) {
                        return role == Role::FirstHom ? k_dahat_density(s, q)
                                                      : k_sharp_dahat_density(s, q);
                    };
                    integral = integrate_smooth(s, dens, 256, 256);
                }
                double value = integral / (2 * M_PI);
                if (std::fabs(value - n) > 1e-3) {
                    ok = false;
                    detail += e.name + std::string("/") + role_name(role) + "=" + fmt(value) +
                              " vs " + fmt(double(n)) + " ";
                }
                if (grid == 256)
                    n0 = n;
                else if (n != n0) {
                    ok = false;
                    detail += e.name + std::string("/") + role_name(role) + ":refine ";
                }
            }
        }
    }
    report(10, ok, "total signed curvature hits the combinatorial integer on every closed entry",
           detail.empty() ? "all integers stable under 2x refinement" : detail);
}

// ---------------------------------------------------------------- 11

void criterion_levine() {
    auto r1 = verify_theorem(catalog::build("sphere_projection"), "levine", 192, 192, 96);
    auto r2 = verify_theorem(catalog::build("sphere_projection", {{"amp", 0.3}}), "levine", 256,
                             256, 96);
    int cusps = 0;
    {
        auto s = catalog::build("sphere_projection", {{"amp", 0.3}});
        auto a = analyze_role(s, Role::FirstHom, 256, 256);
        for (const auto& c : a.curves) cusps += static_cast<int>(c.markers.size());
    }
    bool ok = r1.pass && std::fabs(r1.rhs - 1) < 0.05 && r2.pass && std::fabs(r2.rhs - 1) < 0.05 &&
              cusps > 0;
    report(11, ok, "rotation indices of fold images add to chi/2",
           "round " + fmt(r1.rhs) + " bumpy " + fmt(r2.rhs) + " with " + fmt(cusps) +
               " image cusps");
}

// ---------------------------------------------------------------- 12

void criterion_determinism() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path();
    fs::path o1 = dir / "frontlab_accept_run1.json";
    fs::path o2 = dir / "frontlab_accept_run2.json";
    std::string base = std::string(FRONTLAB_BIN) + " verify --surface torus --target all --json";
    int rc1 = std::system((base + " > " + o1.string() + " 2>/dev/null").c_str());
    int rc2 = std::system((base + " > " + o2.string() + " 2>/dev/null").c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    std::string a = slurp(o1), b = slurp(o2);
    bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    report(12, ok, "verify --target all is byte-deterministic",
           "bytes " + fmt(a.size()) + (a == b ? " identical" : " differ") +
               " exit " + fmt(rc1) + "/" + fmt(rc2));
}

}  // namespace

int main() {
    criterion_jets();
    criterion_pointwise();
    criterion_fold_curvature();
    criterion_classifier();
    criterion_torus();
    criterion_parallel_front();
    criterion_cycloid();
    criterion_clifford();
    criterion_blowup();
    criterion_integer_consistency();
    criterion_levine();
    criterion_determinism();
    if (g_failures) {
        std::printf("%d of 12 criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
