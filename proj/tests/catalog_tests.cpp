#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "frontlab/catalog.hpp"
#include "frontlab/gaussbonnet.hpp"

using namespace frontlab;

TEST_CASE("listing is sorted and complete") {
    auto entries = catalog::list();
    CHECK(entries.size() >= 17);
    CHECK(std::is_sorted(entries.begin(), entries.end(),
                         [](const auto& a, const auto& b) { return a.name < b.name; }));
    for (const char* must :
         {"fold_nf", "cusp_nf", "lips_nf", "beaks_nf", "butterfly_nf", "torus", "sphere",
          "ellipsoid", "ellipsoid-parallel", "cycloid_A", "cycloid_B", "clifford_torus",
          "unduloid", "bumpy_sphere", "sphere_identity", "sphere_projection", "fold_map"}) {
        CHECK_NOTHROW(catalog::summary(must));
    }
}

TEST_CASE("every entry builds and evaluates") {
    for (const auto& e : catalog::list()) {
        auto s = catalog::build(e.name);
        CHECK(s.name == e.name);
        CHECK(s.mode == e.mode);
        CHECK(s.domain.closed() == e.closed);
        Point2 q{s.domain.u_min + 0.37 * s.domain.u_len(),
                 s.domain.v_min + 0.61 * s.domain.v_len()};
        FrontJet j = eval_jet(s, q);
        CHECK(std::isfinite(norm(j.f.p)));
        if (s.mode != SurfaceMode::Map) {
            // unit normal, orthogonal to the tangent plane
            CHECK(fiber_dot(s.ambient, j.nu.p, j.nu.p) == doctest::Approx(1).epsilon(1e-10));
            CHECK(std::fabs(fiber_dot(s.ambient, j.nu.p, j.f.p_u)) < 1e-9);
            CHECK(std::fabs(fiber_dot(s.ambient, j.nu.p, j.f.p_v)) < 1e-9);
        }
    }
}

TEST_CASE("unknown names and bad parameters are rejected") {
    CHECK_THROWS_AS(catalog::build("no_such_surface"), UsageError);
    CHECK_THROWS_AS(catalog::build("torus", {{"R", 0.5}}), UsageError);   // r >= R
    CHECK_THROWS_AS(catalog::build("torus", {{"bogus", 1.0}}), UsageError);
    CHECK_NOTHROW(catalog::build("torus", {{"R", 3.0}, {"r", 0.5}}));
}

TEST_CASE("gauss map construction") {
    auto g = catalog::build("torus-gauss");
    CHECK(g.mode == SurfaceMode::Map);
    CHECK(g.ambient.kind == AmbientKind::SphereTarget2);
    Point2 q{0.8, 1.9};
    Vec n = eval_jet(g, q).f.p;
    CHECK(norm(n) == doctest::Approx(1).epsilon(1e-12));
    auto base = catalog::build("torus");
    CHECK(norm(n - eval_jet(base, q).nu.p) < 1e-12);
    // maps with no normal have no gauss map
    CHECK_THROWS_AS(catalog::build("sphere_identity-gauss"), UsageError);
}

TEST_CASE("cycloid_B has pinched negative extrinsic curvature") {
    auto s = catalog::build("cycloid_B");
    FieldStats st = sample_field_stats(s);
    CHECK(st.max_kext < 0);
    CHECK(st.max_abs_log_kext < 20);
    // the flat quotient keeps K equal to K_ext
    CHECK(st.min_K == doctest::Approx(st.min_kext));
}

TEST_CASE("cycloid_A has pinched positive curvature") {
    auto s = catalog::build("cycloid_A");
    FieldStats st = sample_field_stats(s);
    CHECK(st.min_K > 0);
    CHECK(st.max_abs_log_kext < 20);
}

TEST_CASE("clifford torus is flat with K_ext = -1") {
    auto s = catalog::build("clifford_torus");
    CHECK(s.ambient.kind == AmbientKind::Sphere3);
    for (double u : {0.0, 0.7, 2.1})
        for (double v : {0.3, 1.9, 5.0}) {
            CurvatureSample cs = curvature_sample(s, {u, v});
            REQUIRE(cs.K_ext.has_value());
            CHECK(*cs.K_ext == doctest::Approx(-1).epsilon(1e-12));
            CHECK(*cs.K == doctest::Approx(0).epsilon(1e-12));
        }
}

TEST_CASE("sine_rotation gauss map has a positive-curvature fold") {
    auto g = catalog::build("sine_rotation");
    auto curves = trace_singular_curves(g, Role::SecondHom, 96, 96, 1e-10);
    REQUIRE(!curves.empty());
    bool found_positive = false;
    for (const auto& c : curves) {
        auto kap = singular_curvature(g, c, 0.5 * c.total);
        if (kap && *kap > 0) found_positive = true;
    }
    CHECK(found_positive);
}

TEST_CASE("normal forms vanish where they should") {
    auto fold = catalog::build("fold_nf");
    CHECK(jacobian(fold, {0.3, 0}, Role::FirstHom) == doctest::Approx(0).epsilon(1e-14));
    auto cusp = catalog::build("cusp_nf");
    CHECK(jacobian(cusp, {0, 0}, Role::FirstHom) == doctest::Approx(0).epsilon(1e-14));
    auto lips = catalog::build("lips_nf");
    CHECK(jacobian(lips, {0, 0}, Role::FirstHom) == doctest::Approx(0).epsilon(1e-14));
    CHECK(norm(grad_lambda(lips, {0, 0}, Role::FirstHom)) < 1e-10);
}
