#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "memshape/cylinder.hpp"
#include "memshape/elliptic.hpp"
#include "memshape/patch.hpp"
#include "memshape/shape.hpp"

using namespace memshape;

TEST_CASE("rho = 0 degenerates to a constant profile") {
    double sigma = -std::cbrt(24.0);
    auto fc = family_constants(sigma, 0.0);
    REQUIRE(fc.m < 1e-14);
    for (double s : {0.0, 0.7, 3.1}) {
        REQUIRE(std::abs(kappa_family(fc, s) - 1.0 / (2 * sigma)) < 1e-13);
        REQUIRE(std::abs(dkappa_family(fc, s)) < 1e-13);
    }
    // closure index 1 / sqrt(1 - sigma^3) = 1/5 for sigma^3 = -24
    REQUIRE(std::abs(closure_index(fc) - 0.2) < 1e-11);
}

TEST_CASE("curvature extremes are roots of the profile quartic") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> us(-2.5, -0.4), ur(0.05, 0.95);
    for (int i = 0; i < 25; ++i) {
        double sigma = us(rng), rho = ur(rng);
        auto fc = family_constants(sigma, rho);
        auto quartic = [&](double t) {
            return t * t * t * t + fc.w2 * t * t + t + fc.w0;
        };
        CAPTURE(sigma, rho);
        REQUIRE(std::abs(quartic(fc.kappa_at_0)) < 1e-9);
        REQUIRE(std::abs(quartic(fc.kappa_at_half)) < 1e-9);
        REQUIRE(fc.kappa_at_0 < 0);
        // the shallow extreme changes sign exactly at the convexity boundary
        const double cvx = 1.0 - 2.0 * rho * std::pow(-sigma, 1.5);
        REQUIRE(fc.kappa_at_half * cvx < 0);
        // the quartic has exactly two real roots along the family
        REQUIRE(quartic_structure(fc.w2, fc.w0).two_real_two_complex);
    }
}

TEST_CASE("profile satisfies the first integral pointwise") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> us(-2.0, -0.5), ur(0.0, 0.9), ux(-10.0, 10.0);
    for (int i = 0; i < 40; ++i) {
        double sigma = us(rng), rho = ur(rng);
        auto fc = family_constants(sigma, rho);
        double s = ux(rng);
        double ka = kappa_family(fc, s), dka = dkappa_family(fc, s);
        double eq3 = dka * dka + 0.25 * (ka * ka * ka * ka + fc.w2 * ka * ka + ka + fc.w0);
        CAPTURE(sigma, rho, s);
        REQUIRE(std::abs(eq3) < 1e-10);
    }
}

TEST_CASE("profile period matches the elliptic modulus") {
    auto fc = family_constants(-1.3, 0.55);
    double w = fc.omega;
    for (double s : {0.0, 0.4, 1.9}) {
        REQUIRE(std::abs(kappa_family(fc, s + w) - kappa_family(fc, s)) < 1e-10);
        // half-period reflection symmetry of cn
        REQUIRE(std::abs(kappa_family(fc, w - s) - kappa_family(fc, s)) < 1e-10);
    }
    REQUIRE(std::abs(kappa_family(fc, 0.0) - fc.kappa_at_0) < 1e-13);
    REQUIRE(std::abs(kappa_family(fc, 0.5 * w) - fc.kappa_at_half) < 1e-13);
}

TEST_CASE("family parameters stay in the validated domain") {
    REQUIRE_THROWS_AS(family_constants(0.5, 0.2), invariant_error);   // sigma must be negative
    REQUIRE_THROWS_AS(family_constants(-1.0, 1.0), invariant_error);  // rho < 1
    REQUIRE_THROWS_AS(family_constants(-1.0, -0.1), invariant_error);
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> us(-3.0, -0.1), ur(0.0, 0.999);
    for (int i = 0; i < 200; ++i) {
        auto fc = family_constants(us(rng), ur(rng));
        REQUIRE(fc.m >= 0);
        REQUIRE(fc.m < 1);
        REQUIRE(fc.g > 0);
    }
}

TEST_CASE("closure search reproduces the circular solution") {
    double sigma = solve_phi(5, 0.0);
    REQUIRE(std::abs(sigma + std::cbrt(24.0)) < 1e-12);
    REQUIRE(std::abs(closure_index(sigma, 0.0) - 0.2) < 1e-12);
}

TEST_CASE("closure search holds the index along the family") {
    for (double rho : {0.2, 0.5, 0.8}) {
        double sigma = solve_phi(5, rho);
        CAPTURE(rho, sigma);
        REQUIRE(std::abs(closure_index(sigma, rho) - 0.2) < 1e-11);
    }
    double s2 = solve_phi(2, 0.3);
    REQUIRE(std::abs(closure_index(s2, 0.3) - 0.5) < 1e-11);
}

TEST_CASE("synthesized directrix closes and has unit turning") {
    double rho = 0.3;
    auto fc = family_constants(solve_phi(5, rho), rho);
    auto sc = synthesize_curve(fc, 5, 4096);
    REQUIRE(sc.closure_gap < 1e-7 * sc.length);
    REQUIRE(std::abs(std::abs(sc.turning) - 1.0) < 1e-8);
}

TEST_CASE("quadrature and closed-form positions agree") {
    double rho = 0.3;
    auto fc = family_constants(solve_phi(5, rho), rho);
    auto sc = synthesize_curve(fc, 5, 2048);
    Vec2 base = closed_form_position(fc, sc.theta[0], sc.kappa[0], dkappa_family(fc, sc.s[0]));
    double worst = 0;
    for (std::size_t i = 0; i < sc.poly.pts.size(); ++i) {
        Vec2 want = closed_form_position(fc, sc.theta[i], sc.kappa[i],
                                         dkappa_family(fc, sc.s[i])) - base;
        Vec2 got = sc.poly.pts[i] - sc.poly.pts[0];
        worst = std::max(worst, norm(got - want));
    }
    REQUIRE(worst < 1e-8 * sc.length);
}

TEST_CASE("topology probes distinguish the published regimes") {
    // convex: small rho
    double rho = 0.05;
    auto fc = family_constants(solve_phi(5, rho), rho);
    auto tp = probe_topology(fc, 5);
    REQUIRE(tp.strictly_convex);
    REQUIRE(tp.inflections == 0);
    REQUIRE(tp.crossings == 0);
    REQUIRE(std::abs(tp.turning_number) == 1);

    // past the convexity threshold: inflections but still simple
    rho = 0.5;
    fc = family_constants(solve_phi(5, rho), rho);
    tp = probe_topology(fc, 5);
    REQUIRE_FALSE(tp.strictly_convex);
    REQUIRE(tp.inflections > 0);
    REQUIRE(tp.crossings == 0);
}

TEST_CASE("convexity threshold solves the tangency condition") {
    double rho = separating_rho_convexity(5);
    double sigma = solve_phi(5, rho);
    REQUIRE(std::abs(1.0 - 2 * rho * std::pow(-sigma, 1.5)) < 1e-9);
    // strictly convex just below, inflected just above
    auto below = probe_topology(family_constants(solve_phi(5, rho - 0.01), rho - 0.01), 5);
    auto above = probe_topology(family_constants(solve_phi(5, rho + 0.01), rho + 0.01), 5);
    REQUIRE(below.strictly_convex);
    REQUIRE_FALSE(above.strictly_convex);
}

TEST_CASE("extruded cylinder satisfies the membrane equations on the grid") {
    double rho = 0.05;  // below the convexity boundary: kappa keeps one sign
    auto fc = family_constants(solve_phi(5, rho), rho);
    auto patch = extrude_cylinder(fc, 5, 256, 1.0, 16);
    auto mp = patch_materials(fc);
    auto pv = validate_patch(patch, phi_helfrich(), mp);
    REQUIRE(pv.pde_worst() < 1e-6);
    REQUIRE(pv.shape_fd_max < 1e-5);
    REQUIRE(pv.shape_state_max < 1e-12);
    REQUIRE(pv.frame_defect_max < 1e-12);
    REQUIRE(pv.margin_min > 0);
}

TEST_CASE("extruded cylinder energy bookkeeping") {
    double rho = 0.05;
    auto fc = family_constants(solve_phi(5, rho), rho);
    double height = 0.8;
    auto patch = extrude_cylinder(fc, 5, 128, height, 9);
    auto mp = patch_materials(fc);
    auto eb = helfrich_energy(patch, mp);
    // flat direction: area = directrix length * height
    double L = 0;
    {
        auto sc = synthesize_curve(fc, 5, 4096);
        L = sc.length;
    }
    REQUIRE(std::abs(eb.area - L * height) < 1e-6 * L * height);
    REQUIRE(eb.bending > 0);
    REQUIRE(std::abs(eb.gaussian) < 1e-12);  // K = 0 on a cylinder
    REQUIRE(std::abs(eb.total - (eb.bending + eb.gaussian + eb.tension)) < 1e-12);
}
