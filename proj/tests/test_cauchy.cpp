#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "memshape/cauchy.hpp"
#include "memshape/datum.hpp"
#include "memshape/elliptic.hpp"
#include "memshape/shape.hpp"

using namespace memshape;

TEST_CASE("unit circle with h = 1/2 lifts to the cylinder cross-section") {
    ArclengthCurve curve(make_circle(1.0));
    MaterialParams mp;
    StripOptions opt;
    opt.n = 64;
    auto strip = build_integral_curve(curve, constant_datum(0.5), constant_datum(0.0),
                                      phi_willmore(), mp, opt);
    REQUIRE(strip.closed);
    REQUIRE(std::abs(strip.margin - 0.5) < 1e-12);
    for (const auto& f : strip.nodes) {
        REQUIRE(std::abs(f.a - 1.0) < 1e-12);
        REQUIRE(std::abs(f.c) < 1e-12);
        REQUIRE(std::abs(f.p) < 1e-12);
        REQUIRE(std::abs(f.q) < 1e-12);
        REQUIRE(std::abs(f.mean_curvature() - 0.5) < 1e-14);
        REQUIRE(orthonormality_defect(f.A) < 1e-12);
    }
}

TEST_CASE("prescribed mean curvature and its normal derivative are realized exactly") {
    ArclengthCurve curve(make_ellipse(2.0, 1.0));
    MaterialParams mp;
    StripOptions opt;
    opt.n = 128;
    auto h = parse_datum("kappa/4");
    auto hw = parse_datum("0.05*kappa");
    auto strip = build_integral_curve(curve, h, hw, phi_willmore(), mp, opt);
    REQUIRE(strip.closed);
    REQUIRE(strip.margin > 0);
    for (std::size_t i = 0; i < strip.nodes.size(); ++i) {
        const auto& f = strip.nodes[i];
        auto cs = curve.sample(strip.xs[i]);
        REQUIRE(std::abs(f.mean_curvature() - cs.kappa / 4) < 1e-13);
        double hw_real = 0.5 * (f.c2 - f.p * (f.c - f.a));
        REQUIRE(std::abs(hw_real - 0.05 * cs.kappa) < 1e-13);
    }
}

TEST_CASE("generator residuals converge quadratically under dx halving") {
    MaterialParams mp;
    auto phi = phi_willmore();
    auto h = parse_datum("kappa/4");
    auto hw = parse_datum("0.05*kappa");
    double prev = 0;
    for (int n : {256, 512}) {
        ArclengthCurve curve(make_ellipse(2.0, 1.0));
        StripOptions opt;
        opt.n = n;
        auto strip = build_integral_curve(curve, h, hw, phi, mp, opt);
        auto gr = verify_integral_curve(strip.nodes, strip.dx, strip.closed, phi, mp);
        double w = gr.worst();
        if (prev > 0) {
            double order = std::log2(prev / w);
            CAPTURE(prev, w);
            REQUIRE(order > 1.9);
        }
        prev = w;
    }
}

TEST_CASE("helix strips are open and admissible with an offset datum") {
    double r = 2.0, b = 0.5;
    ArclengthCurve curve(make_helix(r, b, 2.0));
    MaterialParams mp;
    StripOptions opt;
    opt.n = 257;
    opt.span = curve.length();
    auto strip = build_integral_curve(curve, constant_datum(-0.75), constant_datum(0.0),
                                      phi_willmore(), mp, opt);
    REQUIRE_FALSE(strip.closed);
    REQUIRE(strip.margin > 0.2);
    auto gr = verify_integral_curve(strip.nodes, strip.dx, strip.closed, phi_willmore(), mp);
    REQUIRE(gr.worst() < 1e-2);
}

TEST_CASE("inadmissible data is rejected") {
    ArclengthCurve curve(make_ellipse(2.0, 1.0));
    MaterialParams mp;
    StripOptions opt;
    opt.n = 64;
    // h = 1/2 exceeds the normal curvature where the ellipse is flat
    REQUIRE_THROWS_AS(build_integral_curve(curve, constant_datum(0.5), constant_datum(0.0),
                                           phi_willmore(), mp, opt),
                      invariant_error);
}

TEST_CASE("seam detection marks strips that fail to close in the fiber") {
    // closed space curve: the normal angle accumulates the total torsion,
    // so the strip closes only when that total is a multiple of 2 pi
    std::array<FourierComponent, 3> comps{};
    comps[0].an = {1.0};
    comps[1].bn = {1.0};
    comps[2].bn = {0.3, 0.25};
    ArclengthCurve curve(make_fourier(comps));
    REQUIRE(curve.closed());
    auto q = quad_adaptive([&](double x) { return curve.sample(x).tau; }, 0.0, curve.length());
    double wrap = std::remainder(q.value, 2 * kPi);
    MaterialParams mp;
    StripOptions opt;
    opt.n = 128;
    auto strip = build_integral_curve(curve, constant_datum(-2.0), constant_datum(0.0),
                                      phi_willmore(), mp, opt);
    REQUIRE(strip.closed == (std::abs(wrap) < 1e-8));
}

TEST_CASE("datum expressions evaluate like hand-written closures") {
    ArclengthCurve curve(make_ellipse(2.0, 1.0));
    auto cs = curve.sample(1.3);

    auto d1 = parse_datum("0.5");
    REQUIRE(std::abs(d1(1.3, cs).value() - 0.5) < 1e-15);
    REQUIRE(std::abs(d1(1.3, cs).deriv(1)) < 1e-15);

    auto d2 = parse_datum("kappa/2");
    auto ref = half_curvature_datum();
    for (int k = 0; k < 3; ++k)
        REQUIRE(std::abs(d2(1.3, cs).deriv(k) - ref(1.3, cs).deriv(k)) < 1e-13);

    auto d3 = parse_datum("0.1 + 0.02*sin(x)^2");
    double x = 1.3;
    REQUIRE(std::abs(d3(x, cs).value() - (0.1 + 0.02 * std::sin(x) * std::sin(x))) < 1e-14);
    REQUIRE(std::abs(d3(x, cs).deriv(1) - 0.04 * std::sin(x) * std::cos(x)) < 1e-13);

    auto d4 = parse_datum("pi*exp(-x)");
    REQUIRE(std::abs(d4(x, cs).value() - kPi * std::exp(-x)) < 1e-13);
    REQUIRE(std::abs(d4(x, cs).deriv(1) + kPi * std::exp(-x)) < 1e-13);

    auto d5 = parse_datum("sqrt(kappa)");
    REQUIRE(std::abs(d5(x, cs).value() - std::sqrt(cs.kappa)) < 1e-13);
}

TEST_CASE("malformed datum expressions are rejected") {
    REQUIRE_THROWS_AS(parse_datum("0.1+*"), invariant_error);
    REQUIRE_THROWS_AS(parse_datum("foo(x)"), invariant_error);
    REQUIRE_THROWS_AS(parse_datum("kappa("), invariant_error);
    REQUIRE_THROWS_AS(parse_datum(""), invariant_error);
    REQUIRE_THROWS_AS(parse_datum("sin(x"), invariant_error);
}
