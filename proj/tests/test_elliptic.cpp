#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "memshape/elliptic.hpp"
#include "memshape/linalg.hpp"

using namespace memshape;

// Independent oracle: K(m) = pi / (2 agm(1, sqrt(1-m))).
static double agm_K(double m) {
    double a = 1.0, b = std::sqrt(1.0 - m);
    for (int i = 0; i < 60 && std::abs(a - b) > 1e-17; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2 * a);
}

TEST_CASE("complete_K against the arithmetic-geometric mean") {
    REQUIRE(std::abs(complete_K(0.0) - kPi / 2) < 1e-15);
    for (double m : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999}) {
        CAPTURE(m);
        REQUIRE(std::abs(complete_K(m) - agm_K(m)) < 1e-13 * agm_K(m));
    }
}

TEST_CASE("carlson_rf special values") {
    REQUIRE(std::abs(carlson_rf(0.0, 1.0, 1.0) - kPi / 2) < 1e-14);
    REQUIRE(std::abs(carlson_rf(2.0, 2.0, 2.0) - 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("jacobi functions satisfy the algebraic identities") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> um(0.0, 0.9999);
    std::uniform_real_distribution<double> uu(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        double m = um(rng), u = uu(rng);
        auto jv = jacobi_elliptic(u, m);
        CAPTURE(u, m);
        REQUIRE(std::abs(jv.sn * jv.sn + jv.cn * jv.cn - 1.0) < 1e-10);
        REQUIRE(std::abs(jv.dn * jv.dn - (1.0 - m * jv.sn * jv.sn)) < 1e-10);
    }
}

TEST_CASE("jacobi functions at the circular limit") {
    for (double u : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
        auto jv = jacobi_elliptic(u, 0.0);
        REQUIRE(std::abs(jv.sn - std::sin(u)) < 1e-14);
        REQUIRE(std::abs(jv.cn - std::cos(u)) < 1e-14);
        REQUIRE(std::abs(jv.dn - 1.0) < 1e-14);
    }
}

TEST_CASE("jacobi functions near the hyperbolic limit") {
    double m = 1.0 - 1e-12;
    for (double u : {-1.5, 0.2, 2.5}) {
        auto jv = jacobi_elliptic(u, m);
        REQUIRE(std::abs(jv.sn - std::tanh(u)) < 1e-5);
        REQUIRE(std::abs(jv.cn - 1.0 / std::cosh(u)) < 1e-5);
    }
}

TEST_CASE("sn has period 4K") {
    for (double m : {0.2, 0.5, 0.8}) {
        double K = complete_K(m);
        for (double u : {0.3, 1.1, 2.9}) {
            auto j0 = jacobi_elliptic(u, m);
            auto j1 = jacobi_elliptic(u + 4 * K, m);
            REQUIRE(std::abs(j0.sn - j1.sn) < 1e-9);
            REQUIRE(std::abs(j0.cn - j1.cn) < 1e-9);
        }
    }
}

TEST_CASE("cn is even and 2K-antiperiodic") {
    double m = 0.63;
    double K = complete_K(m);
    for (double u : {0.4, 1.7}) {
        REQUIRE(std::abs(jacobi_elliptic(-u, m).cn - jacobi_elliptic(u, m).cn) < 1e-12);
        REQUIRE(std::abs(jacobi_elliptic(u + 2 * K, m).cn + jacobi_elliptic(u, m).cn) < 1e-9);
    }
}

TEST_CASE("adaptive quadrature hits tight tolerances") {
    auto q = quad_adaptive([](double x) { return 4.0 / (1.0 + x * x); }, 0.0, 1.0);
    REQUIRE(std::abs(q.value - kPi) < 1e-11);

    // narrow gaussian; forces subdivision
    double ref = std::sqrt(kPi / 50.0);
    auto q2 = quad_adaptive([](double x) { return std::exp(-50.0 * x * x); }, -8.0, 8.0);
    REQUIRE(std::abs(q2.value - ref) < 1e-11);
}

TEST_CASE("cn integrates to zero over its period") {
    double m = 0.4;
    double K = complete_K(m);
    auto q = quad_adaptive([m](double u) { return jacobi_elliptic(u, m).cn; }, 0.0, 4 * K);
    REQUIRE(std::abs(q.value) < 1e-9);
}
