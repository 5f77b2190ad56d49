#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "memshape/expr.hpp"

using namespace memshape;

namespace {

FiberPoint random_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    FiberPoint f;
    std::array<double, 10> v;
    for (auto& x : v) x = u(rng);
    f.set_fiber(v);
    return f;
}

}  // namespace

TEST_CASE("polynomial arithmetic is canonical") {
    auto p = ScalarExpr::sym(SymP), q = ScalarExpr::sym(SymQ);
    REQUIRE(p * q == q * p);
    REQUIRE((p + q) * (p - q) == p * p - q * q);
    REQUIRE(((p + q) * (p + q)) == (p * p + 2.0 * (p * q) + q * q));
    REQUIRE((p - p).is_zero());
    REQUIRE(ScalarExpr::constant(0.0).is_zero());
}

TEST_CASE("evaluation matches hand computation") {
    std::mt19937 rng(3);
    auto p = ScalarExpr::sym(SymP), q = ScalarExpr::sym(SymQ), a = ScalarExpr::sym(SymA);
    auto e = 2.0 * (p * p * q) - a + ScalarExpr::constant(0.5);
    for (int i = 0; i < 20; ++i) {
        FiberPoint f = random_point(rng);
        double want = 2 * f.p * f.p * f.q - f.a + 0.5;
        REQUIRE(std::abs(e.eval(f) - want) < 1e-14);
    }
}

TEST_CASE("differentiation is linear and Leibniz") {
    auto p = ScalarExpr::sym(SymP), q = ScalarExpr::sym(SymQ);
    auto e = p * p * q + 3.0 * q;
    REQUIRE(e.diff(SymP) == 2.0 * (p * q));
    REQUIRE(e.diff(SymQ) == p * p + ScalarExpr::constant(3.0));
    REQUIRE(e.diff(SymA).is_zero());
    // d/dp (p^3) = 3 p^2
    REQUIRE((p * p * p).diff(SymP) == 3.0 * (p * p));
}

TEST_CASE("material constants admit negative powers") {
    auto k = ScalarExpr::sym(SymK);
    auto invk = k.pow(-1);
    MaterialParams mp;
    mp.k = 2.5;
    FiberPoint f;
    REQUIRE(std::abs(invk.eval(f, mp) - 0.4) < 1e-15);
    REQUIRE((k * invk == ScalarExpr::constant(1.0)));
    // d/dk k^{-1} = -k^{-2}
    REQUIRE(invk.diff(SymK) == -1.0 * k.pow(-2));
}

TEST_CASE("fiber variables reject negative powers") {
    auto p = ScalarExpr::sym(SymP);
    REQUIRE_THROWS_AS(p.pow(-1), invariant_error);
    auto q = ScalarExpr::sym(SymQ);
    REQUIRE_THROWS_AS((q + q * p) / p, invariant_error);  // p does not divide q
}

TEST_CASE("division by a monomial works when exact") {
    auto p = ScalarExpr::sym(SymP), q = ScalarExpr::sym(SymQ);
    auto e = (p * p * q + 2.0 * (p * q * q)) / p;
    REQUIRE(e == p * q + 2.0 * (q * q));
    REQUIRE_THROWS_AS(e / ScalarExpr::constant(0.0), invariant_error);
    REQUIRE_THROWS_AS(e / (p + q), invariant_error);  // only monomial divisors
}

TEST_CASE("depends_on reports the variable support") {
    auto p = ScalarExpr::sym(SymP), l = ScalarExpr::sym(SymL);
    auto e = p * l + ScalarExpr::constant(1.0);
    REQUIRE(e.depends_on(SymP));
    REQUIRE(e.depends_on(SymL));
    REQUIRE_FALSE(e.depends_on(SymQ2));
}

TEST_CASE("pow matches repeated multiplication") {
    auto p = ScalarExpr::sym(SymP), q = ScalarExpr::sym(SymQ);
    auto base = p + 2.0 * q;
    REQUIRE(base.pow(0) == ScalarExpr::constant(1.0));
    REQUIRE(base.pow(3) == base * base * base);
}

TEST_CASE("text rendering round-trips simple expressions by eye") {
    auto p = ScalarExpr::sym(SymP);
    REQUIRE(ScalarExpr::constant(0.0).text() == "0");
    REQUIRE((p * p).text() == "p^2");
}
