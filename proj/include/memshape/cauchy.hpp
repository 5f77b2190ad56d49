#pragma once

// Geometric Cauchy data: lift a space curve with prescribed mean curvature
// h(x) and conormal derivative hw(x) to an integral curve of the prolonged
// contact system (a curvature strip with full second-order fiber data).

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "memshape/coframe.hpp"
#include "memshape/curve.hpp"
#include "memshape/errors.hpp"
#include "memshape/expr.hpp"
#include "memshape/types.hpp"

namespace memshape {

// Scalar Cauchy datum along the curve, returned as an x-jet. h must be valid
// to second order, hw to first. The curve sample is available so data may be
// tied to the curve's own curvature.
using CauchyFn = std::function<Jet(double x, const CurveSample& cs)>;

inline CauchyFn constant_datum(double v) {
    return [v](double, const CurveSample&) { return Jet::constant(v); };
}

// h = kappa/2, the datum reproducing a cylinder over a planar convex curve.
inline CauchyFn half_curvature_datum() {
    return [](double, const CurveSample& cs) {
        Jet k;
        k.c[0] = cs.kappa;
        k.c[1] = cs.dkappa;
        k.c[2] = cs.d2kappa / 2.0;
        return 0.5 * k;
    };
}

struct StripOptions {
    double x0 = 0;       // arclength of the first node
    double a0 = -kPi / 2; // initial normal angle against the Frenet frame
    int n = 128;         // number of nodes
    double span = 0;     // arclength span for open curves (closed: full length)
};

struct CauchyStrip {
    std::vector<FiberPoint> nodes;
    std::vector<double> xs;      // arclength coordinates
    std::vector<double> s_vals;  // normal angle s(x)
    double dx = 0;
    bool closed = false;
    double margin = 0;  // min over nodes of (a - c)/2, positive iff admissible
};

namespace detail {

inline Jet curve_kappa_jet(const CurveSample& cs) {
    Jet k;
    k.c[0] = cs.kappa;
    k.c[1] = cs.dkappa;
    k.c[2] = cs.d2kappa / 2.0;
    return k;
}

inline Jet normal_angle_jet(double s, const CurveSample& cs) {
    Jet j;
    j.c[0] = s;
    j.c[1] = -cs.tau;
    j.c[2] = -cs.dtau / 2.0;
    return j;
}

} // namespace detail

// Assemble the full fiber point at one curve sample, given the normal angle s
// there. Fails with invariant_error when the admissibility margin
// m = -h - kappa sin(s) is not positive.
inline FiberPoint lift_curve_point(const CurveSample& cs, double s, const Jet& hj, const Jet& hwj,
                                   const ScalarExpr& phi, const MaterialParams& mp) {
    const Jet kj = detail::curve_kappa_jet(cs);
    const Jet sj = detail::normal_angle_jet(s, cs);
    auto [sin_s, cos_s] = jet_sincos(sj);

    const Jet pj = kj * cos_s;            // valid to order 2
    const Jet aj = -1.0 * (kj * sin_s);   // valid to order 2
    const Jet mj = -1.0 * hj + aj;        // margin (a - c)/2
    if (!(mj.value() > 0))
        throw invariant_error("lift_curve_point: inadmissible data, h >= -kappa sin(s) at x = " +
                              std::to_string(cs.x));
    const Jet cj = 2.0 * hj - aj;
    const Jet ej = cj - aj;               // c - a = -2m
    const Jet a1j = aj.d();               // valid to order 1
    const Jet qj = (2.0 * hj.d() - a1j) / (2.0 * mj);  // valid to order 1
    const Jet c2j = 2.0 * hwj + pj * ej;  // valid to order 1

    FiberPoint f;
    f.P = cs.alpha.value();
    const Vec3 W = cos_s.value() * cs.N + sin_s.value() * cs.B;
    const Vec3 JW = -sin_s.value() * cs.N + cos_s.value() * cs.B;
    f.A = Mat3::from_cols(cs.T, W, JW);

    f.p = pj.value();
    f.q = qj.value();
    f.a = aj.value();
    f.c = cj.value();
    f.p1 = pj.deriv(1);
    f.a1 = a1j.value();
    f.c2 = c2j.value();
    const double e = ej.value();
    f.q2 = -(c2j.deriv(1) + 2.0 * f.c2 * f.q) / e;
    const double k2 = f.a * f.c + f.p * f.p + f.q * f.q;
    f.r = qj.deriv(1) + 0.5 * k2;
    const double psi_val = eval_scalar(phi, f, mp) + f.p * f.c2 - f.q * f.a1;
    f.l = a1j.deriv(1) - f.r * e - psi_val;
    f.check();
    return f;
}

inline CauchyStrip build_integral_curve(const ArclengthCurve& curve, const CauchyFn& h,
                                        const CauchyFn& hw, const ScalarExpr& phi,
                                        const MaterialParams& mp, const StripOptions& opt) {
    mp.check();
    if (opt.n < 8) throw invariant_error("build_integral_curve: need at least 8 nodes");

    CauchyStrip strip;
    const bool closed = curve.closed();
    double span = closed ? curve.length() : opt.span;
    if (!(span > 0)) throw invariant_error("build_integral_curve: open curve needs positive span");

    const int n = opt.n;
    strip.dx = closed ? span / n : span / (n - 1);
    strip.xs.resize(n);
    strip.s_vals.resize(n);
    strip.nodes.reserve(n);

    auto tau_at = [&curve](double x) { return curve.sample(x).tau; };

    double s = opt.a0;
    double x_prev = opt.x0;
    strip.margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double x = opt.x0 + i * strip.dx;
        if (i > 0) {
            s -= quad_adaptive(tau_at, x_prev, x, 1e-12).value;
            x_prev = x;
        }
        strip.xs[i] = x;
        strip.s_vals[i] = s;
        const CurveSample cs = curve.sample(x);
        const Jet hj = h(x, cs);
        const Jet hwj = hw(x, cs);
        FiberPoint f = lift_curve_point(cs, s, hj, hwj, phi, mp);
        strip.margin = std::min(strip.margin, 0.5 * (f.a - f.c));
        strip.nodes.push_back(f);
    }

    strip.closed = closed;
    if (closed) {
        // The strip is periodic only if the normal angle returns to a0 mod 2 pi.
        const double s_end =
            s - quad_adaptive(tau_at, x_prev, opt.x0 + span, 1e-12).value;
        const double wrap = std::remainder(s_end - opt.a0, 2.0 * kPi);
        if (std::abs(wrap) > 1e-8) strip.closed = false;
    }
    return strip;
}

// Residuals of the ten generator forms along a node row, using centered
// finite differences for the tangent. Interior nodes only on open rows.
struct GeneratorResiduals {
    std::array<double, 10> max_abs{};
    std::array<int, 10> argmax{};

    double worst() const {
        double w = 0;
        for (double v : max_abs) w = std::max(w, v);
        return w;
    }
};

inline const char* generator_name(int k) {
    static const char* names[10] = {"alpha1", "alpha2", "alpha3", "alpha4", "beta1",
                                    "beta2",  "gamma1", "gamma2", "delta1", "delta2"};
    return names[k];
}

inline GeneratorResiduals verify_integral_curve(const std::vector<FiberPoint>& nodes, double dx,
                                                bool closed, const ScalarExpr& phi,
                                                const MaterialParams& mp) {
    const int n = static_cast<int>(nodes.size());
    if (n < 3) throw invariant_error("verify_integral_curve: need at least 3 nodes");
    StructureTable table(phi);
    const auto& gen = table.generators();

    GeneratorResiduals out;
    const int lo = closed ? 0 : 1;
    const int hi = closed ? n : n - 1;
    for (int i = lo; i < hi; ++i) {
        const FiberPoint& f = nodes[i];
        const FiberPoint& fp = nodes[(i + 1) % n];
        const FiberPoint& fm = nodes[(i - 1 + n) % n];
        const double inv2dx = 1.0 / (2.0 * dx);

        const Vec3 Pdot = inv2dx * (fp.P - fm.P);
        Mat3 Adot;
        for (int c = 0; c < 3; ++c) Adot.set_col(c, inv2dx * (fp.A.col(c) - fm.A.col(c)));

        std::array<double, kNumBasis1> w{};
        w[Th1] = dot(f.A.col(0), Pdot);
        w[Th2] = dot(f.A.col(1), Pdot);
        w[Th3] = dot(f.A.col(2), Pdot);
        w[Th21] = dot(f.A.col(1), Adot.col(0));
        w[Th31] = dot(f.A.col(2), Adot.col(0));
        w[Th32] = dot(f.A.col(2), Adot.col(1));
        const auto fu = f.fiber();
        const auto fpu = fp.fiber();
        const auto fmu = fm.fiber();
        for (int v = 0; v < kNumVars; ++v) w[basis_of_var(v)] = inv2dx * (fpu[v] - fmu[v]);

        for (int k = 0; k < 10; ++k) {
            const double res = std::abs(eval_form(gen[k], f, mp, w));
            if (res > out.max_abs[k]) {
                out.max_abs[k] = res;
                out.argmax[k] = i;
            }
        }
    }
    return out;
}

} // namespace memshape
