#pragma once

// The two-parameter family (sigma < 0, 0 <= rho < 1) of equilibrium
// cylinders: closed-form elliptic curvature profiles for the directrix,
// closure index and its level sets, topology probes of the synthesized
// curves, and extrusion to principal patches.

#include <cmath>
#include <string>
#include <vector>

#include "memshape/elliptic.hpp"
#include "memshape/errors.hpp"
#include "memshape/expr.hpp"
#include "memshape/numerics.hpp"
#include "memshape/patch.hpp"
#include "memshape/polyline.hpp"
#include "memshape/types.hpp"

namespace memshape {

struct FamilyConstants {
    double sigma = 0, rho = 0;
    double w0 = 0, w2 = 0;       // first integral: (k')^2 + (k^4 + w2 k^2 + k + w0)/4 = 0
    double g = 0, m = 0;         // cn(g s | m)
    double a1 = 0, a2 = 0;       // numerator amplitudes
    double b1 = 0, b2 = 0;       // denominator amplitudes
    double omega = 0;            // curvature period 4 K(m) / g
    double kappa_at_0 = 0;       // kappa at cn = 1
    double kappa_at_half = 0;    // kappa at cn = -1
    MaterialParams materials;    // Helfrich constants realizing the family
    double eps = -1;             // co-orientation sign in the curve ODEs
};

inline FamilyConstants family_constants(double sigma, double rho) {
    if (!(sigma < 0)) throw invariant_error("family_constants: sigma must be negative");
    if (!(rho >= 0 && rho < 1)) throw invariant_error("family_constants: rho must be in [0, 1)");

    FamilyConstants fc;
    fc.sigma = sigma;
    fc.rho = rho;
    const double s3 = sigma * sigma * sigma;
    const double s2 = sigma * sigma;
    const double u = std::pow(-sigma, 1.5);  // so u^2 = -sigma^3
    const double inner = 1 + s3 * s3 + s3 * (4 * rho * rho - 2);  // = (1 - s3)^2 + 4 s3 rho^2
    if (!(inner > 0)) throw numeric_error("family_constants: degenerate parameters");

    fc.w0 = (1 + 4 * s3 * rho * rho) * (1 + 4 * s3 * (rho * rho - 1)) / (16 * s2 * s2);
    fc.w2 = -1 / (2 * s2) + sigma * (2 * rho * rho - 1);
    fc.g = -(1 / (2 * sigma)) * std::pow(inner, 0.25);
    fc.m = 0.5 + (s3 * (1 - 2 * rho * rho) - 1) / (2 * std::sqrt(inner));
    if (fc.m < 0 && fc.m > -1e-14) fc.m = 0;
    if (!(fc.m >= 0 && fc.m < 1)) throw numeric_error("family_constants: modulus out of range");

    const double rad_p = 1 - s3 + 2 * rho * u;  // = (u + rho)^2 + 1 - rho^2 > 0
    const double rad_m = 1 - s3 - 2 * rho * u;  // = (u - rho)^2 + 1 - rho^2 > 0
    const double A1 = (1 / (2 * s2)) * std::sqrt(rad_p) * (1 - 2 * rho * u);
    const double A2 = (1 / (2 * s2)) * std::sqrt(rad_m) * (1 + 2 * rho * u);
    const double B1 = (1 / sigma) * std::sqrt(rad_p);
    const double B2 = (1 / sigma) * std::sqrt(rad_m);
    fc.a1 = A1 - A2;
    fc.a2 = -(A1 + A2);
    fc.b1 = B1 - B2;
    fc.b2 = -(B1 + B2);
    fc.kappa_at_0 = A2 / B2;    // cn = +1
    fc.kappa_at_half = A1 / B1; // cn = -1
    fc.omega = 4 * complete_K(fc.m) / fc.g;

    fc.materials.k = 1.0;
    fc.materials.c0 = 0.0;
    fc.materials.lambda = -fc.w2 / 4.0;
    fc.materials.pressure = 1.0 / 8.0;
    fc.eps = -1.0;
    return fc;
}

inline double kappa_family(const FamilyConstants& fc, double s) {
    const double cn = jacobi_elliptic(fc.g * s, fc.m).cn;
    return (fc.a1 * cn + fc.a2) / (fc.b1 * cn + fc.b2);
}

inline double dkappa_family(const FamilyConstants& fc, double s) {
    const JacobiValues jv = jacobi_elliptic(fc.g * s, fc.m);
    const double den = fc.b1 * jv.cn + fc.b2;
    return (fc.a1 * fc.b2 - fc.a2 * fc.b1) * fc.g * (-jv.sn * jv.dn) / (den * den);
}

// Discriminant of t^4 + w2 t^2 + t + w0; negative iff the quartic has exactly
// two (distinct) real roots.
struct QuarticStructure {
    double discriminant = 0;
    bool two_real_two_complex = false;
};

inline QuarticStructure quartic_structure(double w2, double w0) {
    const double p = w2, q = 1.0, r = w0;
    const double disc = 256 * r * r * r - 128 * p * p * r * r + 144 * p * q * q * r -
                        27 * q * q * q * q + 16 * p * p * p * p * r - 4 * p * p * p * q * q;
    return {disc, disc < 0};
}

// Closure index: total turning of one curvature period over 2 pi, as a
// positive number (the family winds clockwise).
inline double closure_index(const FamilyConstants& fc) {
    auto k = [&fc](double s) { return kappa_family(fc, s); };
    const double turn = quad_adaptive(k, 0.0, fc.omega, 1e-12).value;
    return std::abs(turn) / (2 * kPi);
}

inline double closure_index(double sigma, double rho) {
    return closure_index(family_constants(sigma, rho));
}

// Level set of the closure index: sigma with closure_index = 1/upsilon at the
// given rho, found by continuation from the closed-form circle seed.
inline double solve_phi(int upsilon, double rho, double tol = 1e-13) {
    if (upsilon < 2) throw invariant_error("solve_phi: upsilon must be at least 2");
    if (!(rho >= 0 && rho < 1)) throw invariant_error("solve_phi: rho must be in [0, 1)");
    const double target = 1.0 / upsilon;
    double sigma = -std::cbrt(static_cast<double>(upsilon) * upsilon - 1.0);

    const int steps = std::max(1, static_cast<int>(std::ceil(rho / 0.05)));
    for (int k = 1; k <= steps; ++k) {
        const double r = rho * k / steps;
        auto f = [r, target](double s) { return closure_index(s, r) - target; };
        double d = std::max(0.02, 0.02 * std::abs(sigma));
        double lo = sigma - d, hi = std::min(sigma + d, -1e-3);
        double flo = f(lo), fhi = f(hi);
        int expand = 0;
        while (flo * fhi > 0) {
            if (++expand > 40) throw numeric_error("solve_phi: failed to bracket the level set");
            d *= 1.7;
            lo = sigma - d;
            hi = std::min(sigma + d, -1e-3);
            flo = f(lo);
            fhi = f(hi);
        }
        sigma = brent_root(f, lo, hi, tol);
    }
    return sigma;
}

// Directrix synthesized by integrating theta' = kappa, alpha' = (cos, sin).
struct SynthesizedCurve {
    std::vector<double> s, theta, kappa;
    PlanePolyline poly;
    double length = 0;
    double closure_gap = 0;   // |alpha(L) - alpha(0)|
    double turning = 0;       // (theta(L) - theta(0)) / 2 pi
};

inline SynthesizedCurve synthesize_curve(const FamilyConstants& fc, int periods, int n_out,
                                         int substeps_per_node = 8) {
    if (periods < 1 || n_out < 16) throw invariant_error("synthesize_curve: bad sampling");
    SynthesizedCurve out;
    const double L = periods * fc.omega;
    out.length = L;
    const double dn = L / n_out;
    out.s.reserve(n_out + 1);
    out.theta.reserve(n_out + 1);
    out.kappa.reserve(n_out + 1);
    out.poly.pts.reserve(n_out);
    out.poly.closed = true;

    double theta = 0;
    Vec2 pos{0, 0};
    // state (theta, x, y); theta' = kappa(s) is known in closed form, so the
    // RK4 stages use exact curvature values
    for (int i = 0; i <= n_out; ++i) {
        if (i < n_out) out.poly.pts.push_back(pos);
        out.s.push_back(i * dn);
        out.theta.push_back(theta);
        out.kappa.push_back(kappa_family(fc, i * dn));
        if (i == n_out) break;
        const double h = dn / substeps_per_node;
        for (int k = 0; k < substeps_per_node; ++k) {
            const double s0 = i * dn + k * h;
            const double k1 = kappa_family(fc, s0);
            const double k2 = kappa_family(fc, s0 + 0.5 * h);
            const double k4 = kappa_family(fc, s0 + h);
            // theta stages
            const double t1 = theta;
            const double t2 = theta + 0.5 * h * k1;
            const double t3 = theta + 0.5 * h * k2;
            const double t4 = theta + h * k2;  // k3 = k2 (kappa independent of theta)
            pos.x += (h / 6) * (std::cos(t1) + 2 * std::cos(t2) + 2 * std::cos(t3) + std::cos(t4));
            pos.y += (h / 6) * (std::sin(t1) + 2 * std::sin(t2) + 2 * std::sin(t3) + std::sin(t4));
            theta += (h / 6) * (k1 + 2 * k2 + 2 * k2 + k4);
        }
    }
    out.closure_gap = norm(pos - out.poly.pts.front());
    out.turning = (out.theta.back() - out.theta.front()) / (2 * kPi);
    return out;
}

// First integral of the curve ODEs: with w1 = 1, the position is recovered
// from theta, kappa, kappa' alone, up to a fixed translation.
inline Vec2 closed_form_position(const FamilyConstants& fc, double theta, double kappa,
                                 double dkappa) {
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    const Vec2 nrm{-std::sin(theta), std::cos(theta)};
    const Vec2 G = (kappa * kappa + fc.w2 / 2) * dir + (2 * dkappa) * nrm;
    return {4 * -G.y, 4 * G.x};
}

struct TopologyProbe {
    bool strictly_convex = false;
    int inflections = 0;
    int crossings = 0;
    bool crossings_reliable = true;
    int turning_number = 0;
    double closure_gap = 0;
};

inline TopologyProbe probe_topology(const FamilyConstants& fc, int periods, int n_out = 16384) {
    SynthesizedCurve syn = synthesize_curve(fc, periods, n_out);
    TopologyProbe out;
    std::vector<double> kappa_cyclic(syn.kappa.begin(), syn.kappa.end() - 1);
    out.inflections = sign_changes(kappa_cyclic, true);
    out.strictly_convex = out.inflections == 0 && fc.kappa_at_0 * fc.kappa_at_half > 0;
    IntersectionReport rep = self_intersections(syn.poly);
    out.crossings = static_cast<int>(rep.points.size());
    out.crossings_reliable = rep.reliable;
    out.turning_number = static_cast<int>(std::lround(syn.turning));
    out.closure_gap = syn.closure_gap;
    return out;
}

// rho at which the curvature loses its fixed sign along the solved family
// sigma = phi_upsilon(rho): the convex/nonconvex boundary.
inline double separating_rho_convexity(int upsilon, double lo = 1e-3, double hi = 0.5) {
    auto f = [upsilon](double rho) {
        const double sigma = solve_phi(upsilon, rho);
        const double u = std::pow(-sigma, 1.5);
        return 1.0 - 2.0 * rho * u;  // zero of the vanishing curvature extreme
    };
    return brent_root(f, lo, hi, 1e-10);
}

// rho at which the transversal self-intersection count of the closed
// directrix jumps past `threshold`, located by bisection to width `width`.
inline double separating_rho_crossings(int upsilon, int threshold, double lo, double hi,
                                       double width = 1e-5, int n_out = 16384) {
    auto count = [&](double rho) {
        const double sigma = solve_phi(upsilon, rho);
        return probe_topology(family_constants(sigma, rho), upsilon, n_out).crossings;
    };
    int clo = count(lo), chi = count(hi);
    if (clo >= threshold || chi < threshold)
        throw invariant_error("separating_rho_crossings: bracket does not straddle the jump");
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (count(mid) >= threshold)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Helfrich constants under which the extruded cylinder satisfies the shape
// PDE with the patch's normal: the pressure carries the co-orientation sign.
inline MaterialParams patch_materials(const FamilyConstants& fc) {
    MaterialParams mp = fc.materials;
    mp.pressure = fc.eps * fc.materials.pressure;
    return mp;
}

// Extrude the directrix of a fixed-sign-curvature member to a principal
// patch of the corresponding cylinder (rulings along z).
inline PrincipalPatch extrude_cylinder(const FamilyConstants& fc, int periods, int nx,
                                       double height, int ny) {
    if (nx < 8 || ny < 8) throw invariant_error("extrude_cylinder: grid too small");
    if (nx % 2 != 0) throw invariant_error("extrude_cylinder: nx must be even");
    if (!(fc.kappa_at_0 * fc.kappa_at_half > 0) || fc.kappa_at_0 > 0)
        throw invariant_error("extrude_cylinder: directrix curvature must stay negative");
    SynthesizedCurve syn = synthesize_curve(fc, periods, nx);
    const ScalarExpr phi = phi_helfrich();
    const MaterialParams mp = patch_materials(fc);

    PrincipalPatch p;
    p.nx = nx;
    p.ny = ny;
    p.dx = syn.length / nx;
    p.dy = height / (ny - 1);
    p.closed_x = true;
    p.nodes.resize(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        const double z = j * p.dy;
        for (int i = 0; i < nx; ++i) {
            const double theta = syn.theta[i];
            const double kap = syn.kappa[i];
            PatchNode n;
            n.f.P = {syn.poly.pts[i].x, syn.poly.pts[i].y, z};
            const Vec3 T{std::cos(theta), std::sin(theta), 0};
            const Vec3 R{0, 0, 1};
            n.f.A = Mat3::from_cols(T, R, cross(T, R));
            n.f.a = -kap;
            n.f.c = 0;
            n.f.a1 = -dkappa_family(fc, syn.s[i]);
            n.f.l = eval_scalar(phi, n.f, mp);
            n.xi1 = 1;
            n.xi2 = 0;
            n.f.check();
            p.nodes[static_cast<size_t>(j) * nx + i] = n;
        }
    }
    return p;
}

} // namespace memshape
