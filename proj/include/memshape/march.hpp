#pragma once

// Row marching for the geometric Cauchy problem: starting from a curvature
// strip, integrate the prolonged system in the second principal direction.
// Each row is a curvature line; the x-dependence enters through the row
// derivatives of the second-order fiber variables, which close the system
// via a pointwise 4x4 solve.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "memshape/cauchy.hpp"
#include "memshape/coframe.hpp"
#include "memshape/errors.hpp"
#include "memshape/linalg.hpp"
#include "memshape/numerics.hpp"
#include "memshape/patch.hpp"

namespace memshape {

struct MarchOptions {
    double dy = 0.01;
    int rows = 64;              // steps beyond the initial row
    double umbilic_tol = 1e-7;  // stop when a - c falls below this
    double xi1_min = 1e-8;      // stop when the coordinate weight degenerates
};

struct MarchResult {
    PrincipalPatch patch;
    bool completed = false;
    int rows_completed = 0;  // rows marched beyond the strip
    std::string halt_reason;
};

namespace detail {

constexpr int kNodeDim = 24;  // P(3) + A(9) + fiber(10) + xi(2)

inline std::array<double, kNodeDim> pack_node(const PatchNode& n) {
    std::array<double, kNodeDim> s{};
    for (int i = 0; i < 3; ++i) s[i] = n.f.P[i];
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 3; ++i) s[3 + 3 * c + i] = n.f.A(i, c);
    const auto fib = n.f.fiber();
    for (int v = 0; v < 10; ++v) s[12 + v] = fib[v];
    s[22] = n.xi1;
    s[23] = n.xi2;
    return s;
}

inline PatchNode unpack_node(const std::array<double, kNodeDim>& s) {
    PatchNode n;
    n.f.P = {s[0], s[1], s[2]};
    for (int c = 0; c < 3; ++c) n.f.A.set_col(c, {s[3 + 3 * c], s[4 + 3 * c], s[5 + 3 * c]});
    std::array<double, 10> fib;
    for (int v = 0; v < 10; ++v) fib[v] = s[12 + v];
    n.f.set_fiber(fib);
    n.xi1 = s[22];
    n.xi2 = s[23];
    return n;
}

using Row = std::vector<std::array<double, kNodeDim>>;

struct MarchContext {
    ScalarExpr B1, B2, D1, D2, psi;
    MaterialParams mp;
    RowDeriv deriv;
    double umbilic_tol, xi1_min;

    MarchContext(const ScalarExpr& phi, const MaterialParams& mp_in, int nx, double dx,
                 bool closed, const MarchOptions& opt)
        : mp(mp_in), deriv(nx, dx, closed), umbilic_tol(opt.umbilic_tol), xi1_min(opt.xi1_min) {
        CurvatureCoefficients cc = curvature_coefficients(phi);
        B1 = cc.B1;
        B2 = cc.B2;
        D1 = cc.D1;
        D2 = cc.D2;
        psi = psi_from_phi(phi);
    }

    // y-derivative of a whole row
    Row rhs(const Row& row) const {
        const int nx = static_cast<int>(row.size());
        std::vector<double> gp1(nx), gq2(nx), gr(nx), gl(nx);
        for (int i = 0; i < nx; ++i) {
            gp1[i] = row[i][12 + SymP1];
            gq2[i] = row[i][12 + SymQ2];
            gr[i] = row[i][12 + SymR];
            gl[i] = row[i][12 + SymL];
        }
        const auto Dp1 = deriv.d1(gp1);
        const auto Dq2 = deriv.d1(gq2);
        const auto Dr = deriv.d1(gr);
        const auto Dl = deriv.d1(gl);

        Row out(row.size());
        for (int i = 0; i < nx; ++i) {
            const PatchNode n = unpack_node(row[i]);
            const FiberPoint& f = n.f;
            const double e = f.c - f.a;
            if (!std::isfinite(e) || f.a - f.c < umbilic_tol)
                throw numeric_error("march: umbilic point reached (a - c below tolerance)");
            if (!(n.xi1 > xi1_min))
                throw numeric_error("march: coordinate degeneration (xi1 below tolerance)");

            const double b1 = eval_scalar(B1, f, mp);
            const double b2 = eval_scalar(B2, f, mp);
            const double d1v = eval_scalar(D1, f, mp);
            const double d2v = eval_scalar(D2, f, mp);
            const double psi_v = eval_scalar(psi, f, mp);
            const double xi1 = n.xi1, xi2 = n.xi2;

            // unknowns: X2 of (p1, q2, r, l)
            std::vector<double> M = {
                xi1,      0.0,      xi2,     0.0,
                0.0,      xi2,      xi1,     0.0,
                -e * xi2, 0.0,      e * xi1, xi1,
                0.0,      -e * xi1, e * xi2, -xi2,
            };
            std::vector<double> rhs4 = {
                Dr[i] + xi1 * b1,
                Dq2[i] + xi1 * b2,
                xi1 * d1v - e * Dp1[i],
                e * Dr[i] - Dl[i] - xi1 * d2v,
            };
            std::vector<double> u = solve_dense(M, rhs4);

            std::array<double, kNodeDim>& d = out[i];
            d.fill(0.0);
            // dP/dy = A2
            const Vec3 A2 = f.A.col(1);
            d[0] = A2[0];
            d[1] = A2[1];
            d[2] = A2[2];
            // dA/dy = A * Theta with theta^2_1(X2) = q, theta^3_2(X2) = c
            Mat3 Theta{};
            Theta(0, 1) = -f.q;
            Theta(1, 0) = f.q;
            Theta(1, 2) = -f.c;
            Theta(2, 1) = f.c;
            const Mat3 dA = f.A * Theta;
            for (int c = 0; c < 3; ++c)
                for (int r2 = 0; r2 < 3; ++r2) d[3 + 3 * c + r2] = dA(r2, c);
            // fiber, first group
            const double k2 = f.a * f.c + f.p * f.p + f.q * f.q;
            d[12 + SymP] = f.r + 0.5 * k2;
            d[12 + SymQ] = f.q2;
            d[12 + SymA] = -f.p * e;
            d[12 + SymC] = f.c2;
            d[12 + SymA1] = 2.0 * f.a1 * f.p - e * f.p1;
            d[12 + SymC2] = -f.l + f.r * e + psi_v;
            // fiber, second group from the polar solve
            d[12 + SymP1] = u[0];
            d[12 + SymQ2] = u[1];
            d[12 + SymR] = u[2];
            d[12 + SymL] = u[3];
            // coordinate weights
            d[22] = -f.p * xi1;
            d[23] = -f.q * xi1;
        }
        return out;
    }
};

inline Row row_combine(const Row& base, std::initializer_list<std::pair<double, const Row*>> terms) {
    Row out = base;
    for (auto& [coef, term] : terms)
        for (size_t i = 0; i < out.size(); ++i)
            for (int k = 0; k < kNodeDim; ++k) out[i][k] += coef * (*term)[i][k];
    return out;
}

} // namespace detail

inline MarchResult march_patch(const CauchyStrip& strip, const ScalarExpr& phi,
                               const MaterialParams& mp, const MarchOptions& opt) {
    mp.check();
    const int nx = static_cast<int>(strip.nodes.size());
    if (nx < 8) throw invariant_error("march_patch: strip too short");
    if (opt.rows < 1) throw invariant_error("march_patch: need at least one row");
    if (!(opt.dy != 0) || !std::isfinite(opt.dy))
        throw invariant_error("march_patch: bad step size");

    detail::MarchContext ctx(phi, mp, nx, strip.dx, strip.closed, opt);

    MarchResult result;
    PrincipalPatch& patch = result.patch;
    patch.nx = nx;
    patch.dx = strip.dx;
    patch.dy = opt.dy;
    patch.x0 = strip.xs.empty() ? 0.0 : strip.xs.front();
    patch.closed_x = strip.closed;
    patch.nodes.reserve(static_cast<size_t>(nx) * (opt.rows + 1));
    for (const auto& f : strip.nodes) {
        PatchNode n;
        n.f = f;
        patch.nodes.push_back(n);
    }
    patch.ny = 1;

    detail::Row row(nx);
    for (int i = 0; i < nx; ++i) row[i] = detail::pack_node(patch.nodes[i]);

    const double h = opt.dy;
    for (int step = 0; step < opt.rows; ++step) {
        detail::Row next;
        try {
            const detail::Row k1 = ctx.rhs(row);
            const detail::Row y2 = detail::row_combine(row, {{0.5 * h, &k1}});
            const detail::Row k2 = ctx.rhs(y2);
            const detail::Row y3 = detail::row_combine(row, {{0.5 * h, &k2}});
            const detail::Row k3 = ctx.rhs(y3);
            const detail::Row y4 = detail::row_combine(row, {{h, &k3}});
            const detail::Row k4 = ctx.rhs(y4);
            next = detail::row_combine(
                row, {{h / 6, &k1}, {h / 3, &k2}, {h / 3, &k3}, {h / 6, &k4}});
        } catch (const numeric_error& err) {
            result.halt_reason = err.what();
            return result;
        }

        // sanity gates on the candidate row, then frame cleanup
        bool ok = true;
        std::string reason;
        for (int i = 0; i < nx && ok; ++i) {
            for (int k = 0; k < detail::kNodeDim; ++k)
                if (!std::isfinite(next[i][k])) {
                    ok = false;
                    reason = "march: non-finite state";
                    break;
                }
            if (!ok) break;
            PatchNode n = detail::unpack_node(next[i]);
            if (n.f.a - n.f.c < ctx.umbilic_tol) {
                ok = false;
                reason = "march: umbilic point reached (a - c below tolerance)";
            } else if (!(n.xi1 > ctx.xi1_min)) {
                ok = false;
                reason = "march: coordinate degeneration (xi1 below tolerance)";
            } else if (orthonormality_defect(n.f.A) > 0.05) {
                ok = false;
                reason = "march: frame drift too large for renormalization";
            }
        }
        if (!ok) {
            result.halt_reason = reason;
            return result;
        }

        for (int i = 0; i < nx; ++i) {
            PatchNode n = detail::unpack_node(next[i]);
            n.f.A = polar_rotation(n.f.A);
            next[i] = detail::pack_node(n);
            patch.nodes.push_back(n);
        }
        row = std::move(next);
        patch.ny += 1;
        result.rows_completed = step + 1;
    }
    result.completed = true;
    return result;
}

} // namespace memshape
