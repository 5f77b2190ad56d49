#pragma once

// Principal-coordinate patches: a grid of fiber points plus the coordinate
// weights (xi1, xi2) tying the x coordinate to the orthonormal frame, with
// the full validation battery for marched solutions.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "memshape/errors.hpp"
#include "memshape/expr.hpp"
#include "memshape/numerics.hpp"
#include "memshape/shape.hpp"
#include "memshape/types.hpp"

namespace memshape {

struct PatchNode {
    FiberPoint f;
    double xi1 = 1;  // dx = xi1 X1 + xi2 X2, dy = X2
    double xi2 = 0;
};

struct PrincipalPatch {
    int nx = 0, ny = 0;
    double dx = 0, dy = 0;
    double x0 = 0, y0 = 0;
    bool closed_x = false;
    std::vector<PatchNode> nodes;  // row-major, node(i, j) at x-index i, y-index j

    PatchNode& at(int i, int j) { return nodes[static_cast<size_t>(j) * nx + i]; }
    const PatchNode& at(int i, int j) const { return nodes[static_cast<size_t>(j) * nx + i]; }

    std::vector<double> grid(const std::function<double(const PatchNode&)>& get) const {
        std::vector<double> g(nodes.size());
        for (size_t k = 0; k < nodes.size(); ++k) g[k] = get(nodes[k]);
        return g;
    }
};

namespace detail {

// Directional derivatives over the whole grid.
class GridDeriv {
public:
    GridDeriv(const PrincipalPatch& p)
        : nx_(p.nx), ny_(p.ny), dxop_(p.nx, p.dx, p.closed_x), dyop_(p.ny, p.dy, false) {}

    std::vector<double> ddx(const std::vector<double>& g) const {
        std::vector<double> out(g.size());
        std::vector<double> row(nx_);
        for (int j = 0; j < ny_; ++j) {
            for (int i = 0; i < nx_; ++i) row[i] = g[static_cast<size_t>(j) * nx_ + i];
            auto d = dxop_.d1(row);
            for (int i = 0; i < nx_; ++i) out[static_cast<size_t>(j) * nx_ + i] = d[i];
        }
        return out;
    }

    std::vector<double> ddy(const std::vector<double>& g) const {
        std::vector<double> out(g.size());
        std::vector<double> col(ny_);
        for (int i = 0; i < nx_; ++i) {
            for (int j = 0; j < ny_; ++j) col[j] = g[static_cast<size_t>(j) * nx_ + i];
            auto d = dyop_.d1(col);
            for (int j = 0; j < ny_; ++j) out[static_cast<size_t>(j) * nx_ + i] = d[j];
        }
        return out;
    }

private:
    int nx_, ny_;
    RowDeriv dxop_, dyop_;
};

} // namespace detail

struct PatchValidation {
    double gauss_max = 0;         // X2 p - X1 q - (a c + p^2 + q^2)
    double codazzi_a_max = 0;     // X2 a + p (c - a)
    double codazzi_c_max = 0;     // X1 c + q (c - a)
    std::array<double, 6> second_order{};  // a21, a12, a22, c21, c12, c11
    double second_order_max = 0;
    double mixed_a_max = 0;       // a12 - a21 - (p a1 + q a2), grid derivatives
    double mixed_c_max = 0;
    double shape_fd_max = 0;      // Laplace-Beltrami of H vs Phi(a, c)
    double shape_state_max = 0;   // state-path shape residual
    double frame_defect_max = 0;
    double margin_min = 0;        // min (a - c)/2
    double xi1_min = 0;

    double pde_worst() const {
        double w = std::max({gauss_max, codazzi_a_max, codazzi_c_max, second_order_max,
                             mixed_a_max, mixed_c_max});
        return w;
    }
};

inline PatchValidation validate_patch(const PrincipalPatch& p, const ScalarExpr& phi,
                                      const MaterialParams& mp) {
    if (p.nx < 8 || p.ny < 8) throw invariant_error("validate_patch: grid too small");
    detail::GridDeriv D(p);
    const size_t N = p.nodes.size();

    auto g_p = p.grid([](const PatchNode& n) { return n.f.p; });
    auto g_q = p.grid([](const PatchNode& n) { return n.f.q; });
    auto g_a = p.grid([](const PatchNode& n) { return n.f.a; });
    auto g_c = p.grid([](const PatchNode& n) { return n.f.c; });
    auto g_a1 = p.grid([](const PatchNode& n) { return n.f.a1; });
    auto g_c2 = p.grid([](const PatchNode& n) { return n.f.c2; });
    auto g_xi1 = p.grid([](const PatchNode& n) { return n.xi1; });
    auto g_xi2 = p.grid([](const PatchNode& n) { return n.xi2; });

    // frame-directional derivatives: X2 = d/dy, X1 = (d/dx - xi2 d/dy)/xi1
    auto X1 = [&](const std::vector<double>& g) {
        auto gx = D.ddx(g);
        auto gy = D.ddy(g);
        std::vector<double> out(g.size());
        for (size_t k = 0; k < g.size(); ++k) out[k] = (gx[k] - g_xi2[k] * gy[k]) / g_xi1[k];
        return out;
    };
    auto X2 = [&](const std::vector<double>& g) { return D.ddy(g); };

    PatchValidation out;
    out.margin_min = std::numeric_limits<double>::infinity();
    out.xi1_min = std::numeric_limits<double>::infinity();
    for (const auto& n : p.nodes) {
        out.margin_min = std::min(out.margin_min, 0.5 * (n.f.a - n.f.c));
        out.xi1_min = std::min(out.xi1_min, n.xi1);
        out.frame_defect_max =
            std::max(out.frame_defect_max,
                     orthonormality_defect(n.f.A) + std::abs(det(n.f.A) - 1.0));
        out.shape_state_max =
            std::max(out.shape_state_max, std::abs(shape_residual_state(n.f, phi, mp)));
    }

    auto p2 = X2(g_p), q1 = X1(g_q);
    auto a1g = X1(g_a), a2g = X2(g_a);
    auto c1g = X1(g_c), c2g = X2(g_c);
    for (size_t k = 0; k < N; ++k) {
        const double e = g_c[k] - g_a[k];
        const double k2 = g_a[k] * g_c[k] + g_p[k] * g_p[k] + g_q[k] * g_q[k];
        out.gauss_max = std::max(out.gauss_max, std::abs(p2[k] - q1[k] - k2));
        out.codazzi_a_max = std::max(out.codazzi_a_max, std::abs(a2g[k] + g_p[k] * e));
        out.codazzi_c_max = std::max(out.codazzi_c_max, std::abs(c1g[k] + g_q[k] * e));
    }

    // second-order identities; ae = a - c
    auto g_p1 = p.grid([](const PatchNode& n) { return n.f.p1; });
    auto g_q2 = p.grid([](const PatchNode& n) { return n.f.q2; });
    auto g_r = p.grid([](const PatchNode& n) { return n.f.r; });
    auto a21 = X1(a2g), a12 = X2(a1g), a22 = X2(a2g);
    auto c21 = X1(c2g), c12 = X2(c1g), c11 = X1(c1g);
    for (size_t k = 0; k < N; ++k) {
        const double ae = g_a[k] - g_c[k];
        const double k2 = g_a[k] * g_c[k] + g_p[k] * g_p[k] + g_q[k] * g_q[k];
        const double pk = g_p[k], qk = g_q[k];
        const double r0 = std::abs(a21[k] - ((g_p1[k] - pk * qk) * ae + pk * g_a1[k]));
        const double r1 = std::abs(a12[k] - (2 * pk * g_a1[k] + g_p1[k] * ae));
        const double r2 = std::abs(a22[k] - ((g_r[k] + 0.5 * k2) * ae + pk * pk * ae - pk * g_c2[k]));
        const double r3 = std::abs(c21[k] - (g_q2[k] * ae - 2 * qk * g_c2[k]));
        const double r4 = std::abs(c12[k] - ((g_q2[k] + pk * qk) * ae - qk * g_c2[k]));
        const double r5 =
            std::abs(c11[k] - ((g_r[k] - 0.5 * k2) * ae + qk * g_a1[k] - qk * qk * ae));
        const double rs[6] = {r0, r1, r2, r3, r4, r5};
        for (int s = 0; s < 6; ++s) out.second_order[s] = std::max(out.second_order[s], rs[s]);
        const double mixed_a = std::abs(a12[k] - a21[k] - (pk * a1g[k] + qk * a2g[k]));
        const double mixed_c = std::abs(c12[k] - c21[k] - (pk * c1g[k] + qk * c2g[k]));
        out.mixed_a_max = std::max(out.mixed_a_max, mixed_a);
        out.mixed_c_max = std::max(out.mixed_c_max, mixed_c);
    }
    for (double v : out.second_order) out.second_order_max = std::max(out.second_order_max, v);

    // Laplace-Beltrami of H against the curvature potential.
    std::vector<double> H(N), phi_vals(N);
    for (size_t k = 0; k < N; ++k) {
        H[k] = 0.5 * (g_a[k] + g_c[k]);
        phi_vals[k] = eval_scalar(phi, p.nodes[k].f, mp);
    }
    auto Hx = D.ddx(H);
    auto Hy = D.ddy(H);
    std::vector<double> fx(N), fy(N);
    for (size_t k = 0; k < N; ++k) {
        const double xi1 = g_xi1[k], xi2 = g_xi2[k];
        const double sg = xi1;  // sqrt(det g)
        const double g11 = 1.0 / (xi1 * xi1);
        const double g12 = -xi2 / (xi1 * xi1);
        const double g22 = (xi1 * xi1 + xi2 * xi2) / (xi1 * xi1);
        fx[k] = sg * (g11 * Hx[k] + g12 * Hy[k]);
        fy[k] = sg * (g12 * Hx[k] + g22 * Hy[k]);
    }
    auto dfx = D.ddx(fx);
    auto dfy = D.ddy(fy);
    for (size_t k = 0; k < N; ++k) {
        const double lap = (dfx[k] + dfy[k]) / g_xi1[k];
        out.shape_fd_max = std::max(out.shape_fd_max, std::abs(lap - phi_vals[k]));
    }
    return out;
}

struct EnergyBreakdown {
    double bending = 0;   // (k/2) integral (2H + c0)^2 dA
    double gaussian = 0;  // kbar integral K dA
    double tension = 0;   // lambda * area
    double area = 0;
    double total = 0;     // bending + gaussian + tension (no pressure term)
};

// Helfrich functional over the patch. The pressure term needs an enclosed
// volume and is omitted; open patches have none.
inline EnergyBreakdown helfrich_energy(const PrincipalPatch& p, const MaterialParams& mp) {
    mp.check();
    if (p.nx < 2 || p.ny < 5) throw invariant_error("helfrich_energy: grid too small");
    EnergyBreakdown out;
    std::vector<double> row_b(p.ny), row_g(p.ny), row_a(p.ny);
    std::vector<double> fb(p.nx), fg(p.nx), fa(p.nx);
    for (int j = 0; j < p.ny; ++j) {
        for (int i = 0; i < p.nx; ++i) {
            const PatchNode& n = p.at(i, j);
            const double dA = n.xi1;  // area density
            const double twoH = n.f.a + n.f.c;
            fb[i] = 0.5 * mp.k * (twoH + mp.c0) * (twoH + mp.c0) * dA;
            fg[i] = mp.kbar * n.f.a * n.f.c * dA;
            fa[i] = dA;
        }
        row_b[j] = integrate_uniform(fb, p.dx, p.closed_x);
        row_g[j] = integrate_uniform(fg, p.dx, p.closed_x);
        row_a[j] = integrate_uniform(fa, p.dx, p.closed_x);
    }
    out.bending = integrate_uniform(row_b, p.dy, false);
    out.gaussian = integrate_uniform(row_g, p.dy, false);
    out.area = integrate_uniform(row_a, p.dy, false);
    out.tension = mp.lambda * out.area;
    out.total = out.bending + out.gaussian + out.tension;
    return out;
}

} // namespace memshape
