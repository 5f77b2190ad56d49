#pragma once

// Complete elliptic integral K(m), Jacobi elliptic functions, and adaptive
// quadrature. The parameter convention is m = k^2 throughout: sn(u|m) etc.

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "memshape/errors.hpp"

namespace memshape {

// Carlson symmetric integral R_F(x, y, z) by the duplication theorem.
inline double carlson_rf(double x, double y, double z) {
    if (x < 0 || y < 0 || z < 0 || x + y <= 0 || y + z <= 0 || z + x <= 0)
        throw invariant_error("carlson_rf: arguments out of domain");
    const double errtol = 0.0012;
    double xt = x, yt = y, zt = z;
    double mu = 0, dx = 0, dy = 0, dz = 0;
    for (int it = 0; it < 200; ++it) {
        double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        double lam = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        mu = (xt + yt + zt) / 3.0;
        dx = (mu - xt) / mu;
        dy = (mu - yt) / mu;
        dz = (mu - zt) / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) {
            double e2 = dx * dy - dz * dz;
            double e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
        }
    }
    throw numeric_error("carlson_rf: no convergence");
}

// Complete elliptic integral of the first kind, parameter m in [0, 1).
inline double complete_K(double m) {
    if (!(m >= 0.0 && m < 1.0)) throw invariant_error("complete_K: m must lie in [0,1)");
    return carlson_rf(0.0, 1.0 - m, 1.0);
}

struct JacobiValues {
    double sn, cn, dn;
};

// sn, cn, dn via the arithmetic-geometric mean / descending Landen sequence
// and the backward amplitude recurrence.
inline JacobiValues jacobi_elliptic(double u, double m) {
    if (!(m >= 0.0 && m < 1.0)) throw invariant_error("jacobi_elliptic: m must lie in [0,1)");
    if (m < 1e-14) return {std::sin(u), std::cos(u), 1.0};

    std::array<double, 32> a{}, c{};
    a[0] = 1.0;
    double b = std::sqrt(1.0 - m);
    c[0] = std::sqrt(m);
    int n = 0;
    while (std::abs(c[n]) > 1e-16 * a[n] && n < 30) {
        double an = 0.5 * (a[n] + b);
        double cn1 = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
        a[n] = an;
        c[n] = cn1;
    }
    double phi = std::ldexp(a[n] * u, n);
    double phi_prev = phi;  // phi at level n, needed one level above the last
    for (int i = n; i >= 1; --i) {
        double s = std::sin(phi);
        double arg = (c[i] / a[i]) * s;
        arg = std::clamp(arg, -1.0, 1.0);
        double next = 0.5 * (phi + std::asin(arg));
        phi_prev = phi;
        phi = next;
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    // A&S 16.4.3; phi_prev is the amplitude one Landen level up
    double denom = std::cos(phi_prev - phi);
    double dn = (std::abs(denom) > 1e-12) ? cn / denom : std::sqrt(1.0 - m * sn * sn);
    return {sn, cn, dn};
}

struct QuadResult {
    double value = 0;
    double error = 0;
    int segments = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkEstimate {
    double integral;
    double error;
};

template <class F>
GkEstimate gk15(const F& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kron = 0, gauss = 0;
    for (int i = 0; i < 7; ++i) {
        double x = h * kKronrodNodes[i];
        double fv = f(mid - x) + f(mid + x);
        kron += kKronrodWeights[i] * fv;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fv;
    }
    double fc = f(mid);
    kron += kKronrodWeights[7] * fc;
    gauss += kGaussWeights[3] * fc;
    kron *= h;
    gauss *= h;
    double err = std::abs(kron - gauss);
    // standard sharpening of the raw difference
    double scaled = err > 0 ? std::pow(200.0 * err, 1.5) : 0.0;
    return {kron, std::min(err, scaled)};
}

} // namespace detail

// Adaptive Gauss-Kronrod quadrature of f over [a, b] to absolute tolerance tol.
inline QuadResult quad_adaptive(const std::function<double(double)>& f, double a, double b,
                                double tol = 1e-11, int max_segments = 4000) {
    if (!(tol > 0)) throw invariant_error("quad_adaptive: tolerance must be positive");
    if (a == b) return {0.0, 0.0, 0};
    struct Seg {
        double a, b, value, error;
    };
    auto first = detail::gk15(f, a, b);
    std::vector<Seg> segs{{a, b, first.integral, first.error}};
    int splits = 0;
    const double span = std::abs(b - a);
    while (true) {
        double total_err = 0;
        int worst = -1;
        double worst_err = 0;
        for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
            total_err += segs[i].error;
            if (segs[i].error > worst_err) {
                worst_err = segs[i].error;
                worst = i;
            }
        }
        if (total_err <= tol) break;
        if (static_cast<int>(segs.size()) >= max_segments ||
            std::abs(segs[worst].b - segs[worst].a) < span * 1e-13) {
            double best = 0;
            for (const auto& s : segs) best += s.value;
            std::ostringstream os;
            os << "quad_adaptive: error budget exhausted; best estimate " << best
               << " with error " << total_err;
            throw numeric_error(os.str());
        }
        Seg s = segs[worst];
        double mid = 0.5 * (s.a + s.b);
        auto l = detail::gk15(f, s.a, mid);
        auto r = detail::gk15(f, mid, s.b);
        segs[worst] = {s.a, mid, l.integral, l.error};
        segs.push_back({mid, s.b, r.integral, r.error});
        ++splits;
    }
    QuadResult out;
    for (const auto& s : segs) {
        out.value += s.value;
        out.error += s.error;
    }
    out.segments = static_cast<int>(segs.size());
    (void)splits;
    return out;
}

} // namespace memshape
