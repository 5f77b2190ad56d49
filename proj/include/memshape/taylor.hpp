#pragma once

// Truncated Taylor series ("jets") of fixed order 4. Coefficients are Taylor
// coefficients c_k = f^(k)/k!, so derivative(k) = c_k * k!.

#include <array>
#include <cmath>
#include <utility>

#include "memshape/errors.hpp"
#include "memshape/linalg.hpp"

namespace memshape {

inline constexpr int kJetOrder = 4;

struct Jet {
    std::array<double, kJetOrder + 1> c{};

    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    // The identity function t -> t expanded at t0.
    static Jet variable(double t0) {
        Jet j;
        j.c[0] = t0;
        j.c[1] = 1;
        return j;
    }
    double value() const { return c[0]; }
    double deriv(int k) const {
        double f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }
    // Jet of the derivative (one order lower, top coefficient zero).
    Jet d() const {
        Jet r;
        for (int k = 0; k < kJetOrder; ++k) r.c[k] = (k + 1) * c[k + 1];
        return r;
    }
};

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i <= kJetOrder; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}
inline Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i <= kJetOrder; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}
inline Jet operator-(const Jet& a) {
    Jet r;
    for (int i = 0; i <= kJetOrder; ++i) r.c[i] = -a.c[i];
    return r;
}
inline Jet operator*(double s, const Jet& a) {
    Jet r;
    for (int i = 0; i <= kJetOrder; ++i) r.c[i] = s * a.c[i];
    return r;
}
inline Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.c[0] += s;
    return r;
}
inline Jet operator-(const Jet& a, double s) {
    Jet r = a;
    r.c[0] -= s;
    return r;
}
inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i <= kJetOrder; ++i)
        for (int j = 0; i + j <= kJetOrder; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}
inline Jet operator/(const Jet& a, const Jet& b) {
    if (b.c[0] == 0) throw numeric_error("jet division by zero leading coefficient");
    Jet r;
    for (int k = 0; k <= kJetOrder; ++k) {
        double s = a.c[k];
        for (int j = 0; j < k; ++j) s -= r.c[j] * b.c[k - j];
        r.c[k] = s / b.c[0];
    }
    return r;
}

inline Jet jet_sqrt(const Jet& a) {
    if (a.c[0] <= 0) throw numeric_error("jet_sqrt: non-positive leading coefficient");
    Jet r;
    r.c[0] = std::sqrt(a.c[0]);
    for (int k = 1; k <= kJetOrder; ++k) {
        double s = a.c[k];
        for (int j = 1; j < k; ++j) s -= r.c[j] * r.c[k - j];
        r.c[k] = s / (2 * r.c[0]);
    }
    return r;
}

inline Jet jet_pow(const Jet& a, int n) {
    if (n < 0) return Jet::constant(1.0) / jet_pow(a, -n);
    Jet r = Jet::constant(1.0);
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
}

// sin and cos of a jet, computed jointly from s' = u' cos u, c' = -u' sin u.
inline void jet_sincos(const Jet& u, Jet& s, Jet& c) {
    s = Jet{};
    c = Jet{};
    s.c[0] = std::sin(u.c[0]);
    c.c[0] = std::cos(u.c[0]);
    // du holds the series of u' (as Taylor coefficients of a degree-3 jet)
    std::array<double, kJetOrder> du{};
    for (int k = 0; k < kJetOrder; ++k) du[k] = (k + 1) * u.c[k + 1];
    for (int k = 0; k < kJetOrder; ++k) {
        double sp = 0, cp = 0;  // coefficient k of s', c'
        for (int j = 0; j <= k; ++j) {
            sp += du[j] * c.c[k - j];
            cp -= du[j] * s.c[k - j];
        }
        s.c[k + 1] = sp / (k + 1);
        c.c[k + 1] = cp / (k + 1);
    }
}

inline std::pair<Jet, Jet> jet_sincos(const Jet& u) {
    Jet s, c;
    jet_sincos(u, s, c);
    return {s, c};
}

inline Jet jet_sin(const Jet& u) {
    Jet s, c;
    jet_sincos(u, s, c);
    return s;
}
inline Jet jet_cos(const Jet& u) {
    Jet s, c;
    jet_sincos(u, s, c);
    return c;
}

inline Jet jet_exp(const Jet& u) {
    Jet r;
    r.c[0] = std::exp(u.c[0]);
    std::array<double, kJetOrder> du{};
    for (int k = 0; k < kJetOrder; ++k) du[k] = (k + 1) * u.c[k + 1];
    for (int k = 0; k < kJetOrder; ++k) {
        double rp = 0;
        for (int j = 0; j <= k; ++j) rp += du[j] * r.c[k - j];
        r.c[k + 1] = rp / (k + 1);
    }
    return r;
}

// Compose f with an inner series u having u.c[0] == 0 (both about matching points):
// returns the jet of t -> f(u(t)).
inline Jet jet_compose(const Jet& f, const Jet& u) {
    if (u.c[0] != 0) throw invariant_error("jet_compose: inner series must vanish at 0");
    Jet r = Jet::constant(f.c[kJetOrder]);
    for (int k = kJetOrder - 1; k >= 0; --k) r = r * u + f.c[k];
    return r;
}

// Invert a series s(t) with s'(t0) != 0: returns the series of the inverse map
// v -> t(s0 + v) - t0, i.e. a jet with zero constant term.
inline Jet jet_invert_series(const Jet& s) {
    if (s.c[1] == 0) throw numeric_error("jet_invert_series: vanishing first derivative");
    Jet u = s;
    u.c[0] = 0;  // series of s(t) - s0 in t - t0
    Jet t{};     // series of t - t0 in v = s - s0
    t.c[1] = 1.0 / u.c[1];
    for (int k = 2; k <= kJetOrder; ++k) {
        // coefficient k of u(t(v)) must vanish; it is linear in t.c[k] with factor u.c[1]
        Jet comp = jet_compose(u, t);
        t.c[k] -= comp.c[k] / u.c[1];
    }
    return t;
}

// A 3-vector of jets: a curve germ.
struct Vec3Jet {
    Jet x, y, z;

    Vec3 value() const { return {x.value(), y.value(), z.value()}; }
    Vec3 deriv(int k) const { return {x.deriv(k), y.deriv(k), z.deriv(k)}; }
    // Jet of the derivative curve (one order lower, top coefficient zero).
    Vec3Jet d() const {
        Vec3Jet r;
        for (int k = 0; k < kJetOrder; ++k) {
            r.x.c[k] = (k + 1) * x.c[k + 1];
            r.y.c[k] = (k + 1) * y.c[k + 1];
            r.z.c[k] = (k + 1) * z.c[k + 1];
        }
        return r;
    }
};

inline Vec3Jet operator+(const Vec3Jet& a, const Vec3Jet& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3Jet operator-(const Vec3Jet& a, const Vec3Jet& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3Jet operator*(const Jet& s, const Vec3Jet& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Jet dot(const Vec3Jet& a, const Vec3Jet& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3Jet cross(const Vec3Jet& a, const Vec3Jet& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3Jet jet_compose(const Vec3Jet& f, const Jet& u) {
    return {jet_compose(f.x, u), jet_compose(f.y, u), jet_compose(f.z, u)};
}

} // namespace memshape
