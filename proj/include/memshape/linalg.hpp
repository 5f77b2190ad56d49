#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "memshape/errors.hpp"

namespace memshape {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0, y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross2(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
// Counterclockwise rotation by pi/2.
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

struct Vec3 {
    double x = 0, y = 0, z = 0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a = a + b; return a; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) {
    double n = norm(a);
    if (n == 0) throw numeric_error("normalized: zero vector");
    return (1.0 / n) * a;
}

// 3x3 matrix, column-major storage; col(j) is the j-th column.
struct Mat3 {
    std::array<double, 9> m{};  // m[3*j + i] = entry (i, j)

    static Mat3 identity() {
        Mat3 r;
        r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        return r;
    }
    static Mat3 from_cols(Vec3 c0, Vec3 c1, Vec3 c2) {
        Mat3 r;
        r.m = {c0.x, c0.y, c0.z, c1.x, c1.y, c1.z, c2.x, c2.y, c2.z};
        return r;
    }
    double& operator()(int i, int j) { return m[3 * j + i]; }
    double operator()(int i, int j) const { return m[3 * j + i]; }
    Vec3 col(int j) const { return {m[3 * j], m[3 * j + 1], m[3 * j + 2]}; }
    void set_col(int j, Vec3 v) {
        m[3 * j] = v.x;
        m[3 * j + 1] = v.y;
        m[3 * j + 2] = v.z;
    }
};

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}
inline Vec3 operator*(const Mat3& a, Vec3 v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
            a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}
inline Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}
inline Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
    return r;
}
inline Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) r(i, j) = a(j, i);
    return r;
}
inline double det(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}
inline Mat3 inverse(const Mat3& a) {
    double d = det(a);
    if (std::abs(d) < 1e-300) throw numeric_error("inverse: singular 3x3 matrix");
    Mat3 r;
    r(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / d;
    r(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / d;
    r(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / d;
    r(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / d;
    r(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / d;
    r(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / d;
    r(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / d;
    r(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / d;
    r(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / d;
    return r;
}

inline double frobenius(const Mat3& a) {
    double s = 0;
    for (double v : a.m) s += v * v;
    return std::sqrt(s);
}

// Deviation from orthonormality, ||A^T A - I||_F.
inline double orthonormality_defect(const Mat3& a) {
    Mat3 g = transpose(a) * a;
    g(0, 0) -= 1;
    g(1, 1) -= 1;
    g(2, 2) -= 1;
    return frobenius(g);
}

// Skew matrix of w, i.e. skew(w) v = w x v.
inline Mat3 skew(Vec3 w) {
    Mat3 r;
    r.m = {0, w.z, -w.y, -w.z, 0, w.x, w.y, -w.x, 0};
    return r;
}

// Rotation exp(skew(w)) by Rodrigues' formula.
inline Mat3 so3_exp(Vec3 w) {
    double t = norm(w);
    Mat3 k = skew(w);
    if (t < 1e-12) {
        // second-order series is exact to within roundoff here
        return Mat3::identity() + k + 0.5 * (k * k);
    }
    double s = std::sin(t) / t;
    double c = (1 - std::cos(t)) / (t * t);
    return Mat3::identity() + s * k + c * (k * k);
}

// Nearest rotation (polar factor) via the Newton iteration X <- (X + X^-T)/2.
inline Mat3 polar_rotation(const Mat3& a) {
    Mat3 x = a;
    for (int it = 0; it < 25; ++it) {
        Mat3 xi = transpose(inverse(x));
        Mat3 next = 0.5 * (x + xi);
        double delta = 0;
        for (int i = 0; i < 9; ++i) delta = std::max(delta, std::abs(next.m[i] - x.m[i]));
        x = next;
        if (delta < 1e-15) break;
    }
    if (det(x) < 0) throw numeric_error("polar_rotation: orientation-reversing frame");
    return x;
}

// Dense linear solve with partial pivoting; a is n x n row-major, b length n.
inline std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw invariant_error("solve_dense: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-300)
            throw numeric_error("solve_dense: singular system");
        if (piv != col) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            if (f == 0) continue;
            for (std::size_t k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t k = ri + 1; k < n; ++k) s -= a[ri * n + k] * x[k];
        x[ri] = s / a[ri * n + ri];
    }
    return x;
}

} // namespace memshape
