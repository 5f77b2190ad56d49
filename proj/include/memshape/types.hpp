#pragma once

#include <array>
#include <cmath>

#include "memshape/errors.hpp"
#include "memshape/linalg.hpp"

namespace memshape {

// Point of the prolonged configuration space: a frame (P; A1, A2, A3) of
// Euclidean 3-space together with the ten fiber coordinates
// (p, q, a, c, p1, q2, r, a1, c2, l), subject to a - c > 0.
struct FiberPoint {
    Vec3 P{};
    Mat3 A = Mat3::identity();  // columns A1, A2, A3
    double p = 0, q = 0, a = 0, c = 0;
    double p1 = 0, q2 = 0, r = 0, a1 = 0, c2 = 0, l = 0;

    std::array<double, 10> fiber() const { return {p, q, a, c, p1, q2, r, a1, c2, l}; }
    void set_fiber(const std::array<double, 10>& f) {
        p = f[0]; q = f[1]; a = f[2]; c = f[3]; p1 = f[4];
        q2 = f[5]; r = f[6]; a1 = f[7]; c2 = f[8]; l = f[9];
    }

    void check(double frame_tol = 1e-10) const {
        if (!(a - c > 0)) throw invariant_error("FiberPoint: requires a - c > 0");
        if (orthonormality_defect(A) > frame_tol)
            throw invariant_error("FiberPoint: frame is not orthonormal");
        if (det(A) < 0) throw invariant_error("FiberPoint: frame is not positively oriented");
    }

    double mean_curvature() const { return 0.5 * (a + c); }
    double gauss_curvature() const { return a * c; }
};

// Helfrich material constants. `pressure` is the osmotic pressure term
// (named P in formulas; the letter p is taken by the fiber coordinate).
struct MaterialParams {
    double k = 1.0;        // bending rigidity
    double kbar = 0.0;     // Gaussian rigidity (enters only the energy)
    double c0 = 0.0;       // spontaneous curvature
    double pressure = 0.0; // osmotic pressure
    double lambda = 0.0;   // surface tension

    void check() const {
        if (!(k > 0)) throw invariant_error("MaterialParams: bending rigidity k must be positive");
        if (!std::isfinite(kbar) || !std::isfinite(c0) || !std::isfinite(pressure) ||
            !std::isfinite(lambda))
            throw invariant_error("MaterialParams: non-finite value");
    }
};

} // namespace memshape
