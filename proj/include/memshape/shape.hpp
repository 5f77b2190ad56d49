#pragma once

// Curvature potentials for the membrane shape equation Delta H = Phi(a, c)
// and residual checks for the reductions to planar-curve ODEs.

#include <cmath>
#include <vector>

#include "memshape/coframe.hpp"
#include "memshape/errors.hpp"
#include "memshape/expr.hpp"
#include "memshape/numerics.hpp"
#include "memshape/types.hpp"

namespace memshape {

// Willmore: Phi = -2 H (H^2 - K), H = (a + c)/2, K = a c.
inline ScalarExpr phi_willmore() {
    const ScalarExpr a = ScalarExpr::sym(SymA), c = ScalarExpr::sym(SymC);
    const ScalarExpr H = 0.5 * (a + c);
    const ScalarExpr K = a * c;
    return -2.0 * (H * (H * H - K));
}

// Helfrich with spontaneous curvature c0, tension lambda, pressure P,
// bending modulus k:
//   Phi = -2 H (H^2 - K) + lambda H / k + c0^2 H / 2 + c0 K - P / (2 k).
inline ScalarExpr phi_helfrich() {
    const ScalarExpr a = ScalarExpr::sym(SymA), c = ScalarExpr::sym(SymC);
    const ScalarExpr H = 0.5 * (a + c);
    const ScalarExpr K = a * c;
    const ScalarExpr k = ScalarExpr::sym(SymK);
    const ScalarExpr c0 = ScalarExpr::sym(SymC0);
    const ScalarExpr P = ScalarExpr::sym(SymPressure);
    const ScalarExpr lam = ScalarExpr::sym(SymLambda);
    const ScalarExpr kinv = k.pow(-1);
    return phi_willmore() + lam * H * kinv + 0.5 * (c0 * c0 * H) + c0 * K -
           0.5 * (P * kinv);
}

inline ScalarExpr psi(const ScalarExpr& phi) { return psi_from_phi(phi); }

// Laplacian of the mean curvature assembled from the second-order fiber data:
//   Delta H = (a11 + c22)/2 - r (c - a) + q a1 - p c2,
// with a11 = l + r (c - a) + Psi and c22 = -l + r (c - a) + Psi.
inline double laplacian_H_state(const FiberPoint& f, const ScalarExpr& phi,
                                const MaterialParams& mp) {
    const double psi_val = eval_scalar(psi_from_phi(phi), f, mp);
    const double e = f.c - f.a;
    const double a11 = f.l + f.r * e + psi_val;
    const double c22 = -f.l + f.r * e + psi_val;
    return 0.5 * (a11 + c22) - f.r * e + f.q * f.a1 - f.p * f.c2;
}

// Residual of the shape equation at a single fiber point. Zero by
// construction whenever the fiber data satisfies the prolonged system; this
// is the consistency check for externally assembled states.
inline double shape_residual_state(const FiberPoint& f, const ScalarExpr& phi,
                                   const MaterialParams& mp) {
    return laplacian_H_state(f, phi, mp) - eval_scalar(phi, f, mp);
}

struct OdeResiduals {
    double eq2_max = 0;   // kappa'' + kappa^3/2 - v kappa - eps P / k
    double eq3_max = 0;   // (kappa')^2 + (kappa^4 + w2 kappa^2 + w1 kappa + w0)/4
    double mkdv_max = 0;  // kappa''' + (3/2) kappa^2 kappa' - v kappa'
};

// Residuals of the curvature ODEs satisfied by planar directrices of
// equilibrium cylinders. kappa is sampled uniformly with spacing ds; for
// periodic samples the derivatives are spectral. eps is the outward (+1) or
// inward (-1) co-orientation sign; w0 is the first integral's constant.
inline OdeResiduals ode_residuals(const std::vector<double>& kappa, double ds, bool periodic,
                                  const MaterialParams& mp, double eps, double w0) {
    mp.check();
    const int n = static_cast<int>(kappa.size());
    if (n < 8) throw invariant_error("ode_residuals: need at least 8 samples");
    const double v = (2.0 * mp.lambda + mp.k * mp.c0 * mp.c0) / (2.0 * mp.k);
    const double w2 = -4.0 * v;
    const double w1 = -8.0 * eps * mp.pressure / mp.k;
    const double forcing = eps * mp.pressure / mp.k;

    RowDeriv deriv(n, ds, periodic);
    std::vector<double> k1 = deriv.d1(kappa);
    std::vector<double> k2 = deriv.d1(k1);
    std::vector<double> k3 = deriv.d1(k2);

    OdeResiduals out;
    for (int i = 0; i < n; ++i) {
        const double ka = kappa[i];
        const double r2 = k2[i] + 0.5 * ka * ka * ka - v * ka - forcing;
        const double r3 = k1[i] * k1[i] +
                          0.25 * (ka * ka * ka * ka + w2 * ka * ka + w1 * ka + w0);
        const double rm = k3[i] + 1.5 * ka * ka * k1[i] - v * k1[i];
        out.eq2_max = std::max(out.eq2_max, std::abs(r2));
        out.eq3_max = std::max(out.eq3_max, std::abs(r3));
        out.mkdv_max = std::max(out.mkdv_max, std::abs(rm));
    }
    return out;
}

} // namespace memshape
