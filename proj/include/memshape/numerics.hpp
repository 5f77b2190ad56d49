#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "memshape/errors.hpp"

namespace memshape {

// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
inline double brent_root(const std::function<double(double)>& f, double a, double b,
                         double xtol = 1e-13, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (fa * fb > 0) throw invariant_error("brent_root: interval does not bracket a root");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2 * 1e-16 * std::abs(b) + 0.5 * xtol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, p, q2;
            if (a == c) {
                p = 2 * xm * s;
                q2 = 1 - s;
            } else {
                double q = fa / fc, r = fb / fc;
                p = s * (2 * xm * q * (q - r) - (b - a) * (r - 1));
                q2 = (q - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q2 = -q2;
            p = std::abs(p);
            if (2 * p < std::min(3 * xm * q2 - std::abs(tol1 * q2), std::abs(e * q2))) {
                e = d;
                d = p / q2;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw numeric_error("brent_root: no convergence");
}

// Fornberg weights for the m-th derivative at x0 from nodes x (any spacing).
inline std::vector<double> fornberg_weights(double x0, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size()) - 1;
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0, c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = c[i][m];
    return w;
}

// Differentiates rows of uniformly spaced samples. Periodic rows use the
// trigonometric (spectral) differentiation matrix; open rows use 6th-order
// finite differences with one-sided stencils at the ends.
class RowDeriv {
public:
    RowDeriv() = default;
    RowDeriv(int n, double dx, bool periodic) : n_(n), dx_(dx), periodic_(periodic) {
        if (n < 8) throw invariant_error("RowDeriv: need at least 8 samples");
        if (periodic_) {
            if (n % 2 != 0) throw invariant_error("RowDeriv: periodic rows need even sample count");
            // kernel[k] multiplies f[(i+k) mod n] in f'(i); period L = n*dx
            kernel_.assign(n, 0.0);
            const double L = n * dx;
            const double h = 2 * M_PI / n;
            for (int k = 1; k < n; ++k) {
                double sign = (k % 2 == 0) ? -1.0 : 1.0;
                kernel_[k] = (2 * M_PI / L) * 0.5 * sign / std::tan(0.5 * k * h);
            }
        } else {
            const int w = 7;  // stencil width for 6th order
            stencils_.resize(n);
            offsets_.resize(n);
            for (int i = 0; i < n; ++i) {
                int lo = std::clamp(i - 3, 0, n - w);
                std::vector<double> pts(w);
                for (int j = 0; j < w; ++j) pts[j] = (lo + j - i) * dx;
                stencils_[i] = fornberg_weights(0.0, pts, 1);
                offsets_[i] = lo;
            }
        }
    }

    int size() const { return n_; }

    std::vector<double> d1(const std::vector<double>& f) const {
        if (static_cast<int>(f.size()) != n_) throw invariant_error("RowDeriv: size mismatch");
        std::vector<double> df(n_, 0.0);
        if (periodic_) {
            for (int i = 0; i < n_; ++i) {
                double s = 0;
                // kernel is antisymmetric: kernel[n-k] = -kernel[k]
                for (int k = 1; k < n_; ++k) s += kernel_[k] * f[(i + k) % n_];
                df[i] = s;
            }
        } else {
            for (int i = 0; i < n_; ++i) {
                double s = 0;
                const auto& st = stencils_[i];
                for (int j = 0; j < 7; ++j) s += st[j] * f[offsets_[i] + j];
                df[i] = s;
            }
        }
        return df;
    }

    std::vector<double> d2(const std::vector<double>& f) const { return d1(d1(f)); }

private:
    int n_ = 0;
    double dx_ = 0;
    bool periodic_ = false;
    std::vector<double> kernel_;
    std::vector<std::vector<double>> stencils_;
    std::vector<int> offsets_;
};

// Integral of uniformly spaced samples. Periodic: rectangle rule (spectrally
// accurate). Open: composite Simpson, with a 3/8 block when the interval
// count is odd.
inline double integrate_uniform(const std::vector<double>& f, double dx, bool periodic) {
    const int n = static_cast<int>(f.size());
    if (periodic) {
        double s = 0;
        for (double v : f) s += v;
        return s * dx;
    }
    if (n < 5) throw invariant_error("integrate_uniform: need at least 5 samples");
    const int intervals = n - 1;
    double total = 0;
    int start = 0;
    if (intervals % 2 != 0) {
        // Simpson 3/8 on the first three intervals
        total += 3.0 * dx / 8.0 * (f[0] + 3 * f[1] + 3 * f[2] + f[3]);
        start = 3;
    }
    double s = f[start] + f[n - 1];
    for (int i = start + 1; i < n - 1; ++i) s += ((i - start) % 2 == 1 ? 4.0 : 2.0) * f[i];
    total += s * dx / 3.0;
    return total;
}

} // namespace memshape
