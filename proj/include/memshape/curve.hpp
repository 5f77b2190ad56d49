#pragma once

// Space curves with Taylor-jet evaluation and arclength reparametrization.
// Sources provide position jets in their own parameter; ArclengthCurve turns
// them into arclength jets good enough for fourth-order Frenet data.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "memshape/elliptic.hpp"
#include "memshape/errors.hpp"
#include "memshape/linalg.hpp"
#include "memshape/numerics.hpp"
#include "memshape/taylor.hpp"

namespace memshape {

struct ParamCurve {
    std::function<Vec3Jet(double)> jet_at;  // order-4 jet in the curve parameter
    double t0 = 0;
    double t1 = 1;
    bool closed = false;
};

// Frenet data extracted from an order-4 arclength jet of the position.
struct CurveSample {
    double x = 0;  // arclength coordinate
    Vec3Jet alpha;
    double kappa = 0, dkappa = 0, d2kappa = 0;
    double tau = 0, dtau = 0;
    Vec3 T, N, B;
};

inline CurveSample frenet_data(double x, const Vec3Jet& alpha_s) {
    CurveSample out;
    out.x = x;
    out.alpha = alpha_s;

    const Vec3Jet d1 = alpha_s.d();
    const Vec3Jet d2 = d1.d();
    const Vec3Jet d3 = d2.d();

    const double speed_err = std::abs(norm(d1.value()) - 1.0);
    if (speed_err > 1e-8)
        throw invariant_error("frenet_data: jet is not arclength-parametrized");

    Jet kap_sq = dot(d2, d2);
    if (kap_sq.value() <= 1e-20)
        throw invariant_error("frenet_data: curvature vanishes, Frenet frame undefined");
    Jet kap = jet_sqrt(kap_sq);
    out.kappa = kap.value();
    out.dkappa = kap.deriv(1);
    out.d2kappa = kap.deriv(2);

    Jet det = dot(d1, cross(d2, d3));
    Jet tau = det / kap_sq;
    out.tau = tau.value();
    out.dtau = tau.deriv(1);

    out.T = normalized(d1.value());
    out.N = (1.0 / out.kappa) * d2.value();
    out.B = cross(out.T, out.N);
    return out;
}

// Arclength wrapper: cumulative-length table plus local series inversion.
class ArclengthCurve {
public:
    explicit ArclengthCurve(ParamCurve curve, int table_n = 512) : curve_(std::move(curve)) {
        if (!(curve_.t1 > curve_.t0)) throw invariant_error("ArclengthCurve: empty parameter range");
        if (table_n < 16) table_n = 16;
        ts_.resize(table_n + 1);
        ss_.resize(table_n + 1);
        const double h = (curve_.t1 - curve_.t0) / table_n;
        ts_[0] = curve_.t0;
        ss_[0] = 0;
        double min_speed = speed(curve_.t0);
        for (int i = 1; i <= table_n; ++i) {
            ts_[i] = curve_.t0 + i * h;
            auto seg = quad_adaptive([this](double t) { return speed(t); }, ts_[i - 1], ts_[i],
                                     1e-13);
            ss_[i] = ss_[i - 1] + seg.value;
            min_speed = std::min(min_speed, speed(ts_[i]));
        }
        if (min_speed < 1e-10)
            throw invariant_error("ArclengthCurve: curve is not regular (speed ~ 0)");
        length_ = ss_.back();
    }

    double length() const { return length_; }
    bool closed() const { return curve_.closed; }

    double param_of_arclength(double x) const {
        if (curve_.closed) {
            x = std::fmod(x, length_);
            if (x < 0) x += length_;
        } else {
            if (x < -1e-9 * length_ || x > length_ * (1 + 1e-9))
                throw invariant_error("ArclengthCurve: arclength outside curve span");
            x = std::clamp(x, 0.0, length_);
        }
        auto it = std::upper_bound(ss_.begin(), ss_.end(), x);
        int i = static_cast<int>(it - ss_.begin()) - 1;
        i = std::clamp(i, 0, static_cast<int>(ss_.size()) - 2);
        if (x <= ss_[i] + 1e-15) return ts_[i];
        auto g = [this, i, x](double t) {
            return ss_[i] + quad_adaptive([this](double u) { return speed(u); }, ts_[i], t, 1e-13).value - x;
        };
        double lo = ts_[i], hi = ts_[i + 1];
        if (g(hi) < 0) return hi;  // guard against rounding at the right edge
        return brent_root(g, lo, hi);
    }

    // Order-4 jet of the position in the arclength variable, centered at x.
    Vec3Jet arclength_jet(double x) const {
        const double t0 = param_of_arclength(x);
        Vec3Jet at = curve_.jet_at(t0);  // jet in dt
        const Vec3Jet dat = at.d();
        Jet sigma = jet_sqrt(dot(dat, dat));  // speed jet, order 3
        // s(dt) with s(0) = 0: integrate the speed jet.
        Jet s_of_dt;
        for (int k = 0; k + 1 <= kJetOrder; ++k) s_of_dt.c[k + 1] = sigma.c[k] / (k + 1);
        Jet dt_of_ds = jet_invert_series(s_of_dt);
        Vec3 base = at.value();
        Vec3Jet centered = at;
        centered.x.c[0] = 0;
        centered.y.c[0] = 0;
        centered.z.c[0] = 0;
        Vec3Jet out = jet_compose(centered, dt_of_ds);
        out.x.c[0] = base[0];
        out.y.c[0] = base[1];
        out.z.c[0] = base[2];
        return out;
    }

    CurveSample sample(double x) const { return frenet_data(x, arclength_jet(x)); }

private:
    double speed(double t) const { return norm(curve_.jet_at(t).d().value()); }

    ParamCurve curve_;
    std::vector<double> ts_, ss_;
    double length_ = 0;
};

// -- curve sources ----------------------------------------------------------

inline ParamCurve make_circle(double radius) {
    if (!(radius > 0)) throw invariant_error("make_circle: radius must be positive");
    ParamCurve c;
    c.t0 = 0;
    c.t1 = 2.0 * kPi * radius;
    c.closed = true;
    c.jet_at = [radius](double t) {
        Jet u = (1.0 / radius) * Jet::variable(t);
        auto [s, co] = jet_sincos(u);
        Vec3Jet out;
        out.x = radius * co;
        out.y = radius * s;
        out.z = Jet::constant(0.0);
        return out;
    };
    return c;
}

// Right circular helix of radius R and pitch 2 pi b, arclength-parametrized.
inline ParamCurve make_helix(double radius, double b, double turns = 2.0) {
    if (!(radius > 0)) throw invariant_error("make_helix: radius must be positive");
    const double c = std::sqrt(radius * radius + b * b);
    ParamCurve out;
    out.t0 = 0;
    out.t1 = turns * 2.0 * kPi * c;
    out.closed = false;
    out.jet_at = [radius, b, c](double t) {
        Jet u = (1.0 / c) * Jet::variable(t);
        auto [s, co] = jet_sincos(u);
        Vec3Jet v;
        v.x = radius * co;
        v.y = radius * s;
        v.z = b * u;
        return v;
    };
    return out;
}

// Truncated Fourier curve with parameter period 2 pi:
//   component_i(t) = a0 + sum_n (a_n cos(n t) + b_n sin(n t)).
struct FourierComponent {
    double a0 = 0;
    std::vector<double> an;  // cos coefficients, n = 1..
    std::vector<double> bn;  // sin coefficients, n = 1..
};

inline ParamCurve make_fourier(const std::array<FourierComponent, 3>& comps) {
    ParamCurve c;
    c.t0 = 0;
    c.t1 = 2.0 * kPi;
    c.closed = true;
    c.jet_at = [comps](double t) {
        Jet u = Jet::variable(t);
        std::array<Jet, 3> vals;
        for (int i = 0; i < 3; ++i) {
            Jet acc = Jet::constant(comps[i].a0);
            const auto& an = comps[i].an;
            const auto& bn = comps[i].bn;
            const size_t nmax = std::max(an.size(), bn.size());
            for (size_t n = 1; n <= nmax; ++n) {
                auto [s, co] = jet_sincos(static_cast<double>(n) * u);
                if (n <= an.size() && an[n - 1] != 0) acc = acc + an[n - 1] * co;
                if (n <= bn.size() && bn[n - 1] != 0) acc = acc + bn[n - 1] * s;
            }
            vals[i] = acc;
        }
        Vec3Jet out;
        out.x = vals[0];
        out.y = vals[1];
        out.z = vals[2];
        return out;
    };
    return c;
}

inline ParamCurve make_ellipse(double ax, double by) {
    if (!(ax > 0) || !(by > 0)) throw invariant_error("make_ellipse: semi-axes must be positive");
    std::array<FourierComponent, 3> comps;
    comps[0].an = {ax};
    comps[1].bn = {by};
    return make_fourier(comps);
}

} // namespace memshape
