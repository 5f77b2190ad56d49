#pragma once

// Planar polyline topology: transversal self-intersection counting with a
// broad-phase grid, inflection counting from curvature samples, turning
// number. Used to classify synthesized directrices.

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "memshape/errors.hpp"
#include "memshape/linalg.hpp"

namespace memshape {

struct PlanePolyline {
    std::vector<Vec2> pts;
    bool closed = true;

    int segment_count() const {
        const int n = static_cast<int>(pts.size());
        return closed ? n : n - 1;
    }
    Vec2 seg_a(int s) const { return pts[s]; }
    Vec2 seg_b(int s) const { return pts[(s + 1) % pts.size()]; }
};

struct Intersection {
    Vec2 p;
    int seg_i = 0, seg_j = 0;
    double angle = 0;  // crossing angle in radians
};

struct IntersectionReport {
    std::vector<Intersection> points;  // deduplicated transversal crossings
    int raw_hits = 0;                  // before dedupe
    int grazing = 0;                   // hits below the angle tolerance
    bool reliable = true;              // false when grazing hits were seen
};

namespace detail {

inline bool segment_crossing(Vec2 a, Vec2 b, Vec2 c, Vec2 d, Vec2& out, double& angle) {
    const Vec2 r = b - a, s = d - c;
    const double denom = cross2(r, s);
    const double rs = norm(r) * norm(s);
    if (rs == 0) return false;
    if (std::abs(denom) < 1e-15 * rs) return false;  // parallel
    const Vec2 ca = c - a;
    const double t = cross2(ca, s) / denom;
    const double u = cross2(ca, r) / denom;
    const double eps = 1e-12;
    if (t < eps || t > 1 - eps || u < eps || u > 1 - eps) return false;
    out = a + t * r;
    angle = std::asin(std::min(1.0, std::abs(denom) / rs));
    return true;
}

} // namespace detail

// All pairwise proper crossings of non-adjacent segments. Crossings with
// angle below angle_tol are counted as grazing and flag the report as
// unreliable (usually a sign of undersampling or a genuine tangency).
inline IntersectionReport self_intersections(const PlanePolyline& poly, double angle_tol = 1e-3,
                                             double dedupe_rel = 1e-7) {
    const int nseg = poly.segment_count();
    if (nseg < 4) return {};
    const int npts = static_cast<int>(poly.pts.size());

    Vec2 lo = poly.pts[0], hi = poly.pts[0];
    double total_len = 0;
    for (int s = 0; s < nseg; ++s) {
        const Vec2 a = poly.seg_a(s);
        lo.x = std::min(lo.x, a.x);
        lo.y = std::min(lo.y, a.y);
        hi.x = std::max(hi.x, a.x);
        hi.y = std::max(hi.y, a.y);
        total_len += norm(poly.seg_b(s) - poly.seg_a(s));
    }
    const double diag = norm(hi - lo);
    if (diag == 0) return {};
    const double cell = std::max(2.0 * total_len / nseg, 1e-12 * diag);

    auto cell_key = [&](int cx, int cy) {
        return (static_cast<int64_t>(cx) << 32) ^ static_cast<uint32_t>(cy);
    };
    std::unordered_map<int64_t, std::vector<int>> buckets;
    for (int s = 0; s < nseg; ++s) {
        const Vec2 a = poly.seg_a(s), b = poly.seg_b(s);
        const int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) / cell));
        const int x1 = static_cast<int>(std::floor(std::max(a.x, b.x) / cell));
        const int y0 = static_cast<int>(std::floor(std::min(a.y, b.y) / cell));
        const int y1 = static_cast<int>(std::floor(std::max(a.y, b.y) / cell));
        for (int cx = x0; cx <= x1; ++cx)
            for (int cy = y0; cy <= y1; ++cy) buckets[cell_key(cx, cy)].push_back(s);
    }

    auto adjacent = [&](int i, int j) {
        int d = std::abs(i - j);
        if (poly.closed) d = std::min(d, npts - d);
        return d <= 1;
    };

    IntersectionReport rep;
    std::vector<std::pair<int, int>> seen;
    for (const auto& [key, segs] : buckets) {
        (void)key;
        for (size_t ii = 0; ii < segs.size(); ++ii)
            for (size_t jj = ii + 1; jj < segs.size(); ++jj) {
                int i = segs[ii], j = segs[jj];
                if (i > j) std::swap(i, j);
                if (adjacent(i, j)) continue;
                bool dup = false;
                for (const auto& pr : seen)
                    if (pr.first == i && pr.second == j) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                Vec2 x;
                double angle;
                if (detail::segment_crossing(poly.seg_a(i), poly.seg_b(i), poly.seg_a(j),
                                             poly.seg_b(j), x, angle)) {
                    seen.emplace_back(i, j);
                    rep.raw_hits += 1;
                    if (angle < angle_tol) {
                        rep.grazing += 1;
                        rep.reliable = false;
                    } else {
                        rep.points.push_back({x, i, j, angle});
                    }
                }
            }
    }

    // merge crossings that coincide geometrically (e.g. a vertex shared by
    // two sampled segments of the same underlying crossing)
    const double merge = dedupe_rel * diag;
    std::vector<Intersection> merged;
    for (const auto& cand : rep.points) {
        bool dup = false;
        for (const auto& have : merged)
            if (norm(cand.p - have.p) < merge) {
                dup = true;
                break;
            }
        if (!dup) merged.push_back(cand);
    }
    rep.points = std::move(merged);
    return rep;
}

// Number of sign changes in a cyclic (or open) sample sequence.
inline int sign_changes(const std::vector<double>& v, bool cyclic) {
    const int n = static_cast<int>(v.size());
    if (n < 2) return 0;
    int count = 0;
    const int last = cyclic ? n : n - 1;
    for (int i = 0; i < last; ++i)
        if (v[i] * v[(i + 1) % n] < 0) ++count;
    return count;
}

} // namespace memshape
