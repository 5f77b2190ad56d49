#pragma once

// File formats: patch JSON (round-trippable), CSV tables, SVG plane curves,
// and the provenance header stamped into every JSON output.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "memshape/errors.hpp"
#include "memshape/linalg.hpp"
#include "memshape/patch.hpp"
#include "memshape/polyline.hpp"
#include "memshape/version.hpp"

namespace memshape {

using nlohmann::json;

// FNV-1a over the canonical (sorted-key) serialization of the config.
inline std::string config_hash(const json& config) {
    const std::string s = config.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json provenance(const json& config) {
    return json{{"tool", kToolName}, {"version", kToolVersion}, {"config_hash", config_hash(config)}};
}

inline json materials_to_json(const MaterialParams& mp) {
    return json{{"k", mp.k}, {"kbar", mp.kbar}, {"c0", mp.c0}, {"P", mp.pressure},
                {"lambda", mp.lambda}};
}

inline MaterialParams materials_from_json(const json& j) {
    MaterialParams mp;
    mp.k = j.value("k", 1.0);
    mp.kbar = j.value("kbar", 0.0);
    mp.c0 = j.value("c0", 0.0);
    mp.pressure = j.value("P", 0.0);
    mp.lambda = j.value("lambda", 0.0);
    mp.check();
    return mp;
}

inline json patch_to_json(const PrincipalPatch& p, const json& config) {
    json nodes = json::array();
    for (const auto& n : p.nodes) {
        json a = json::array();
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < 3; ++i) a.push_back(n.f.A(i, c));
        json fib = json::array();
        for (double v : n.f.fiber()) fib.push_back(v);
        nodes.push_back(json{{"P", {n.f.P.x, n.f.P.y, n.f.P.z}},
                             {"A", a},
                             {"fiber", fib},
                             {"xi", {n.xi1, n.xi2}}});
    }
    return json{{"provenance", provenance(config)},
                {"nx", p.nx},
                {"ny", p.ny},
                {"dx", p.dx},
                {"dy", p.dy},
                {"x0", p.x0},
                {"y0", p.y0},
                {"closed_x", p.closed_x},
                {"nodes", nodes}};
}

inline PrincipalPatch patch_from_json(const json& j) try {
    PrincipalPatch p;
    p.nx = j.at("nx").get<int>();
    p.ny = j.at("ny").get<int>();
    p.dx = j.at("dx").get<double>();
    p.dy = j.at("dy").get<double>();
    p.x0 = j.value("x0", 0.0);
    p.y0 = j.value("y0", 0.0);
    p.closed_x = j.at("closed_x").get<bool>();
    const auto& nodes = j.at("nodes");
    if (static_cast<int>(nodes.size()) != p.nx * p.ny)
        throw invariant_error("patch_from_json: node count does not match grid");
    p.nodes.reserve(nodes.size());
    for (const auto& nj : nodes) {
        PatchNode n;
        const auto& P = nj.at("P");
        n.f.P = {P.at(0).get<double>(), P.at(1).get<double>(), P.at(2).get<double>()};
        const auto& A = nj.at("A");
        if (A.size() != 9) throw invariant_error("patch_from_json: bad frame");
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < 3; ++i) n.f.A(i, c) = A.at(3 * c + i).get<double>();
        const auto& fib = nj.at("fiber");
        if (fib.size() != 10) throw invariant_error("patch_from_json: bad fiber");
        std::array<double, 10> f{};
        for (int v = 0; v < 10; ++v) f[v] = fib.at(v).get<double>();
        n.f.set_fiber(f);
        const auto& xi = nj.at("xi");
        n.xi1 = xi.at(0).get<double>();
        n.xi2 = xi.at(1).get<double>();
        p.nodes.push_back(n);
    }
    return p;
} catch (const json::exception& e) {
    throw invariant_error(std::string("patch_from_json: ") + e.what());
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw invariant_error("write_json_file: cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw invariant_error("write_json_file: write failed for " + path);
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invariant_error("read_json_file: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw invariant_error(std::string("read_json_file: ") + e.what());
    }
    return j;
}

// CSV with a header row; each row must have the same arity as the header.
inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw invariant_error("write_csv: cannot open " + path);
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    char cell[40];
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw invariant_error("write_csv: row arity does not match header");
        for (size_t i = 0; i < row.size(); ++i) {
            std::snprintf(cell, sizeof cell, "%.15g", row[i]);
            out << (i ? "," : "") << cell;
        }
        out << "\n";
    }
    if (!out) throw invariant_error("write_csv: write failed for " + path);
}

// Plane curve as a standalone SVG, optionally with crossing markers.
inline void write_svg(const std::string& path, const PlanePolyline& poly,
                      const std::vector<Vec2>& marks = {}) {
    if (poly.pts.size() < 2) throw invariant_error("write_svg: empty polyline");
    Vec2 lo = poly.pts[0], hi = poly.pts[0];
    for (const Vec2& p : poly.pts) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    const double w = std::max(hi.x - lo.x, 1e-9), h = std::max(hi.y - lo.y, 1e-9);
    const double pad = 0.05 * std::max(w, h);
    const double scale = 1000.0 / std::max(w, h);
    auto tx = [&](Vec2 p) {
        // flip y so the curve appears with the usual orientation
        return Vec2{(p.x - lo.x + pad) * scale, (hi.y - p.y + pad) * scale};
    };
    std::ofstream out(path);
    if (!out) throw invariant_error("write_svg: cannot open " + path);
    const double W = (w + 2 * pad) * scale, H = (h + 2 * pad) * scale;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " " << H
        << "\">\n";
    out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << 0.002 * std::max(W, H)
        << "\" d=\"";
    char buf[64];
    for (size_t i = 0; i < poly.pts.size(); ++i) {
        const Vec2 p = tx(poly.pts[i]);
        std::snprintf(buf, sizeof buf, "%c%.2f %.2f ", i == 0 ? 'M' : 'L', p.x, p.y);
        out << buf;
    }
    if (poly.closed) out << "Z";
    out << "\"/>\n";
    for (const Vec2& m : marks) {
        const Vec2 p = tx(m);
        out << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\""
            << 0.004 * std::max(W, H) << "\" fill=\"red\"/>\n";
    }
    out << "</svg>\n";
    if (!out) throw invariant_error("write_svg: write failed for " + path);
}

} // namespace memshape
