#pragma once

// Triangle meshes from principal patches, with Wavefront OBJ output.

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "memshape/errors.hpp"
#include "memshape/linalg.hpp"
#include "memshape/patch.hpp"

namespace memshape {

struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;
    std::vector<std::array<int, 3>> triangles;  // zero-based
    std::vector<double> mean_curv, gauss_curv;  // per vertex
};

inline TriMesh patch_to_mesh(const PrincipalPatch& p) {
    if (p.nx < 2 || p.ny < 2) throw invariant_error("patch_to_mesh: grid too small");
    TriMesh mesh;
    mesh.vertices.reserve(p.nodes.size());
    mesh.normals.reserve(p.nodes.size());
    mesh.mean_curv.reserve(p.nodes.size());
    mesh.gauss_curv.reserve(p.nodes.size());
    for (const auto& n : p.nodes) {
        mesh.vertices.push_back(n.f.P);
        mesh.normals.push_back(n.f.A.col(2));
        mesh.mean_curv.push_back(n.f.mean_curvature());
        mesh.gauss_curv.push_back(n.f.gauss_curvature());
    }
    const int ncols = p.closed_x ? p.nx : p.nx - 1;
    auto vid = [&p](int i, int j) { return j * p.nx + (i % p.nx); };
    for (int j = 0; j + 1 < p.ny; ++j)
        for (int i = 0; i < ncols; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            mesh.triangles.push_back({v00, v10, v11});
            mesh.triangles.push_back({v00, v11, v01});
        }
    return mesh;
}

// OBJ with optional per-vertex curvature records in comments
// ("# curv <index> <H> <K>", 1-based to match the vertex numbering).
inline void write_obj(const std::string& path, const TriMesh& mesh, bool curvature_comments) {
    std::ofstream out(path);
    if (!out) throw invariant_error("write_obj: cannot open " + path);
    out << "# membrane patch mesh\n";
    char line[160];
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3& v = mesh.vertices[i];
        std::snprintf(line, sizeof line, "v %.12g %.12g %.12g\n", v.x, v.y, v.z);
        out << line;
    }
    for (const Vec3& n : mesh.normals) {
        std::snprintf(line, sizeof line, "vn %.9g %.9g %.9g\n", n.x, n.y, n.z);
        out << line;
    }
    if (curvature_comments)
        for (size_t i = 0; i < mesh.mean_curv.size(); ++i) {
            std::snprintf(line, sizeof line, "# curv %zu %.12g %.12g\n", i + 1,
                          mesh.mean_curv[i], mesh.gauss_curv[i]);
            out << line;
        }
    for (const auto& t : mesh.triangles) {
        std::snprintf(line, sizeof line, "f %d//%d %d//%d %d//%d\n", t[0] + 1, t[0] + 1,
                      t[1] + 1, t[1] + 1, t[2] + 1, t[2] + 1);
        out << line;
    }
    if (!out) throw invariant_error("write_obj: write failed for " + path);
}

} // namespace memshape
