#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace subfvm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

struct BoundaryEdge {
    int a = -1;
    int b = -1;
    int tag = 0;
};

struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Triangulation of a planar domain. Triangles are stored counter-clockwise;
/// parse_msh() reorients on load.
struct Mesh {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<int> tri_tags;  // physical tag per triangle (0 if untagged)
    std::vector<BoundaryEdge> boundary_edges;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }

    double signed_area(int t) const {
        const auto& tri = triangles[t];
        const Vec2 &p = nodes[tri[0]], &q = nodes[tri[1]], &r = nodes[tri[2]];
        return 0.5 * ((q.x - p.x) * (r.y - p.y) - (r.x - p.x) * (q.y - p.y));
    }

    double total_area() const {
        double a = 0.0;
        for (int t = 0; t < num_triangles(); ++t) a += signed_area(t);
        return a;
    }

    Vec2 barycenter(int t) const {
        const auto& tri = triangles[t];
        return (1.0 / 3.0) * (nodes[tri[0]] + nodes[tri[1]] + nodes[tri[2]]);
    }

    /// Checks positive areas and boundary-edge/triangle incidence.
    void validate() const;
};

/// Reads an ASCII Gmsh MSH 2.2 file. Supported elements: 2-node lines
/// (collected as tagged boundary edges) and 3-node triangles.
Mesh parse_msh(const std::string& path);

/// Writes the mesh in the same ASCII MSH 2.2 subset parse_msh accepts.
void write_msh(const Mesh& mesh, const std::string& path);

}  // namespace subfvm
