#include "subfvm/regions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace subfvm {

bool MorphologySpec::contains(Vec2 p) const {
    switch (kind) {
        case MorphologyKind::Rectangle:
            return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
        case MorphologyKind::Circle: {
            double dx = p.x - cx, dy = p.y - cy;
            return dx * dx + dy * dy < radius * radius;
        }
        case MorphologyKind::LShape:
            // [1/2,3/4]x[0,1/2] U [1/4,3/4]x[1/2,3/4]
            return (p.x > 0.5 && p.x < 0.75 && p.y > 0.0 && p.y < 0.5) ||
                   (p.x > 0.25 && p.x < 0.75 && p.y > 0.5 && p.y < 0.75);
        case MorphologyKind::FromMeshTags:
            throw MeshError("FromMeshTags morphology has no analytic indicator");
    }
    return false;
}

RegionTags tag_regions(const Mesh& mesh, const MorphologySpec& morphology) {
    if (morphology.kind != MorphologyKind::FromMeshTags &&
        morphology.kind != MorphologyKind::Circle) {
        // Rect/L-shape regions must sit inside the unit cell.
        if (morphology.kind == MorphologyKind::Rectangle &&
            (morphology.x0 < 0 || morphology.x1 > 1 || morphology.y0 < 0 || morphology.y1 > 1))
            throw MeshError("morphology region outside the unit cell");
    }

    RegionTags tags;
    tags.tri_region.resize(mesh.num_triangles());
    double a1 = 0.0, a2 = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        bool in_region1;
        if (morphology.kind == MorphologyKind::FromMeshTags) {
            if (mesh.tri_tags.empty()) throw MeshError("mesh carries no physical tags");
            in_region1 = mesh.tri_tags[t] == morphology.inclusion_tag;
        } else {
            in_region1 = morphology.contains(mesh.barycenter(t));
        }
        tags.tri_region[t] = in_region1 ? 1 : 0;
        (in_region1 ? a1 : a2) += mesh.signed_area(t);
    }
    double total = a1 + a2;
    tags.vol_fraction1 = a1 / total;
    tags.vol_fraction2 = a2 / total;

    // Interface nodes: touched by triangles of both regions.
    std::vector<std::array<bool, 2>> touch(mesh.num_nodes(), {false, false});
    for (int t = 0; t < mesh.num_triangles(); ++t)
        for (int v : mesh.triangles[t]) touch[v][tags.tri_region[t]] = true;
    for (int i = 0; i < mesh.num_nodes(); ++i)
        if (touch[i][0] && touch[i][1]) tags.interface_nodes.insert(i);

    // Outer boundary: nodes on edges belonging to exactly one triangle.
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& tri : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = tri[e], b = tri[(e + 1) % 3];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    for (const auto& [edge, count] : edge_count)
        if (count == 1) {
            tags.outer_boundary_nodes.insert(edge.first);
            tags.outer_boundary_nodes.insert(edge.second);
        }
    return tags;
}

}  // namespace subfvm
