#pragma once

#include <set>
#include <vector>

#include "subfvm/mesh.hpp"

namespace subfvm {

enum class MorphologyKind { Rectangle, Circle, LShape, FromMeshTags };

/// Analytic inclusion geometry on the unit cell, or deferral to the mesh's
/// physical tags. All built-ins carry 25 % inclusion volume fraction.
struct MorphologySpec {
    MorphologyKind kind = MorphologyKind::Rectangle;
    // Rectangle: [x0,x1] x [y0,y1]
    double x0 = 3.0 / 8.0, x1 = 5.0 / 8.0, y0 = 0.0, y1 = 1.0;
    // Circle: (cx,cy), radius
    double cx = 0.5, cy = 0.5, radius = 0.28209479177387814;  // area = 1/4
    // FromMeshTags: triangles with tri_tag == inclusion_tag belong to region 1
    int inclusion_tag = 1;

    static MorphologySpec rectangle() { return {}; }
    static MorphologySpec circle() {
        MorphologySpec m;
        m.kind = MorphologyKind::Circle;
        return m;
    }
    static MorphologySpec lshape() {
        MorphologySpec m;
        m.kind = MorphologyKind::LShape;
        return m;
    }
    static MorphologySpec from_tags(int inclusion_tag = 1) {
        MorphologySpec m;
        m.kind = MorphologyKind::FromMeshTags;
        m.inclusion_tag = inclusion_tag;
        return m;
    }

    /// Indicator for the inclusion region (analytic kinds only).
    bool contains(Vec2 p) const;
};

struct RegionTags {
    std::vector<int> tri_region;      // 1 = inclusion (region 1), 0 = matrix (region 2)
    std::set<int> interface_nodes;    // nodes shared by triangles of both regions
    std::set<int> outer_boundary_nodes;
    double vol_fraction1 = 0.0;
    double vol_fraction2 = 0.0;
};

/// Assigns each triangle by barycenter membership (or mesh tag) and derives
/// the interface node set. Requires an interface-conforming mesh for the
/// analytic morphologies.
RegionTags tag_regions(const Mesh& mesh, const MorphologySpec& morphology);

}  // namespace subfvm
