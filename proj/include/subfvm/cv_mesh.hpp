#pragma once

#include <array>
#include <vector>

#include "subfvm/mesh.hpp"

namespace subfvm {

/// One face of a sub-control volume: a straight segment of the control-volume
/// boundary, traversed anticlockwise around the owning node. The increments
/// (dx, dy) are the traversal deltas used in the midpoint line-integral rule.
struct CvFace {
    Vec2 midpoint;
    double dx = 0.0;
    double dy = 0.0;
};

/// The portion of a node's control volume inside one triangle: the
/// (vertex, edge-midpoint, barycenter, edge-midpoint) quadrilateral with its
/// two interior faces.
struct SubControlVolume {
    int node = -1;
    int triangle = -1;
    std::array<CvFace, 2> faces;  // midpoint(edge to next vertex) -> barycenter -> midpoint(edge to prev vertex)
    double area = 0.0;
};

/// Shape-function data for one triangle: N_i(x,y) = (a_i x + b_i y + c_i)/(2 A).
struct ShapeCoeffs {
    std::array<double, 3> a{};
    std::array<double, 3> b{};
    std::array<double, 3> c{};
    double area = 0.0;  // triangle area A
};

struct CvMesh {
    Mesh base;
    std::vector<double> cv_volumes;        // per node
    std::vector<SubControlVolume> scvs;    // 3 per triangle
    std::vector<ShapeCoeffs> shape_coeffs; // per triangle

    int num_nodes() const { return base.num_nodes(); }

    double grad_x(int tri, int local) const {
        const auto& s = shape_coeffs[tri];
        return s.a[local] / (2.0 * s.area);
    }
    double grad_y(int tri, int local) const {
        const auto& s = shape_coeffs[tri];
        return s.b[local] / (2.0 * s.area);
    }
};

/// Builds the median-dual control volumes (midpoint/barycenter construction)
/// and the linear shape-function coefficients.
CvMesh build_control_volumes(const Mesh& mesh);

}  // namespace subfvm
