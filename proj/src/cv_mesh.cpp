#include "subfvm/cv_mesh.hpp"

#include <cmath>

namespace subfvm {

CvMesh build_control_volumes(const Mesh& mesh) {
    CvMesh cv;
    cv.base = mesh;
    cv.cv_volumes.assign(mesh.num_nodes(), 0.0);
    cv.scvs.reserve(3 * mesh.num_triangles());
    cv.shape_coeffs.resize(mesh.num_triangles());

    double scale = std::sqrt(std::abs(mesh.total_area()));

    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const Vec2 p[3] = {mesh.nodes[tri[0]], mesh.nodes[tri[1]], mesh.nodes[tri[2]]};
        double area = mesh.signed_area(t);
        if (area <= 0.0 || area < 1e-14 * scale * scale)
            throw MeshError("degenerate triangle " + std::to_string(t));

        auto& sc = cv.shape_coeffs[t];
        sc.area = area;
        for (int i = 0; i < 3; ++i) {
            const Vec2 &pj = p[(i + 1) % 3], &pk = p[(i + 2) % 3];
            sc.a[i] = pj.y - pk.y;
            sc.b[i] = pk.x - pj.x;
            sc.c[i] = pj.x * pk.y - pk.x * pj.y;
        }

        Vec2 bary = (1.0 / 3.0) * (p[0] + p[1] + p[2]);
        for (int i = 0; i < 3; ++i) {
            // Anticlockwise around vertex i: edge-midpoint towards the next
            // vertex, then barycenter, then edge-midpoint towards the previous.
            Vec2 m_next = 0.5 * (p[i] + p[(i + 1) % 3]);
            Vec2 m_prev = 0.5 * (p[i] + p[(i + 2) % 3]);

            SubControlVolume scv;
            scv.node = tri[i];
            scv.triangle = t;
            scv.faces[0] = {0.5 * (m_next + bary), bary.x - m_next.x, bary.y - m_next.y};
            scv.faces[1] = {0.5 * (bary + m_prev), m_prev.x - bary.x, m_prev.y - bary.y};
            scv.area = area / 3.0;  // exact for the midpoint/barycenter dual
            cv.scvs.push_back(scv);
            cv.cv_volumes[tri[i]] += scv.area;
        }
    }
    return cv;
}

}  // namespace subfvm
