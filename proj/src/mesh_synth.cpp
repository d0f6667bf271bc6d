#include "subfvm/mesh_synth.hpp"

#include <cmath>
#include <map>

namespace subfvm {

namespace {

void finish(Mesh& mesh) {
    for (int t = 0; t < mesh.num_triangles(); ++t)
        if (mesh.signed_area(t) < 0.0) std::swap(mesh.triangles[t][1], mesh.triangles[t][2]);
    if (mesh.tri_tags.empty()) mesh.tri_tags.assign(mesh.num_triangles(), 0);

    // Collect boundary edges (edges on exactly one triangle).
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& tri : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = tri[e], b = tri[(e + 1) % 3];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    mesh.boundary_edges.clear();
    for (const auto& [edge, count] : edge_count)
        if (count == 1) mesh.boundary_edges.push_back({edge.first, edge.second, 1});
    mesh.validate();
}

}  // namespace

Mesh structured_unit_square(int n, bool alternate) {
    if (n < 1) throw MeshError("structured mesh needs n >= 1");
    Mesh mesh;
    auto node = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            mesh.nodes.push_back({double(i) / n, double(j) / n});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int a = node(i, j), b = node(i + 1, j), c = node(i + 1, j + 1), d = node(i, j + 1);
            bool flip = alternate && ((i + j) % 2 == 1);
            if (!flip) {
                mesh.triangles.push_back({a, b, c});
                mesh.triangles.push_back({a, c, d});
            } else {
                mesh.triangles.push_back({a, b, d});
                mesh.triangles.push_back({b, c, d});
            }
        }
    finish(mesh);
    return mesh;
}

Mesh crisscross_unit_square(int n) {
    if (n < 1) throw MeshError("crisscross mesh needs n >= 1");
    Mesh mesh;
    auto node = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            mesh.nodes.push_back({double(i) / n, double(j) / n});
    const int c0 = mesh.num_nodes();
    auto centre = [&](int i, int j) { return c0 + j * n + i; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            mesh.nodes.push_back({(i + 0.5) / n, (j + 0.5) / n});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int a = node(i, j), b = node(i + 1, j), c = node(i + 1, j + 1), d = node(i, j + 1);
            int m = centre(i, j);
            mesh.triangles.push_back({a, b, m});
            mesh.triangles.push_back({b, c, m});
            mesh.triangles.push_back({c, d, m});
            mesh.triangles.push_back({d, a, m});
        }
    finish(mesh);
    return mesh;
}

double circle_polygon_radius(int n_theta, double area_fraction) {
    // polygon area = n r^2 sin(2 pi / n) / 2
    return std::sqrt(2.0 * area_fraction / (n_theta * std::sin(2.0 * M_PI / n_theta)));
}

Mesh circle_inclusion_unit_square(int n_theta, int rings_inner, int rings_outer,
                                  double area_fraction) {
    if (n_theta % 8 != 0) throw MeshError("n_theta must be a multiple of 8");
    if (rings_inner < 1 || rings_outer < 1) throw MeshError("need at least one ring each side");
    const double r = circle_polygon_radius(n_theta, area_fraction);
    const Vec2 centre{0.5, 0.5};

    Mesh mesh;
    // Node 0: centre. Rings 1..rings_inner: polar. Rings
    // rings_inner+1..rings_inner+rings_outer: blend towards the square boundary.
    mesh.nodes.push_back(centre);
    auto ring_node = [&](int ring, int i) {
        return 1 + (ring - 1) * n_theta + (i % n_theta);
    };
    std::vector<Vec2> circle_pts(n_theta), square_pts(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        double th = 2.0 * M_PI * i / n_theta;
        Vec2 dir{std::cos(th), std::sin(th)};
        circle_pts[i] = centre + r * dir;
        double t_hit = 0.5 / std::max(std::abs(dir.x), std::abs(dir.y));
        square_pts[i] = centre + t_hit * dir;
    }
    for (int ring = 1; ring <= rings_inner; ++ring) {
        double f = double(ring) / rings_inner;
        for (int i = 0; i < n_theta; ++i)
            mesh.nodes.push_back(centre + f * (circle_pts[i] - centre));
    }
    for (int ring = 1; ring <= rings_outer; ++ring) {
        double f = double(ring) / rings_outer;
        for (int i = 0; i < n_theta; ++i)
            mesh.nodes.push_back(circle_pts[i] + f * (square_pts[i] - circle_pts[i]));
    }

    auto add_tri = [&](int a, int b, int c, int tag) {
        mesh.triangles.push_back({a, b, c});
        mesh.tri_tags.push_back(tag);
    };
    // Central fan (inclusion).
    for (int i = 0; i < n_theta; ++i) add_tri(0, ring_node(1, i), ring_node(1, i + 1), 1);
    // Annuli.
    const int total_rings = rings_inner + rings_outer;
    for (int ring = 1; ring < total_rings; ++ring) {
        int tag = ring < rings_inner ? 1 : 2;
        for (int i = 0; i < n_theta; ++i) {
            int a = ring_node(ring, i), b = ring_node(ring, i + 1);
            int c = ring_node(ring + 1, i + 1), d = ring_node(ring + 1, i);
            // Alternate the quad diagonal to avoid a chiral mesh.
            if (i % 2 == 0) {
                add_tri(a, b, c, tag);
                add_tri(a, c, d, tag);
            } else {
                add_tri(a, b, d, tag);
                add_tri(b, c, d, tag);
            }
        }
    }
    finish(mesh);
    return mesh;
}

void apply_region_tags(Mesh& mesh, const MorphologySpec& morphology) {
    mesh.tri_tags.resize(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t)
        mesh.tri_tags[t] = morphology.contains(mesh.barycenter(t)) ? 1 : 2;
}

}  // namespace subfvm
