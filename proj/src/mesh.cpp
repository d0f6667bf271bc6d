#include "subfvm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace subfvm {

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
    throw MeshError(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void Mesh::validate() const {
    for (int t = 0; t < num_triangles(); ++t) {
        if (signed_area(t) <= 0.0)
            throw MeshError("triangle " + std::to_string(t) + " has non-positive area");
    }
    // Each boundary edge must belong to exactly one triangle.
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& tri : triangles) {
        for (int e = 0; e < 3; ++e) {
            int a = tri[e], b = tri[(e + 1) % 3];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    for (const auto& be : boundary_edges) {
        auto it = edge_count.find({std::min(be.a, be.b), std::max(be.a, be.b)});
        if (it == edge_count.end() || it->second != 1)
            throw MeshError("boundary edge (" + std::to_string(be.a) + "," +
                            std::to_string(be.b) + ") not on exactly one triangle");
    }
}

Mesh parse_msh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open mesh file: " + path);

    Mesh mesh;
    std::map<long, int> node_id;  // msh node number -> index
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        return true;
    };

    while (next_line()) {
        if (line.rfind("$MeshFormat", 0) == 0) {
            if (!next_line()) parse_fail(path, lineno, "truncated $MeshFormat");
            double version = 0.0;
            int file_type = 0, data_size = 0;
            if (std::sscanf(line.c_str(), "%lf %d %d", &version, &file_type, &data_size) != 3)
                parse_fail(path, lineno, "malformed $MeshFormat header");
            if (version < 2.199 || version > 2.201 || file_type != 0)
                parse_fail(path, lineno, "unsupported MSH format (need ASCII 2.2)");
            next_line();  // $EndMeshFormat
        } else if (line.rfind("$Nodes", 0) == 0) {
            if (!next_line()) parse_fail(path, lineno, "truncated $Nodes");
            long n = std::stol(line);
            for (long i = 0; i < n; ++i) {
                if (!next_line()) parse_fail(path, lineno, "truncated node list");
                long id;
                double x, y, z;
                if (std::sscanf(line.c_str(), "%ld %lf %lf %lf", &id, &x, &y, &z) != 4)
                    parse_fail(path, lineno, "malformed node line");
                if (std::abs(z) > 1e-12)
                    parse_fail(path, lineno, "node has nonzero z coordinate (2D meshes only)");
                node_id[id] = mesh.num_nodes();
                mesh.nodes.push_back({x, y});
            }
            next_line();  // $EndNodes
        } else if (line.rfind("$Elements", 0) == 0) {
            if (!next_line()) parse_fail(path, lineno, "truncated $Elements");
            long n = std::stol(line);
            for (long i = 0; i < n; ++i) {
                if (!next_line()) parse_fail(path, lineno, "truncated element list");
                std::istringstream is(line);
                long id;
                int type, ntags;
                if (!(is >> id >> type >> ntags)) parse_fail(path, lineno, "malformed element line");
                int phys = 0;
                for (int t = 0; t < ntags; ++t) {
                    int tag;
                    if (!(is >> tag)) parse_fail(path, lineno, "malformed element tags");
                    if (t == 0) phys = tag;
                }
                auto read_node = [&]() {
                    long v;
                    if (!(is >> v)) parse_fail(path, lineno, "malformed element connectivity");
                    auto it = node_id.find(v);
                    if (it == node_id.end()) parse_fail(path, lineno, "element references unknown node");
                    return it->second;
                };
                switch (type) {
                    case 1: {  // 2-node line
                        int a = read_node(), b = read_node();
                        mesh.boundary_edges.push_back({a, b, phys});
                        break;
                    }
                    case 2: {  // 3-node triangle
                        int a = read_node(), b = read_node(), c = read_node();
                        mesh.triangles.push_back({a, b, c});
                        mesh.tri_tags.push_back(phys);
                        break;
                    }
                    case 15:  // point element; ignore
                        break;
                    default:
                        parse_fail(path, lineno,
                                   "unsupported element type " + std::to_string(type));
                }
            }
            next_line();  // $EndElements
        }
        // Other sections ($PhysicalNames etc.) are skipped.
    }

    if (mesh.num_nodes() == 0 || mesh.num_triangles() == 0)
        throw MeshError(path + ": no nodes/triangles found");

    // Reorient to counter-clockwise.
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (mesh.signed_area(t) < 0.0) std::swap(mesh.triangles[t][1], mesh.triangles[t][2]);
    }
    mesh.validate();
    return mesh;
}

void write_msh(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MeshError("cannot write mesh file: " + path);
    out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
    out << "$Nodes\n" << mesh.num_nodes() << "\n";
    out.precision(17);
    for (int i = 0; i < mesh.num_nodes(); ++i)
        out << (i + 1) << " " << mesh.nodes[i].x << " " << mesh.nodes[i].y << " 0\n";
    out << "$EndNodes\n$Elements\n"
        << (mesh.num_triangles() + mesh.boundary_edges.size()) << "\n";
    long id = 1;
    for (const auto& be : mesh.boundary_edges)
        out << id++ << " 1 2 " << be.tag << " " << be.tag << " " << (be.a + 1) << " "
            << (be.b + 1) << "\n";
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        int tag = mesh.tri_tags.empty() ? 0 : mesh.tri_tags[t];
        out << id++ << " 2 2 " << tag << " " << tag << " " << (tri[0] + 1) << " "
            << (tri[1] + 1) << " " << (tri[2] + 1) << "\n";
    }
    out << "$EndElements\n";
}

}  // namespace subfvm
