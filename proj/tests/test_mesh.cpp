#include <cstdio>
#include <fstream>
#include <initializer_list>

#include "doctest.h"
#include "subfvm/mesh.hpp"
#include "subfvm/mesh_synth.hpp"

using namespace subfvm;

namespace {
std::string write_temp(const std::string& contents) {
    static int counter = 0;
    std::string path = "/tmp/subfvm_mesh_" + std::to_string(counter++) + ".msh";
    std::ofstream out(path);
    out << contents;
    return path;
}
}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("parses a two triangle square") {
    const char* msh =
        "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
        "$Nodes\n4\n1 0 0 0\n2 1 0 0\n3 1 1 0\n4 0 1 0\n$EndNodes\n"
        "$Elements\n4\n"
        "1 1 2 7 1 1 2\n"
        "2 2 2 9 1 1 2 3\n"
        "3 2 2 9 1 1 3 4\n"
        "4 15 2 0 1 1\n"
        "$EndElements\n";
    Mesh mesh = parse_msh(write_temp(msh));
    CHECK(mesh.num_nodes() == 4);
    CHECK(mesh.num_triangles() == 2);
    CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mesh.boundary_edges.size() == 1);
    CHECK(mesh.tri_tags[0] == 9);
}

TEST_CASE("reorients clockwise triangles") {
    const char* msh =
        "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
        "$Nodes\n3\n1 0 0 0\n2 1 0 0\n3 0 1 0\n$EndNodes\n"
        "$Elements\n1\n1 2 2 1 1 1 3 2\n$EndElements\n";
    Mesh mesh = parse_msh(write_temp(msh));
    CHECK(mesh.signed_area(0) > 0.0);
}

TEST_CASE("rejects malformed input") {
    CHECK_THROWS_AS(parse_msh("/nonexistent/file.msh"), MeshError);
    CHECK_THROWS_AS(
        parse_msh(write_temp("$MeshFormat\n4.1 0 8\n$EndMeshFormat\n")), MeshError);
    // non-planar node
    CHECK_THROWS_AS(parse_msh(write_temp("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
                                         "$Nodes\n1\n1 0 0 0.5\n$EndNodes\n")),
                    MeshError);
    // unsupported element type (4 = tetrahedron)
    CHECK_THROWS_AS(parse_msh(write_temp("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
                                         "$Nodes\n4\n1 0 0 0\n2 1 0 0\n3 0 1 0\n4 1 1 0\n"
                                         "$EndNodes\n"
                                         "$Elements\n1\n1 4 2 0 1 1 2 3 4\n$EndElements\n")),
                    MeshError);
}

TEST_CASE("roundtrip through the writer") {
    Mesh mesh = structured_unit_square(5);
    write_msh(mesh, "/tmp/subfvm_roundtrip.msh");
    Mesh back = parse_msh("/tmp/subfvm_roundtrip.msh");
    REQUIRE(back.num_nodes() == mesh.num_nodes());
    REQUIRE(back.num_triangles() == mesh.num_triangles());
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        CHECK(back.nodes[i].x == mesh.nodes[i].x);
        CHECK(back.nodes[i].y == mesh.nodes[i].y);
    }
    CHECK(back.tri_tags == mesh.tri_tags);
}

TEST_CASE("structured mesh geometry") {
    for (int n : {1, 4, 9}) {
        Mesh mesh = structured_unit_square(n);
        CHECK(mesh.num_nodes() == (n + 1) * (n + 1));
        CHECK(mesh.num_triangles() == 2 * n * n);
        CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(static_cast<int>(mesh.boundary_edges.size()) == 4 * n);
    }
}

TEST_CASE("crisscross mesh geometry") {
    for (int n : {1, 5}) {
        Mesh mesh = crisscross_unit_square(n);
        CHECK(mesh.num_nodes() == (n + 1) * (n + 1) + n * n);
        CHECK(mesh.num_triangles() == 4 * n * n);
        CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(static_cast<int>(mesh.boundary_edges.size()) == 4 * n);
    }
}

TEST_CASE("circle inclusion mesh hits the target volume fraction") {
    Mesh mesh = circle_inclusion_unit_square(32, 4, 8);
    CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-12));
    double inclusion = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t)
        if (mesh.tri_tags[t] == 1) inclusion += mesh.signed_area(t);
    CHECK(inclusion == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("validate catches degenerate triangles") {
    Mesh mesh;
    mesh.nodes = {{0, 0}, {1, 0}, {2, 0}};
    mesh.triangles = {{0, 1, 2}};
    CHECK_THROWS_AS(mesh.validate(), MeshError);
}

}  // TEST_SUITE
