#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "subfvm/mesh_synth.hpp"
#include "subfvm/regions.hpp"

using namespace subfvm;

TEST_SUITE("regions") {

TEST_CASE("rectangle inclusion volume fraction") {
    Mesh mesh = structured_unit_square(16);
    RegionTags tags = tag_regions(mesh, MorphologySpec::rectangle());
    CHECK(tags.vol_fraction1 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(tags.vol_fraction2 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(!tags.interface_nodes.empty());
    // Interface nodes sit on x = 3/8 or x = 5/8 for the conforming mesh.
    for (int i : tags.interface_nodes) {
        const double x = mesh.nodes[i].x;
        CHECK((std::abs(x - 0.375) < 1e-12 || std::abs(x - 0.625) < 1e-12));
    }
}

TEST_CASE("lshape inclusion volume fraction") {
    Mesh mesh = structured_unit_square(16);
    RegionTags tags = tag_regions(mesh, MorphologySpec::lshape());
    // [1/2,3/4]x[0,1/2] U [1/4,3/4]x[1/2,3/4] has area 1/8 + 1/8 = 1/4.
    CHECK(tags.vol_fraction1 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("tagged circle mesh") {
    Mesh mesh = circle_inclusion_unit_square(32, 3, 6);
    RegionTags tags = tag_regions(mesh, MorphologySpec::from_tags());
    CHECK(tags.vol_fraction1 == doctest::Approx(0.25).epsilon(1e-12));
    // All interface nodes lie on the inclusion polygon (same radius).
    const double r = circle_polygon_radius(32, 0.25);
    for (int i : tags.interface_nodes) {
        const double dx = mesh.nodes[i].x - 0.5, dy = mesh.nodes[i].y - 0.5;
        CHECK(std::sqrt(dx * dx + dy * dy) == doctest::Approx(r).epsilon(1e-6));
    }
}

TEST_CASE("outer boundary nodes of the unit square") {
    Mesh mesh = structured_unit_square(4);
    RegionTags tags = tag_regions(mesh, MorphologySpec::rectangle());
    CHECK(static_cast<int>(tags.outer_boundary_nodes.size()) == 16);
    for (int i : tags.outer_boundary_nodes) {
        const Vec2 p = mesh.nodes[i];
        const bool on_edge = p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
        CHECK(on_edge);
    }
}

TEST_CASE("tag errors") {
    Mesh mesh = structured_unit_square(4);
    mesh.tri_tags.clear();
    CHECK_THROWS_AS(tag_regions(mesh, MorphologySpec::from_tags()), MeshError);
    MorphologySpec outside = MorphologySpec::rectangle();
    outside.x1 = 1.5;
    CHECK_THROWS_AS(tag_regions(mesh, outside), MeshError);
}

}  // TEST_SUITE
