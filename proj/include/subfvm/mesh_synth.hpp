#pragma once

#include "subfvm/mesh.hpp"
#include "subfvm/regions.hpp"

namespace subfvm {

/// Structured triangulation of the unit square with n x n cells. With
/// alternate = true the diagonal direction alternates per cell (union-jack
/// style), which keeps the discretisation symmetric under x/y reflection.
/// Grid lines fall on multiples of 1/n, so the rectangle morphology is
/// interface-conforming when 8 | n and the L-shape when 4 | n.
Mesh structured_unit_square(int n, bool alternate = true);

/// Crisscross triangulation: each of the n x n cells is split into four
/// triangles by both diagonals (extra node at the cell centre). The longest
/// edge is the cell side 1/n, which makes this the finest mesh family for a
/// given mesh parameter h.
Mesh crisscross_unit_square(int n);

/// Boundary-fitted mesh of the unit square with a circular inclusion centred
/// at (0.5, 0.5). The circle is approximated by an inscribed n_theta-gon whose
/// radius is adjusted so the polygon area equals area_fraction; the interior
/// is meshed with polar rings, the exterior by blending the polygon towards
/// the square boundary. n_theta must be a multiple of 8 so that the square
/// corners are mesh nodes and opposite sides pair periodically.
Mesh circle_inclusion_unit_square(int n_theta, int rings_inner, int rings_outer,
                                  double area_fraction = 0.25);

/// Adjusted polygon radius used by circle_inclusion_unit_square.
double circle_polygon_radius(int n_theta, double area_fraction);

/// Fills tri_tags from the morphology indicator (1 = inclusion, 2 = matrix).
void apply_region_tags(Mesh& mesh, const MorphologySpec& morphology);

}  // namespace subfvm
