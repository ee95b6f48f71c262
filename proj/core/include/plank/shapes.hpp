#pragma once

#include "plank/body2.hpp"
#include "plank/polytope3.hpp"

namespace plank {

/// Axis-aligned square [0, side] x [0, side].
Body2 make_square(double side = 1.0);

/// Regular n-gon inscribed in a circle of radius `radius` about `center`,
/// first vertex at angle `phase`.
Body2 make_regular_polygon(int n, double radius = 1.0, Vec2 center = {0, 0}, double phase = 0.0);

/// Equilateral triangle with base [0, side] on the x-axis.
Body2 make_equilateral_triangle(double side = 1.0);

/// A fixed acute scalene triangle whose unique minimal-width direction is
/// (0, 1); handy as a body with a single well-separated width minimum.
Body2 make_scalene_triangle();

/// Disc of radius `radius` about `center` (single full-circle arc).
Body2 make_disc(double radius = 1.0, Vec2 center = {0, 0});

/// Reuleaux triangle of constant width `width`, base corner at the origin
/// and base along the x-axis.
Body2 make_reuleaux_triangle(double width = 1.0);

/// Square pyramid with apex at the origin and base corners (+-1/2, +-1/2, 1/2).
/// Its minimal width is 1/2, attained in direction (0, 0, +-1).
Polytope3 make_square_pyramid();

/// Axis-aligned cube [0, side]^3.
Polytope3 make_cube(double side = 1.0);

/// Regular octahedron with vertices at +-radius along each axis.
Polytope3 make_octahedron(double radius = 1.0);

/// A fixed irregular tetrahedron with no symmetries; handy as a body with a
/// single well-separated width minimum.
Polytope3 make_irregular_tetrahedron();

}  // namespace plank
