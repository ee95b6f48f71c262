#include "plank/shapes.hpp"

#include <cmath>

namespace plank {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Body2 make_square(double side) {
    return Body2::from_polygon({{0, 0}, {side, 0}, {side, side}, {0, side}});
}

Body2 make_regular_polygon(int n, double radius, Vec2 center, double phase) {
    std::vector<Vec2> vs;
    vs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double a = phase + 2.0 * kPi * i / n;
        vs.push_back(center + radius * dir_from_angle(a));
    }
    return Body2::from_polygon(std::move(vs));
}

Body2 make_equilateral_triangle(double side) {
    return Body2::from_polygon({{0, 0}, {side, 0}, {0.5 * side, side * std::sqrt(3.0) / 2.0}});
}

Body2 make_scalene_triangle() {
    // All angles acute, all edge heights distinct; the minimum height (1.1)
    // belongs to the bottom edge, so the minimal-width direction is (0, 1)
    // and the opposite vertex is the unique top support point.
    return Body2::from_polygon({{0, 0}, {2, 0}, {0.7, 1.1}});
}

Body2 make_disc(double radius, Vec2 center) {
    Piece arc;
    arc.kind = PieceKind::Arc;
    arc.center = center;
    arc.radius = radius;
    arc.ang0 = 0.0;
    arc.ang1 = 2.0 * kPi;
    return Body2::from_pieces({arc});
}

Body2 make_reuleaux_triangle(double width) {
    Vec2 a{0, 0}, b{width, 0}, c{0.5 * width, width * std::sqrt(3.0) / 2.0};
    auto arc = [&](Vec2 center, double a0, double a1) {
        Piece p;
        p.kind = PieceKind::Arc;
        p.center = center;
        p.radius = width;
        p.ang0 = a0;
        p.ang1 = a1;
        return p;
    };
    // Each arc is centered at the opposite corner and spans a third of a turn
    // of normal direction; boundary runs b -> c -> a -> b.
    return Body2::from_pieces({
        arc(a, 0.0, kPi / 3.0),
        arc(b, 2.0 * kPi / 3.0, kPi),
        arc(c, 4.0 * kPi / 3.0, 5.0 * kPi / 3.0),
    });
}

Polytope3 make_square_pyramid() {
    return Polytope3::from_points(
        {{0, 0, 0}, {0.5, 0.5, 0.5}, {-0.5, 0.5, 0.5}, {-0.5, -0.5, 0.5}, {0.5, -0.5, 0.5}});
}

Polytope3 make_cube(double side) {
    std::vector<Vec3> vs;
    for (int i = 0; i < 8; ++i) {
        vs.push_back({side * (i & 1), side * ((i >> 1) & 1), side * ((i >> 2) & 1)});
    }
    return Polytope3::from_points(std::move(vs));
}

Polytope3 make_octahedron(double radius) {
    return Polytope3::from_points({{radius, 0, 0},
                                   {-radius, 0, 0},
                                   {0, radius, 0},
                                   {0, -radius, 0},
                                   {0, 0, radius},
                                   {0, 0, -radius}});
}

Polytope3 make_irregular_tetrahedron() {
    return Polytope3::from_points({{0, 0, 0}, {1.9, 0.1, 0}, {0.4, 1.3, 0.2}, {0.6, 0.5, 1.6}});
}

}  // namespace plank
