#pragma once

#include <array>
#include <vector>

#include "plank/vec.hpp"

namespace plank {

/// Circular arc as a curve: counterclockwise from angle a0 to a1 (a1 >= a0).
struct ArcPrim {
    Vec2 center;
    double radius = 0.0;
    double a0 = 0.0;
    double a1 = 0.0;
};

/// A compact planar set given as a finite union of primitives: points,
/// segments, arcs (curves), and filled convex polygons (CCW vertex lists).
struct ShapeSet {
    std::vector<Vec2> points;
    std::vector<std::array<Vec2, 2>> segments;
    std::vector<ArcPrim> arcs;
    std::vector<std::vector<Vec2>> polygons;

    bool empty() const {
        return points.empty() && segments.empty() && arcs.empty() && polygons.empty();
    }
    /// Exact Euclidean distance from x to the union.
    double distance_to(Vec2 x) const;
};

/// Hausdorff distance between two nonempty shape sets.
///
/// For unions of points and segments the value is exact: the directed
/// supremum along each source segment is attained at segment endpoints,
/// perpendicular-foot breakpoints, or pairwise equidistance crossings, all of
/// which are enumerated. When arcs or polygons are involved, the supremum is
/// sampled densely (4096 samples per primitive) and the best bracket is
/// refined by golden section to 1e-9.
///
/// Throws InvalidBody when either set is empty.
double hausdorff_distance(const ShapeSet& a, const ShapeSet& b);

}  // namespace plank
