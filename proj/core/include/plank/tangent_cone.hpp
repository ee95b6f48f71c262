#pragma once

#include <vector>

#include "plank/body2.hpp"
#include "plank/polytope3.hpp"

namespace plank {

/// Tangent cone of a planar convex body at a boundary point: the closure of
/// all rays from the apex through body points. Two unit ray directions in
/// counterclockwise order: `forward` along the boundary in the traversal
/// direction, `backward` toward the previous boundary. At piece-interior
/// (smooth or edge) points backward == -forward and the cone is a half-plane.
struct Cone2 {
    Vec2 apex;
    Vec2 forward;
    Vec2 backward;

    /// Strictly pointed: the interior opening angle is < pi.
    bool is_pointed(double tol = 1e-12) const { return cross(forward, backward) > tol; }
    /// Outward normals of the two bounding rays (meaningful when pointed).
    std::vector<Vec2> outward_normals() const {
        return {{forward.y, -forward.x}, {-backward.y, backward.x}};
    }
    std::vector<Vec2> generators() const { return {forward, backward}; }
};

/// Tangent cone of a polytope at a boundary point: intersection of the
/// half-spaces { d : <d, n> <= 0 } over `facet_normals`, with `generators`
/// spanning rays (the edge directions out of a vertex; tangential spanning
/// directions in the edge-/face-interior cases).
struct Cone3 {
    Vec3 apex;
    std::vector<Vec3> generators;
    std::vector<Vec3> facet_normals;
};

/// Tangent cone at a boundary point of a 2D body. At a vertex, the wedge of
/// the two one-sided tangents; on a piece interior, the tangent half-plane.
/// Throws InvalidBody if x is not on the boundary (within tol).
Cone2 tangent_cone(const Body2& body, Vec2 x, double tol = tolerances().geom);

/// Tangent cone at a boundary point of a polytope: vertex cone (edge-direction
/// generators, incident facet normals), edge wedge, or facet half-space.
/// Throws InvalidBody if x is not on the boundary (within tol).
Cone3 tangent_cone(const Polytope3& poly, Vec3 x, double tol = tolerances().geom);

/// Unit vector strictly interior to a pointed cone: the normalized sum of the
/// unit generators (2D) / of the inward facet normals (3D). Verified a
/// posteriori: <v, n> < -1e-9 for every outward facet normal n; throws
/// NumericFailure otherwise (cone not pointed enough).
Vec2 interior_shift_direction(const Cone2& cone);
Vec3 interior_shift_direction(const Cone3& cone);

/// Slice of a 2D cone (apex translated to the origin frame of the body) by
/// the horizontal line y = t: an x-interval.
struct SectionInterval {
    double t = 0.0;
    double xlo = 0.0;
    double xhi = 0.0;
};

/// Slice { x : (x, t) in cone } for an upward-opening pointed wedge. Requires
/// both rays to have positive y-component; throws InvalidBody otherwise.
SectionInterval cross_section(const Cone2& cone, double t);

/// Slice of an upward-opening pointed 3D cone by the plane z = t: the convex
/// polygon with one vertex per generator ray, counterclockwise. Requires all
/// generators to have positive z-component.
SectionPolygon cross_section(const Cone3& cone, double t);

}  // namespace plank
