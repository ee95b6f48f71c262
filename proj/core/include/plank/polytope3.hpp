#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "plank/tolerance.hpp"
#include "plank/vec.hpp"

namespace plank {

/// One (merged, possibly non-triangular) facet of a convex polytope.
struct Facet {
    Vec3 normal;             // unit, outward
    double offset = 0.0;     // <x, normal> = offset on the facet plane
    std::vector<int> loop;   // vertex indices, counterclockwise seen from outside
};

/// Convex polytope in 3-space built as the convex hull of a point cloud.
///
/// Construction deduplicates input points at the given tolerance, rejects
/// degenerate (affinely <= 2-dimensional) input, triangulates the hull
/// incrementally, and merges coplanar triangles into polygonal facets. The
/// stored vertices are exactly the extreme points among the inputs.
class Polytope3 {
public:
    Polytope3() = default;

    static Polytope3 from_points(std::vector<Vec3> points, double tol = tolerances().geom);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    /// Unique edges as index pairs {i, j} with i < j, sorted lexicographically.
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }

    double support(Vec3 u) const;
    Vec3 support_point(Vec3 u) const;
    /// Indices of vertices attaining the support value within tol (the
    /// support face's vertex set).
    std::vector<int> support_set(Vec3 u, double tol = tolerances().geom) const;

    double width(Vec3 u) const { return support(u) + support(-u); }

    /// max over facets of <p, n> - offset: negative inside, zero on the
    /// boundary, positive outside. For interior points, equals minus the
    /// distance to the boundary.
    double facet_excess(Vec3 p) const;
    bool contains(Vec3 p, double tol = tolerances().refine) const { return facet_excess(p) <= tol; }
    bool strictly_contains(Vec3 p, double tol = tolerances().refine) const {
        return facet_excess(p) < -tol;
    }
    double distance_to_complement(Vec3 p) const;

    Vec3 interior_point() const;
    std::array<Vec3, 2> bbox() const;

private:
    std::vector<Vec3> vertices_;
    std::vector<Facet> facets_;
    std::vector<std::array<int, 2>> edges_;
};

struct MinimalWidth3 {
    double value = 0.0;
    Vec3 direction;
};

/// Candidate directions for the width minimum of a polytope: all facet
/// normals plus normalized cross products of all edge-direction pairs,
/// canonicalized to one orientation and deduplicated.
std::vector<Vec3> width_candidate_directions(const Polytope3& poly);

/// Minimal width over all directions (exact candidate enumeration). Ties are
/// broken by the lexicographically smallest direction among +-candidates.
MinimalWidth3 minimal_width(const Polytope3& poly);

/// Convex polygon obtained by slicing at height t, i.e. by the plane z = t,
/// with vertices in (x, y) coordinates, counterclockwise.
struct SectionPolygon {
    double t = 0.0;
    std::vector<Vec2> polygon;
};

/// Slice the polytope by the plane z = t. Throws InvalidBody when the slice
/// has empty relative interior (misses the polytope or degenerates to a
/// point/segment).
SectionPolygon cross_section(const Polytope3& poly, double t);

}  // namespace plank
