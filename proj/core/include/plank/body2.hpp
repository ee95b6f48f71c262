#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "plank/tolerance.hpp"
#include "plank/vec.hpp"

namespace plank {

enum class PieceKind { Segment, Arc };

/// One boundary piece of a convex body, traversed counterclockwise
/// (interior on the left).
///
/// Segments run `from` -> `to`. Arcs are circular, centered at `center` with
/// radius `radius`, swept counterclockwise from angle `ang0` to `ang1`
/// (ang1 > ang0, lifted so the range never wraps); their endpoints are cached
/// in `from`/`to`. The outward normal at arc angle theta is dir(theta), so a
/// convex counterclockwise boundary always traverses its arcs counterclockwise
/// around their own centers.
struct Piece {
    PieceKind kind = PieceKind::Segment;
    Vec2 from;
    Vec2 to;
    Vec2 center;
    double radius = 0.0;
    double ang0 = 0.0;
    double ang1 = 0.0;
    // Cached by Body2 construction.
    double length = 0.0;
    double start_arclen = 0.0;

    /// Point at arclength s within the piece, s in [0, length].
    Vec2 point_at(double s) const;
    /// Unit forward (counterclockwise) tangent at arclength s.
    Vec2 tangent_at(double s) const;
    /// Unit outward normal at arclength s.
    Vec2 normal_at(double s) const;
    /// Outward normal angle at the start / end of the piece. For segments the
    /// two coincide; for arcs they are ang0 / ang1.
    double normal_angle_start() const;
    double normal_angle_end() const;
};

/// A location on the boundary: piece index + arclength within the piece,
/// plus the cached global arclength and coordinates.
struct BoundaryPoint {
    std::size_t piece = 0;
    double local = 0.0;
    double arclen = 0.0;
    Vec2 point;
};

/// Convex body in the plane bounded by segments and circular arcs.
///
/// Construction validates closure (consecutive pieces share endpoints),
/// counterclockwise orientation, convexity (the outward normal angle is
/// nondecreasing along the boundary with total turn 2*pi), and
/// full-dimensionality. All geometric queries assume a valid body.
class Body2 {
public:
    Body2() = default;

    /// Build from polygon vertices. Accepts clockwise input (reversed),
    /// drops duplicate and collinear vertices, rejects non-convex input.
    static Body2 from_polygon(std::vector<Vec2> vertices, double tol = tolerances().geom);

    /// Build from explicit boundary pieces (lengths/arclens may be left 0;
    /// they are recomputed). Rejects open, reflex, or degenerate chains.
    static Body2 from_pieces(std::vector<Piece> pieces, double tol = tolerances().geom);

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool is_polygon() const { return polygon_; }
    /// Piece start points in counterclockwise order.
    std::vector<Vec2> vertices() const;
    double perimeter() const { return perimeter_; }

    /// Support function h(u) = max_{x in K} <x, u>. `u` need not be unit;
    /// the result scales linearly with |u|.
    double support(Vec2 u) const;
    /// A maximizer of <x, u> over K. When the maximizing face is a segment,
    /// returns its counterclockwise-first endpoint.
    Vec2 support_point(Vec2 u) const;
    /// Extreme points of the face F(u) = argmax <x, u>, ordered along
    /// perp(u). Equal points indicate a singleton face.
    std::pair<Vec2, Vec2> support_face(Vec2 u, double tol = tolerances().geom) const;

    /// Width in direction u (distance between the two supporting lines
    /// orthogonal to u). `u` must be unit length.
    double width(Vec2 u) const { return support(u) + support(-u); }

    /// Signed distance from p to the boundary: negative inside, positive
    /// outside, zero on the boundary. Exact up to rounding (no sampling).
    double signed_boundary_distance(Vec2 p) const;
    bool contains(Vec2 p, double tol = tolerances().refine) const {
        return signed_boundary_distance(p) <= tol;
    }
    bool strictly_contains(Vec2 p, double tol = tolerances().refine) const {
        return signed_boundary_distance(p) < -tol;
    }
    /// Distance from p to the complement of K (0 outside).
    double distance_to_complement(Vec2 p) const;

    /// Boundary point with minimal y, ties broken by minimal x.
    Vec2 lowest_point() const;
    /// Boundary location at global arclength s (wraps modulo the perimeter).
    BoundaryPoint boundary_at(double s) const;
    /// Boundary location of the start of piece `i`.
    BoundaryPoint piece_start(std::size_t i) const;

    /// Axis-aligned bounding box {min, max}.
    std::array<Vec2, 2> bbox() const;
    /// A point strictly inside the body (average of piece endpoints and
    /// midpoints).
    Vec2 interior_point() const;

private:
    std::vector<Piece> pieces_;
    double perimeter_ = 0.0;
    bool polygon_ = true;

    void finalize(double tol);
};

/// Minimal width together with a direction attaining it.
struct MinimalWidth2 {
    double value = 0.0;
    Vec2 direction;
};

/// Minimal width over all directions. Exact (edge-normal candidates) for
/// polygons; grid scan plus golden-section refinement to tolerances().refine
/// for bodies with arcs. Ties among minimizing directions (both orientations
/// considered) are broken by the lexicographically smallest direction.
MinimalWidth2 minimal_width(const Body2& body);

/// Candidate directions for width minima, canonicalized to the upper
/// half-circle (y > 0, or y == 0 and x > 0). For polygons these are the edge
/// normals; for arc bodies, segment normals plus refined local minima of the
/// width function. minimal_width() equals the min of width() over these.
std::vector<Vec2> width_candidate_directions(const Body2& body);

/// True if `theta` lies in the counterclockwise angular range [a0, a1]
/// (a1 >= a0, lifted), comparing modulo 2*pi with slack `tol`.
bool angle_in_ccw_range(double theta, double a0, double a1, double tol = 1e-12);

}  // namespace plank
