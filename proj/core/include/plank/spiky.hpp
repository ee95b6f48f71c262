#pragma once

#include <optional>

#include "plank/body2.hpp"
#include "plank/polytope3.hpp"
#include "plank/tangent_cone.hpp"

namespace plank {

/// Evidence that a body is spiky in a direction: the support set in that
/// direction is the single point `apex`, and every tangent-cone generator g
/// there satisfies <g, direction> <= aperture < 0, so the cone points
/// strictly away from the supporting hyperplane.
struct SpikeWitness2 {
    Vec2 direction;
    Vec2 apex;
    Cone2 cone;
    double aperture = 0.0;
};

struct SpikeWitness3 {
    Vec3 direction;
    Vec3 apex;
    Cone3 cone;
    double aperture = 0.0;
};

/// Spikiness test in a fixed unit direction. Returns a witness iff the
/// argmax of <., u> is a unique point (support face shorter than `tol`) and
/// all tangent-cone generators g there satisfy <g, u> < -tol.
std::optional<SpikeWitness2> is_spiky(const Body2& body, Vec2 u, double tol = 1e-9);
std::optional<SpikeWitness3> is_spiky(const Polytope3& poly, Vec3 u, double tol = 1e-9);

/// Searches the minimal-width directions for one in which the body is spiky.
/// Candidates (both orientations of each) are scanned in lexicographic order
/// and the first witness is returned, so the result is deterministic.
std::optional<SpikeWitness2> find_spiky_minimal_width_direction(const Body2& body);
std::optional<SpikeWitness3> find_spiky_minimal_width_direction(const Polytope3& poly);

/// A chord realizing the width in direction u: b - a = width * (-u), with a
/// on the supporting hyperplane in direction u and b on the opposite one,
/// both in the body.
struct Chord2 {
    Vec2 a, b;
};
struct Chord3 {
    Vec3 a, b;
};

/// Width-realizing chord for a width-minimizing direction u_star, found by
/// intersecting the projections of the two opposite support faces along
/// u_star. Ties are broken by the lexicographically smallest a. Throws
/// InvalidBody when the projections are disjoint (u_star not minimizing).
Chord2 minimal_width_chord(const Body2& body, Vec2 u_star);
Chord3 minimal_width_chord(const Polytope3& poly, Vec3 u_star);

/// Direct similarity x -> scale * R(angle) * x + offset.
struct Similarity2 {
    double angle = 0.0;
    double scale = 1.0;
    Vec2 offset;

    Vec2 apply(Vec2 x) const { return scale * (Mat2::rotation(angle) * x) + offset; }
    Vec2 apply_direction(Vec2 d) const { return Mat2::rotation(angle) * d; }
    Similarity2 inverse() const;
};

struct Similarity3 {
    Mat3 rot;
    double scale = 1.0;
    Vec3 offset;

    Vec3 apply(Vec3 x) const { return scale * (rot * x) + offset; }
    Vec3 apply_direction(Vec3 d) const { return rot * d; }
    Similarity3 inverse() const;
};

/// Transform a body by a direct similarity (arcs stay arcs; the boundary
/// orientation is preserved).
Body2 transformed(const Body2& body, const Similarity2& map);
Polytope3 transformed(const Polytope3& poly, const Similarity3& map);

/// A body moved to standard position: spike direction down (-e_d), apex at
/// the origin, minimal width 1, body in the slab 0 <= x_d <= 1.
struct Standardization2 {
    Similarity2 to_standard;
    Similarity2 from_standard;
    Body2 body;
    SpikeWitness2 witness;  // in the standardized frame
    double original_width = 0.0;
};

struct Standardization3 {
    Similarity3 to_standard;
    Similarity3 from_standard;
    Polytope3 body;
    SpikeWitness3 witness;
    double original_width = 0.0;
};

/// Standardize a body that is spiky in the minimal-width direction u.
/// Throws InvalidBody when u is not minimizing or the body is not spiky in u.
Standardization2 standardize(const Body2& body, Vec2 u);
Standardization3 standardize(const Polytope3& poly, Vec3 u);

}  // namespace plank
