#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "plank/body2.hpp"
#include "plank/plank.hpp"

namespace plank {

/// One step of the boundary walk: the visited point, its supporting line,
/// the line shifted inward by the walk depth, the counterclockwise turn to
/// the next supporting line, and the boundary arc consumed by the step.
struct WalkStep {
    Vec2 p;
    Hyperplane2 line;     // supporting line at p (outward normal)
    Hyperplane2 shifted;  // line moved toward the body by the walk depth
    double alpha = 0.0;   // angle to the next supporting line, in (0, pi)
    double arc_length = 0.0;
};

/// Trace of the boundary walk. `redefined_last` marks the termination case
/// where the start point lies in the last walk plank, so the last step is
/// snapped back to the start (its arc runs to the start point and its
/// closing line is the first line again).
struct WalkRecord {
    std::vector<WalkStep> steps;
    bool redefined_last = false;
    double delta = 0.0;
    double perimeter = 0.0;

    std::size_t count() const { return steps.size(); }
};

/// Covers the metric annulus {x in K : dist(x, boundary) <= delta} with
/// planks of width exactly 2*delta, each bounded by a supporting line of K
/// and its inward translate.
///
/// The walk starts at the lowest boundary point (lexicographic tie-break),
/// takes the supporting line there (the forward edge at a vertex, the
/// tangent on an arc), advances counterclockwise to the farthest boundary
/// point still within depth delta of the line, and repeats until the walk
/// planks of width delta cover the whole boundary, stopping at the smallest
/// such count. The recorded steps satisfy, and are audited for:
///   arc_i >= delta / sin(alpha_i)         (every step)
///   sum_i delta / sin(alpha_i) <= perimeter
///   sum_i alpha_i <= 2*pi
///   count < sqrt(2*pi*perimeter/delta)    (strict, when delta > 0)
///
/// delta == 0 is permitted for polygons: the walk then traces the edges and
/// returns one width-0 plank per edge line. Throws InvalidBody when delta is
/// at least the minimal width (or negative, or zero with arcs present) and
/// NumericFailure when an audit fails.
std::pair<std::vector<Plank2>, WalkRecord> boundary_walk_cover(const Body2& body, double delta);

/// Re-checks the walk inequalities above against a record (used by the
/// verifier on stored traces). Throws NumericFailure on violation.
void audit_walk(const WalkRecord& walk);

}  // namespace plank
