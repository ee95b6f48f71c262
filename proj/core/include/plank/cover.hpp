#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "plank/body2.hpp"
#include "plank/boundary_walk.hpp"
#include "plank/plank.hpp"
#include "plank/polytope3.hpp"
#include "plank/spiky.hpp"
#include "plank/tangent_cone.hpp"

namespace plank {

/// How the cross-section slice of the tangent cone gets covered.
///   TwoPlank2D:     planar bodies — two intervals hugging the slice endpoints.
///   BoundaryWalk3D: polytopes — boundary_walk_cover on the slice polygon.
///   Polyhedral:     polytopes — one plank per slice polygon edge.
enum class CoverStrategy { TwoPlank2D, BoundaryWalk3D, Polyhedral };

std::string_view to_string(CoverStrategy strategy);
std::optional<CoverStrategy> parse_cover_strategy(std::string_view name);

/// Resolved parameters of a covering run (standardized frame: apex at the
/// origin, spike direction -e_d, minimal width 1).
struct CoverParams {
    double eps = 0.0;      // homothety ratio, in (0, 1)
    double t = 0.0;        // cross-section height, in (0, 1)
    double delta_t = 0.0;  // boundary gap of the annulus slice at height t
    double kappa = 0.0;    // inflation radius (> 0 in finished results)
    CoverStrategy strategy = CoverStrategy::TwoPlank2D;
};

/// Standardized-frame audit trail of the slice covering stage. All widths are
/// on the standardized scale (minimal width 1).
struct SectionRecord {
    double slice_width = 0.0;          // minimal width of the cone slice at t
    double slice_perimeter = 0.0;      // perimeter of the cone slice (3D; 0 in 2D)
    std::vector<double> plank_widths;  // slice planks before lifting
    std::vector<double> lifted_widths; // the same planks after lifting
    std::optional<WalkRecord> walk;    // slice walk (BoundaryWalk3D only)
    std::size_t facet_count = 0;       // slice edge count (Polyhedral only)
    double pre_inflation_total = 0.0;  // top plank + lifted planks, before inflation
};

/// A verified covering of the annulus body \ int(eps * body + y): finitely
/// many planks whose total width falls strictly below the body's minimal
/// width. Planks and y are in the input body's frame; width is the body's
/// minimal width, and margin = width - total_width stays positive.
struct CoverResult2 {
    Vec2 y;
    std::vector<Plank2> planks;
    CoverParams params;
    SectionRecord section;
    double width = 0.0;
    double total_width = 0.0;
    double margin = 0.0;
};

struct CoverResult3 {
    Vec3 y;
    std::vector<Plank3> planks;
    CoverParams params;
    SectionRecord section;
    double width = 0.0;
    double total_width = 0.0;
    double margin = 0.0;
};

/// Boundary gap of the annulus slice at height t: the Hausdorff distance
/// between the cone-boundary slice (two wedge points / the slice polygon
/// boundary) and the slice of the annulus cone \ int(inner) at the same
/// height. Exact in 2D (point/segment enumeration); in 3D by candidate
/// enumeration over inner-slice vertices, breakpoints of the piecewise-linear
/// distance-to-outer-boundary along inner edges, and the slice in-center,
/// cross-checked against a grid sample. Zero when the inner body fills the
/// cone up to height t. `inner` is the scaled copy (eps * body) sharing the
/// cone's apex at the origin.
double section_gap(const Cone2& cone, const Body2& inner, double t);
double section_gap(const Cone3& cone, const Polytope3& inner, double t);

/// Picks the cross-section height: starting from t = 1/2, halves t until the
/// strategy's budget inequality holds with a 0.99 safety factor
///   TwoPlank2D:     delta_t < t/2
///   BoundaryWalk3D: delta_t < t / (8*pi*rho), rho = cone slice perimeter at height 1
///   Polyhedral:     delta_t < t/N, N = slice edge count
/// and additionally delta_t < the slice's own minimal width. Throws
/// NumericFailure after 64 halvings (degenerate or non-spiky input).
CoverParams choose_section_height(const Standardization2& st, double eps);
CoverParams choose_section_height(const Standardization3& st, double eps,
                                  CoverStrategy strategy);

/// Lifts a slice plank into a full-dimensional plank hinged at the apex: the
/// outer bounding flat (the point outer_x / the hi-line of `section`) spans,
/// together with the origin, a hyperplane that supports the cone; the plank
/// runs from that hyperplane to the parallel one through the inner flat. The
/// lifted width never exceeds the slice plank's width. Throws InvalidBody
/// when the outer flat does not support the cone slice.
Plank2 lift_plank(const Cone2& cone, double t, double outer_x, double inner_x);
Plank3 lift_plank(const Cone3& cone, double t, const Plank2& section);

/// Covers body \ int(eps * body + y) by planks of total width strictly less
/// than the body's minimal width, for a body that is spiky in a minimal-width
/// direction. Pipeline: standardize -> choose_section_height -> top plank of
/// width 1-t -> slice planks -> lift each through the apex -> inflate all
/// planks by a shift radius kappa and move the inner copy by y = kappa * v
/// with v interior to the tangent cone -> map back to the input frame.
///
/// Throws NotSpiky when no minimal-width direction is spiky, InvalidBody for
/// eps outside (0, 1) or a strategy/dimension mismatch, NumericFailure when
/// an internal audit fails. The planar pipeline accepts only TwoPlank2D;
/// polytopes default to Polyhedral and accept BoundaryWalk3D on request.
CoverResult2 spiky_annulus_cover(const Body2& body, double eps,
                                 std::optional<CoverStrategy> strategy = {});
CoverResult3 spiky_annulus_cover(const Polytope3& poly, double eps,
                                 std::optional<CoverStrategy> strategy = {});

}  // namespace plank
