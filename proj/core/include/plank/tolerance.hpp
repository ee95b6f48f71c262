#pragma once

namespace plank {

/// Central numeric tolerances. All geometric predicates in the library route
/// through these values so a single override (e.g. the PLANKFORGE_TOL
/// environment variable handled by the CLI) changes behaviour coherently.
struct Tolerances {
    /// Geometric slack: containment checks, degeneracy detection, vertex
    /// deduplication, spikiness margins.
    double geom = 1e-9;
    /// Refinement target for iterative solvers (golden-section width search,
    /// Hausdorff refinement, crossing bisection fallbacks).
    double refine = 1e-12;
};

/// Process-wide tolerance settings used by default-argument call sites.
Tolerances& tolerances();

}  // namespace plank
