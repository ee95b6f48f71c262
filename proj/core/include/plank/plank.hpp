#pragma once

#include <vector>

#include "plank/vec.hpp"

namespace plank {

/// Closed slab { x : lo <= <x, normal> <= hi } in the plane.
/// `normal` is unit length; width = hi - lo >= 0. Zero-width planks (lines)
/// are legal and useful as degenerate covers of flat boundary pieces.
struct Plank2 {
    Vec2 normal;
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(Vec2 p, double tol) const {
        double s = dot(p, normal);
        return s >= lo - tol && s <= hi + tol;
    }
};

/// Closed slab in 3-space; same conventions as Plank2.
struct Plank3 {
    Vec3 normal;
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(Vec3 p, double tol) const {
        double s = dot(p, normal);
        return s >= lo - tol && s <= hi + tol;
    }
};

/// Oriented line { x : <x, normal> = offset } with unit normal.
struct Hyperplane2 {
    Vec2 normal;
    double offset = 0.0;

    double signed_dist(Vec2 p) const { return dot(p, normal) - offset; }
};

/// Oriented plane { x : <x, normal> = offset } with unit normal.
struct Hyperplane3 {
    Vec3 normal;
    double offset = 0.0;

    double signed_dist(Vec3 p) const { return dot(p, normal) - offset; }
};

}  // namespace plank
