#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "plank/body2.hpp"
#include "support/rng.hpp"

namespace plank::testing {

/// Random convex polygon with up to `n` vertices in [0, size]^2 (Valtr's
/// algorithm). The result is convex by construction; collinear vertices may
/// be merged by Body2 validation, so the final count can be smaller than n.
inline std::vector<Vec2> random_convex_polygon(std::mt19937_64& rng, int n, double size = 1.0) {
    auto random_chain_deltas = [&](std::vector<double> xs) {
        std::sort(xs.begin(), xs.end());
        double lo = xs.front(), hi = xs.back();
        std::vector<double> deltas;
        double last_top = lo, last_bot = lo;
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
            if (rng() & 1) {
                deltas.push_back(xs[i] - last_top);
                last_top = xs[i];
            } else {
                deltas.push_back(last_bot - xs[i]);
                last_bot = xs[i];
            }
        }
        deltas.push_back(hi - last_top);
        deltas.push_back(last_bot - hi);
        return deltas;
    };

    std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
    for (double& x : xs) x = uniform(rng, 0.0, size);
    for (double& y : ys) y = uniform(rng, 0.0, size);
    std::vector<double> dx = random_chain_deltas(xs);
    std::vector<double> dy = random_chain_deltas(ys);
    std::shuffle(dy.begin(), dy.end(), rng);

    std::vector<Vec2> vecs(dx.size());
    for (std::size_t i = 0; i < dx.size(); ++i) vecs[i] = {dx[i], dy[i]};
    std::sort(vecs.begin(), vecs.end(),
              [](Vec2 a, Vec2 b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });

    std::vector<Vec2> poly(vecs.size());
    Vec2 cur{0, 0};
    double minx = 0, miny = 0;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        poly[i] = cur;
        cur = cur + vecs[i];
        minx = std::min(minx, cur.x);
        miny = std::min(miny, cur.y);
    }
    for (Vec2& p : poly) p = p - Vec2{minx, miny};
    return poly;
}

/// Same, but already validated/canonicalized as a Body2.
inline Body2 random_convex_body(std::mt19937_64& rng, int n, double size = 1.0) {
    return Body2::from_polygon(random_convex_polygon(rng, n, size));
}

/// Uniform random 3D point cloud in [0, size]^3.
inline std::vector<Vec3> random_point_cloud(std::mt19937_64& rng, int n, double size = 1.0) {
    std::vector<Vec3> pts(static_cast<std::size_t>(n));
    for (Vec3& p : pts) {
        p = {uniform(rng, 0.0, size), uniform(rng, 0.0, size), uniform(rng, 0.0, size)};
    }
    return pts;
}

}  // namespace plank::testing
