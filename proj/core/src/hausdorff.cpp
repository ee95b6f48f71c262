#include "plank/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "plank/body2.hpp"  // angle_in_ccw_range
#include "plank/error.hpp"

namespace plank {
namespace {

constexpr int kSamplesPerPrim = 4096;
constexpr double kRefineTol = 1e-9;

double dist_point_segment(Vec2 x, Vec2 a, Vec2 b) {
    Vec2 e = b - a;
    double ee = norm2(e);
    if (ee <= 0.0) return norm(x - a);
    double t = std::clamp(dot(x - a, e) / ee, 0.0, 1.0);
    return norm(x - (a + t * e));
}

double dist_point_arc(Vec2 x, const ArcPrim& arc) {
    Vec2 r = x - arc.center;
    double d = norm(r);
    if (d > 0.0 && angle_in_ccw_range(angle_of(r), arc.a0, arc.a1)) {
        return std::abs(d - arc.radius);
    }
    if (d == 0.0) return arc.radius;
    Vec2 p0 = arc.center + arc.radius * dir_from_angle(arc.a0);
    Vec2 p1 = arc.center + arc.radius * dir_from_angle(arc.a1);
    return std::min(norm(x - p0), norm(x - p1));
}

double dist_point_polygon(Vec2 x, const std::vector<Vec2>& poly) {
    size_t n = poly.size();
    if (n == 1) return norm(x - poly[0]);
    bool inside = n >= 3;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        Vec2 a = poly[i];
        Vec2 b = poly[(i + 1) % n];
        if (cross(b - a, x - a) < 0.0) inside = false;
        best = std::min(best, dist_point_segment(x, a, b));
    }
    return inside ? 0.0 : best;
}

bool exact_eligible(const ShapeSet& s) { return s.arcs.empty() && s.polygons.empty(); }

// Supremum of distance_to(B) along the segment [u, v], exact when B contains
// only points and segments. The squared distance to each target primitive is
// piecewise quadratic in the segment parameter; the pointwise minimum attains
// its maximum at an endpoint, a perpendicular-foot breakpoint, or a crossing
// where two primitives are equidistant. All of these are enumerated.
double directed_sup_segment_exact(Vec2 u, Vec2 v, const ShapeSet& B) {
    Vec2 d = v - u;
    std::vector<double> cuts = {0.0, 1.0};
    for (const auto& seg : B.segments) {
        Vec2 e = seg[1] - seg[0];
        double de = dot(d, e);
        if (std::abs(de) < 1e-300) continue;
        // Parameters where the perpendicular foot of p(t) passes an endpoint.
        cuts.push_back(dot(seg[0] - u, e) / de);
        cuts.push_back(dot(seg[1] - u, e) / de);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                              [](double t) { return t < 0.0 || t > 1.0; }),
               cuts.end());

    // Quadratic coefficients of the squared distance to one primitive on an
    // interval where its active feature (endpoint or supporting line) is fixed.
    struct Quad {
        double c2, c1, c0;
    };
    auto point_quad = [&](Vec2 q) {
        Vec2 w = u - q;
        return Quad{norm2(d), 2.0 * dot(w, d), norm2(w)};
    };
    auto feature_quad = [&](const std::array<Vec2, 2>& seg, double tm) {
        Vec2 e = seg[1] - seg[0];
        double ee = norm2(e);
        if (ee <= 0.0) return point_quad(seg[0]);
        double s = dot((u + tm * d) - seg[0], e) / ee;
        if (s <= 0.0) return point_quad(seg[0]);
        if (s >= 1.0) return point_quad(seg[1]);
        Vec2 n = unit(perp(e));
        double g0 = dot(u - seg[0], n);
        double g1 = dot(d, n);
        return Quad{g1 * g1, 2.0 * g0 * g1, g0 * g0};
    };

    std::vector<double> candidates = cuts;
    std::vector<Quad> quads;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double t0 = cuts[i];
        double t1 = cuts[i + 1];
        if (t1 - t0 < 1e-15) continue;
        double tm = 0.5 * (t0 + t1);
        quads.clear();
        for (Vec2 q : B.points) quads.push_back(point_quad(q));
        for (const auto& seg : B.segments) quads.push_back(feature_quad(seg, tm));
        for (size_t a = 0; a < quads.size(); ++a) {
            for (size_t b = a + 1; b < quads.size(); ++b) {
                double c2 = quads[a].c2 - quads[b].c2;
                double c1 = quads[a].c1 - quads[b].c1;
                double c0 = quads[a].c0 - quads[b].c0;
                if (std::abs(c2) < 1e-14 * (std::abs(c1) + std::abs(c0) + 1.0)) {
                    if (std::abs(c1) > 1e-300) {
                        double t = -c0 / c1;
                        if (t > t0 && t < t1) candidates.push_back(t);
                    }
                    continue;
                }
                double disc = c1 * c1 - 4.0 * c2 * c0;
                if (disc < 0.0) continue;
                double sq = std::sqrt(disc);
                for (double t : {(-c1 - sq) / (2.0 * c2), (-c1 + sq) / (2.0 * c2)}) {
                    if (t > t0 && t < t1) candidates.push_back(t);
                }
            }
        }
    }

    double best = 0.0;
    for (double t : candidates) best = std::max(best, B.distance_to(u + t * d));
    return best;
}

// Golden-section maximization of f over [lo, hi] to absolute tolerance tol.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

// Sampled supremum of distance_to(B) over all of A, with golden-section
// refinement of the best curve bracket. Used whenever arcs or polygons make
// the exact enumeration inapplicable.
double directed_sup_sampled(const ShapeSet& A, const ShapeSet& B) {
    double best = 0.0;
    std::function<double(double)> best_curve;  // parameterized on [0, 1]
    double best_t = 0.0;
    double best_step = 0.0;

    auto scan_curve = [&](const std::function<Vec2(double)>& p) {
        std::function<double(double)> f = [&B, p](double t) { return B.distance_to(p(t)); };
        double step = 1.0 / kSamplesPerPrim;
        for (int i = 0; i <= kSamplesPerPrim; ++i) {
            double t = i * step;
            double val = f(t);
            if (val > best) {
                best = val;
                best_curve = f;
                best_t = t;
                best_step = step;
            }
        }
    };

    for (Vec2 q : A.points) best = std::max(best, B.distance_to(q));
    for (const auto& seg : A.segments) {
        Vec2 a = seg[0], d = seg[1] - seg[0];
        scan_curve([a, d](double t) { return a + t * d; });
    }
    for (const auto& arc : A.arcs) {
        Vec2 c = arc.center;
        double r = arc.radius, a0 = arc.a0, sweep = arc.a1 - arc.a0;
        scan_curve([c, r, a0, sweep](double t) { return c + r * dir_from_angle(a0 + t * sweep); });
    }
    for (const auto& poly : A.polygons) {
        size_t n = poly.size();
        for (size_t i = 0; i < n; ++i) {
            Vec2 a = poly[i], d = poly[(i + 1) % n] - poly[i];
            if (n == 1) {
                best = std::max(best, B.distance_to(a));
                break;
            }
            scan_curve([a, d](double t) { return a + t * d; });
        }
        if (n >= 3) {
            // Interior grid: the farthest point of a filled region can lie
            // strictly inside it (e.g. between two target points).
            Vec2 lo = poly[0], hi = poly[0];
            for (Vec2 q : poly) {
                lo = {std::min(lo.x, q.x), std::min(lo.y, q.y)};
                hi = {std::max(hi.x, q.x), std::max(hi.y, q.y)};
            }
            const int g = 128;
            for (int i = 0; i <= g; ++i) {
                for (int j = 0; j <= g; ++j) {
                    Vec2 x{lo.x + (hi.x - lo.x) * i / g, lo.y + (hi.y - lo.y) * j / g};
                    if (dist_point_polygon(x, poly) > 0.0) continue;
                    best = std::max(best, B.distance_to(x));
                }
            }
        }
    }

    if (best_curve) {
        double lo = std::max(0.0, best_t - best_step);
        double hi = std::min(1.0, best_t + best_step);
        best = std::max(best, golden_max(best_curve, lo, hi, kRefineTol));
    }
    return best;
}

double directed_sup(const ShapeSet& A, const ShapeSet& B) {
    if (exact_eligible(A) && exact_eligible(B)) {
        double best = 0.0;
        for (Vec2 q : A.points) best = std::max(best, B.distance_to(q));
        for (const auto& seg : A.segments) {
            best = std::max(best, directed_sup_segment_exact(seg[0], seg[1], B));
        }
        return best;
    }
    return directed_sup_sampled(A, B);
}

}  // namespace

double ShapeSet::distance_to(Vec2 x) const {
    double best = std::numeric_limits<double>::infinity();
    for (Vec2 q : points) best = std::min(best, norm(x - q));
    for (const auto& seg : segments) best = std::min(best, dist_point_segment(x, seg[0], seg[1]));
    for (const auto& arc : arcs) best = std::min(best, dist_point_arc(x, arc));
    for (const auto& poly : polygons) {
        if (!poly.empty()) best = std::min(best, dist_point_polygon(x, poly));
    }
    return best;
}

double hausdorff_distance(const ShapeSet& a, const ShapeSet& b) {
    if (a.empty() || b.empty()) {
        throw InvalidBody("hausdorff distance of an empty set is undefined");
    }
    return std::max(directed_sup(a, b), directed_sup(b, a));
}

}  // namespace plank
