#include "plank/boundary_walk.hpp"

#include <algorithm>
#include <cmath>

#include "plank/error.hpp"

namespace plank {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kAuditSlack = 1e-9;

// Depth of x below the supporting line {<., n> = h}: zero on the line,
// increasing toward the body interior.
double depth_of(Vec2 n, double h, Vec2 x) { return h - dot(x, n); }

BoundaryPoint canonical(const Body2& body, std::size_t piece, double local) {
    const auto& ps = body.pieces();
    const Piece& pc = ps[piece];
    if (local > pc.length - 1e-12 * std::max(1.0, pc.length)) {
        piece = (piece + 1) % ps.size();
        local = 0.0;
    }
    BoundaryPoint bp;
    bp.piece = piece;
    bp.local = local;
    bp.arclen = ps[piece].start_arclen + local;
    bp.point = ps[piece].point_at(local);
    return bp;
}

// Lowest boundary point (minimal y, then minimal x) as a boundary location.
BoundaryPoint lowest_boundary_point(const Body2& body) {
    const auto& ps = body.pieces();
    BoundaryPoint best;
    bool found = false;
    auto offer = [&](std::size_t piece, double local) {
        BoundaryPoint bp = canonical(body, piece, local);
        if (!found || lex_less(Vec2{bp.point.y, bp.point.x}, Vec2{best.point.y, best.point.x})) {
            best = bp;
            found = true;
        }
    };
    for (std::size_t i = 0; i < ps.size(); ++i) {
        offer(i, 0.0);
        const Piece& pc = ps[i];
        if (pc.kind == PieceKind::Arc) {
            // The bottom of the supporting circle, if the arc passes it.
            double target = 3.0 * kPi / 2.0;
            double lifted = target + kTwoPi * std::ceil((pc.ang0 - target) / kTwoPi);
            if (lifted <= pc.ang1) offer(i, pc.radius * (lifted - pc.ang0));
        }
    }
    return best;
}

struct Advance {
    BoundaryPoint end;
    double dist = 0.0;
    bool full_loop = false;
};

// Walks counterclockwise from `start` to the far end of the connected
// boundary component on which depth_of(n, h, .) stays <= delta. Piecewise
// exact: affine crossing solve on segments, arccos on arcs.
Advance advance_to_depth(const Body2& body, const BoundaryPoint& start, Vec2 n, double h,
                         double delta) {
    const auto& ps = body.pieces();
    double rho = body.perimeter();
    std::size_t pi = start.piece;
    double local = start.local;
    double traveled = 0.0;

    while (traveled < rho - 1e-12) {
        const Piece& pc = ps[pi];
        double remain = pc.length - local;
        if (remain > 1e-15 * std::max(1.0, pc.length)) {
            if (pc.kind == PieceKind::Segment) {
                Vec2 tang = pc.tangent_at(0.0);
                double slope = -dot(tang, n);
                if (slope > 0.0) {
                    double d0 = depth_of(n, h, pc.point_at(local));
                    double s_star = (delta - d0) / slope;
                    if (s_star < remain) {
                        double adv = std::max(0.0, s_star);
                        return {canonical(body, pi, local + adv), traveled + adv, false};
                    }
                }
            } else {
                double phi = angle_of(n);
                double big_d = h - dot(pc.center, n);
                double q = (big_d - delta) / pc.radius;
                if (q >= -1.0) {
                    // Upward crossing of depth = delta at angle phi + acos(q).
                    double thc = phi + std::acos(std::min(q, 1.0));
                    double th_enter = pc.ang0 + local / pc.radius;
                    double k = std::ceil((th_enter - 1e-12 - thc) / kTwoPi);
                    double th = thc + k * kTwoPi;
                    if (th <= pc.ang1) {
                        th = std::max(th, th_enter);
                        double adv = pc.radius * (th - th_enter);
                        return {canonical(body, pi, local + adv), traveled + adv, false};
                    }
                }
            }
        }
        traveled += remain;
        pi = (pi + 1) % ps.size();
        local = 0.0;
    }
    return {start, rho, true};
}

// Arclength reachable clockwise from `start` before depth first exceeds
// delta; capped at the perimeter. Mirror of advance_to_depth.
double backward_extent(const Body2& body, const BoundaryPoint& start, Vec2 n, double h,
                       double delta) {
    const auto& ps = body.pieces();
    double rho = body.perimeter();
    std::size_t pi = start.piece;
    double local = start.local;  // traverse [0, local] of the current piece, backward
    double traveled = 0.0;

    while (traveled < rho - 1e-12) {
        const Piece& pc = ps[pi];
        if (local > 1e-15 * std::max(1.0, pc.length)) {
            if (pc.kind == PieceKind::Segment) {
                Vec2 tang = pc.tangent_at(0.0);
                double slope = dot(tang, n);  // depth rate along the backward direction
                if (slope > 0.0) {
                    double d0 = depth_of(n, h, pc.point_at(local));
                    double s_star = (delta - d0) / slope;
                    if (s_star < local) return traveled + std::max(0.0, s_star);
                }
            } else {
                double phi = angle_of(n);
                double big_d = h - dot(pc.center, n);
                double q = (big_d - delta) / pc.radius;
                if (q >= -1.0) {
                    // Depth rises backward where theta decreases below phi.
                    double thc = phi - std::acos(std::min(q, 1.0));
                    double th_enter = pc.ang0 + local / pc.radius;
                    double k = std::floor((th_enter + 1e-12 - thc) / kTwoPi);
                    double th = thc + k * kTwoPi;
                    if (th >= pc.ang0) {
                        th = std::min(th, th_enter);
                        return traveled + pc.radius * (th_enter - th);
                    }
                }
            }
        }
        traveled += local;
        pi = (pi + ps.size() - 1) % ps.size();
        local = ps[pi].length;
    }
    return rho;
}

// Supporting line at a boundary point: the forward piece's normal at a
// vertex, the tangent-line normal elsewhere.
Vec2 support_normal_at(const Body2& body, const BoundaryPoint& bp) {
    return body.pieces()[bp.piece].normal_at(bp.local);
}

}  // namespace

void audit_walk(const WalkRecord& walk) {
    double n = static_cast<double>(walk.count());
    if (n == 0.0) throw NumericFailure("boundary walk recorded no steps");
    double eq2 = 0.0;
    double eq3 = 0.0;
    for (const WalkStep& st : walk.steps) {
        if (!(st.alpha > 0.0 && st.alpha < kPi + kAuditSlack)) {
            throw NumericFailure("walk turn angle outside (0, pi)");
        }
        double need = walk.delta / std::sin(std::min(st.alpha, kPi - 1e-15));
        if (st.arc_length < need - kAuditSlack) {
            throw NumericFailure("walk arc shorter than delta/sin(alpha)");
        }
        eq2 += need;
        eq3 += st.alpha;
    }
    if (eq2 > walk.perimeter + kAuditSlack) {
        throw NumericFailure("walk depth sum exceeds the perimeter");
    }
    if (eq3 > kTwoPi + kAuditSlack) {
        throw NumericFailure("walk turn angles exceed a full turn");
    }
    if (walk.delta > 0.0) {
        double bound = std::sqrt(kTwoPi * walk.perimeter / walk.delta);
        if (!(n < bound)) throw NumericFailure("walk plank count reached the theoretical bound");
    }
}

std::pair<std::vector<Plank2>, WalkRecord> boundary_walk_cover(const Body2& body, double delta) {
    if (delta < 0.0) throw InvalidBody("negative plank depth");
    double w = minimal_width(body).value;
    if (delta >= w) throw InvalidBody("plank depth must be below the minimal width");
    if (delta == 0.0 && !body.is_polygon()) {
        throw InvalidBody("zero plank depth requires a polygonal boundary");
    }

    double rho = body.perimeter();
    std::size_t cap =
        delta > 0.0 ? static_cast<std::size_t>(std::sqrt(kTwoPi * rho / delta)) + 8
                    : body.pieces().size() + 8;

    WalkRecord walk;
    walk.delta = delta;
    walk.perimeter = rho;

    BoundaryPoint p1 = lowest_boundary_point(body);
    BoundaryPoint p = p1;
    double s = 0.0;       // cumulative unwrapped arclength at p
    double amin = 0.0;    // farthest clockwise reach of any walk plank behind p1
    std::vector<double> lifted_normal_angles;

    Vec2 n1;
    double h1 = 0.0;
    bool done = false;

    while (!done) {
        if (walk.steps.size() > cap) {
            throw NumericFailure("boundary walk exceeded its step budget");
        }
        Vec2 n = support_normal_at(body, p);
        double h = dot(p.point, n);
        if (walk.steps.empty()) {
            n1 = n;
            h1 = h;
        }
        double lifted;
        if (lifted_normal_angles.empty()) {
            lifted = angle_of(n);
        } else {
            double prev = lifted_normal_angles.back();
            double turn = std::remainder(angle_of(n) - prev, kTwoPi);
            if (turn < 0.0) turn += kTwoPi;
            lifted = prev + turn;
        }
        lifted_normal_angles.push_back(lifted);

        Advance adv = advance_to_depth(body, p, n, h, delta);
        if (adv.full_loop) {
            // Would mean the whole boundary fits in one slab of width delta,
            // impossible while delta is below the minimal width.
            throw NumericFailure("boundary walk looped without leaving the plank");
        }
        if (adv.dist <= 0.0) {
            throw NumericFailure("boundary walk stalled (no forward progress)");
        }
        amin = std::min(amin, s - backward_extent(body, p, n, h, delta));

        WalkStep st;
        st.p = p.point;
        st.line = {n, h};
        st.shifted = {n, h - delta};
        st.arc_length = adv.dist;
        walk.steps.push_back(st);

        double s_next = s + adv.dist;
        if (s_next >= rho + amin) {
            // Closing turn: back to the first line if the start point lies in
            // the last walk plank, otherwise to the support line at the stop.
            double d_start = depth_of(n, h, p1.point);
            if (d_start >= -1e-12 && d_start <= delta) {
                walk.redefined_last = true;
                walk.steps.back().arc_length = rho - s;
                double total_prev = lifted_normal_angles.back() - lifted_normal_angles.front();
                walk.steps.back().alpha = kTwoPi - total_prev;
            } else {
                double turn = std::remainder(angle_of(support_normal_at(body, adv.end)) -
                                                 angle_of(n),
                                             kTwoPi);
                if (turn < 0.0) turn += kTwoPi;
                walk.steps.back().alpha = turn;
            }
            done = true;
        } else {
            p = adv.end;
            s = s_next;
        }
    }

    // Turn angles for the non-final steps come from the lifted angle chain.
    for (std::size_t i = 0; i + 1 < walk.steps.size(); ++i) {
        walk.steps[i].alpha = lifted_normal_angles[i + 1] - lifted_normal_angles[i];
    }

    audit_walk(walk);
    // Minimality of the stop index forces the last visited point out of the
    // first plank (trivially true for a single-step walk).
    if (walk.count() > 1) {
        double d_last = depth_of(n1, h1, walk.steps.back().p);
        if (d_last <= delta - kAuditSlack) {
            throw NumericFailure("walk stop index is not minimal");
        }
    }

    std::vector<Plank2> planks;
    planks.reserve(walk.count());
    for (const WalkStep& st : walk.steps) {
        planks.push_back({st.line.normal, st.line.offset - 2.0 * delta, st.line.offset});
    }
    return {std::move(planks), std::move(walk)};
}

}  // namespace plank
