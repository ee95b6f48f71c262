#include "plank/body2.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "plank/error.hpp"

namespace plank {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Lift `angle` by a multiple of 2*pi so it lands in [floor, floor + 2*pi).
double lift_above(double angle, double floor) {
    double k = std::ceil((floor - angle) / kTwoPi);
    double lifted = angle + k * kTwoPi;
    // Guard against rounding in ceil().
    while (lifted < floor) lifted += kTwoPi;
    while (lifted - kTwoPi >= floor) lifted -= kTwoPi;
    return lifted;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
    constexpr double gr = 0.61803398874989484820;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Canonicalize a direction to the upper half-circle.
Vec2 canon_dir(Vec2 u) {
    if (u.y > 0.0 || (u.y == 0.0 && u.x > 0.0)) return u;
    return -u;
}

}  // namespace

// ---------------------------------------------------------------------------
// Piece
// ---------------------------------------------------------------------------

Vec2 Piece::point_at(double s) const {
    if (kind == PieceKind::Segment) {
        double t = length > 0.0 ? s / length : 0.0;
        return from + (to - from) * t;
    }
    double theta = ang0 + s / radius;
    return center + radius * dir_from_angle(theta);
}

Vec2 Piece::tangent_at(double s) const {
    if (kind == PieceKind::Segment) return unit(to - from);
    double theta = ang0 + s / radius;
    return perp(dir_from_angle(theta));
}

Vec2 Piece::normal_at(double s) const {
    if (kind == PieceKind::Segment) {
        Vec2 t = unit(to - from);
        return {t.y, -t.x};
    }
    double theta = ang0 + s / radius;
    return dir_from_angle(theta);
}

double Piece::normal_angle_start() const {
    if (kind == PieceKind::Arc) return ang0;
    return angle_of(normal_at(0.0));
}

double Piece::normal_angle_end() const {
    if (kind == PieceKind::Arc) return ang1;
    return angle_of(normal_at(0.0));
}

// ---------------------------------------------------------------------------
// Angle ranges
// ---------------------------------------------------------------------------

bool angle_in_ccw_range(double theta, double a0, double a1, double tol) {
    double sweep = a1 - a0;
    if (sweep >= kTwoPi - tol) return true;
    double t = std::remainder(theta - a0, kTwoPi);
    if (t < -tol) t += kTwoPi;
    return t <= sweep + tol;
}

// ---------------------------------------------------------------------------
// Construction / validation
// ---------------------------------------------------------------------------

Body2 Body2::from_polygon(std::vector<Vec2> vertices, double tol) {
    if (vertices.size() < 3) throw InvalidBody("polygon needs at least 3 vertices");

    double scale = 1.0;
    for (Vec2 v : vertices) scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
    double dtol = tol * scale;

    // Drop consecutive duplicates (including last == first).
    std::vector<Vec2> vs;
    for (Vec2 v : vertices) {
        if (vs.empty() || norm(v - vs.back()) > dtol) vs.push_back(v);
    }
    while (vs.size() >= 2 && norm(vs.front() - vs.back()) <= dtol) vs.pop_back();
    if (vs.size() < 3) throw InvalidBody("polygon degenerates to fewer than 3 distinct vertices");

    // Counterclockwise orientation.
    double area2 = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Vec2 a = vs[i], b = vs[(i + 1) % vs.size()];
        area2 += cross(a, b);
    }
    if (std::abs(area2) <= tol * scale * scale) throw InvalidBody("polygon has zero area");
    if (area2 < 0.0) std::reverse(vs.begin(), vs.end());

    // Enforce convex turns; drop collinear vertices.
    double ctol = tol * scale * scale;
    bool changed = true;
    while (changed && vs.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            Vec2 p = vs[(i + vs.size() - 1) % vs.size()];
            Vec2 q = vs[i];
            Vec2 r = vs[(i + 1) % vs.size()];
            double c = cross(q - p, r - q);
            if (c < -ctol) throw InvalidBody("polygon is not convex");
            if (c <= ctol) {
                vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (vs.size() < 3) throw InvalidBody("polygon degenerates to fewer than 3 distinct vertices");

    std::vector<Piece> pieces(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        pieces[i].kind = PieceKind::Segment;
        pieces[i].from = vs[i];
        pieces[i].to = vs[(i + 1) % vs.size()];
    }
    return from_pieces(std::move(pieces), tol);
}

Body2 Body2::from_pieces(std::vector<Piece> pieces, double tol) {
    Body2 body;
    body.pieces_ = std::move(pieces);
    body.finalize(tol);
    return body;
}

void Body2::finalize(double tol) {
    if (pieces_.empty()) throw InvalidBody("body needs at least one boundary piece");

    // Canonicalize arcs (derive endpoints from center/radius/angles) and find
    // the coordinate scale for relative tolerances.
    double scale = 1.0;
    for (Piece& p : pieces_) {
        if (p.kind == PieceKind::Arc) {
            if (!(p.radius > 0.0)) throw InvalidBody("arc radius must be positive");
            double sweep = p.ang1 - p.ang0;
            if (!(sweep > 1e-12)) throw InvalidBody("arc sweep must be positive (counterclockwise)");
            if (sweep > kTwoPi + 1e-9) throw InvalidBody("arc sweep exceeds a full turn");
            p.from = p.center + p.radius * dir_from_angle(p.ang0);
            p.to = p.center + p.radius * dir_from_angle(p.ang1);
            scale = std::max({scale, std::abs(p.center.x) + p.radius, std::abs(p.center.y) + p.radius});
        }
        scale = std::max({scale, std::abs(p.from.x), std::abs(p.from.y), std::abs(p.to.x), std::abs(p.to.y)});
    }
    double dtol = tol * scale;

    polygon_ = true;
    perimeter_ = 0.0;
    for (Piece& p : pieces_) {
        if (p.kind == PieceKind::Segment) {
            p.length = norm(p.to - p.from);
            if (p.length <= dtol) throw InvalidBody("segment piece is degenerately short");
        } else {
            p.length = p.radius * (p.ang1 - p.ang0);
            polygon_ = false;
        }
        p.start_arclen = perimeter_;
        perimeter_ += p.length;
    }

    // Closure: consecutive pieces share endpoints.
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& a = pieces_[i];
        const Piece& b = pieces_[(i + 1) % pieces_.size()];
        if (norm(a.to - b.from) > 10.0 * dtol) throw InvalidBody("boundary pieces do not close up");
    }

    // Convexity: the outward normal angle must be nondecreasing along the
    // boundary, with vertex turns below pi and total turn exactly 2*pi.
    constexpr double angtol = 1e-7;
    double cur = pieces_[0].normal_angle_start();
    const double start = cur;
    cur += pieces_[0].normal_angle_end() - pieces_[0].normal_angle_start();
    for (std::size_t i = 1; i <= pieces_.size(); ++i) {
        const Piece& p = pieces_[i % pieces_.size()];
        double lifted = lift_above(p.normal_angle_start(), cur - angtol);
        double jump = lifted - cur;
        if (jump > 3.14159265358979323846 + angtol)
            throw InvalidBody("boundary has a reflex turn (not convex)");
        cur = lifted;
        if (i < pieces_.size()) cur += p.normal_angle_end() - p.normal_angle_start();
    }
    if (std::abs(cur - (start + kTwoPi)) > 1e-6)
        throw InvalidBody("boundary normal does not make exactly one full turn");

    // Full-dimensionality.
    if (!(minimal_width(*this).value > dtol)) throw InvalidBody("body is lower-dimensional (zero width)");
}

std::vector<Vec2> Body2::vertices() const {
    std::vector<Vec2> vs;
    vs.reserve(pieces_.size());
    for (const Piece& p : pieces_) vs.push_back(p.from);
    return vs;
}

// ---------------------------------------------------------------------------
// Support machinery
// ---------------------------------------------------------------------------

double Body2::support(Vec2 u) const {
    double best = -std::numeric_limits<double>::infinity();
    double un = norm(u);
    double theta = angle_of(u);
    for (const Piece& p : pieces_) {
        best = std::max({best, dot(p.from, u), dot(p.to, u)});
        if (p.kind == PieceKind::Arc && angle_in_ccw_range(theta, p.ang0, p.ang1)) {
            best = std::max(best, dot(p.center, u) + p.radius * un);
        }
    }
    return best;
}

std::pair<Vec2, Vec2> Body2::support_face(Vec2 u, double tol) const {
    double h = support(u);
    double slack = tol * std::max(1.0, std::abs(h));
    Vec2 t = perp(u);

    bool found = false;
    Vec2 lo{}, hi{};
    double lo_s = 0.0, hi_s = 0.0;
    auto consider = [&](Vec2 pt) {
        if (dot(pt, u) < h - slack) return;
        double s = dot(pt, t);
        if (!found) {
            lo = hi = pt;
            lo_s = hi_s = s;
            found = true;
            return;
        }
        if (s < lo_s) {
            lo = pt;
            lo_s = s;
        }
        if (s > hi_s) {
            hi = pt;
            hi_s = s;
        }
    };

    double theta = angle_of(u);
    for (const Piece& p : pieces_) {
        consider(p.from);
        consider(p.to);
        if (p.kind == PieceKind::Arc && angle_in_ccw_range(theta, p.ang0, p.ang1)) {
            consider(p.center + p.radius * unit(u));
        }
    }
    return {lo, hi};
}

Vec2 Body2::support_point(Vec2 u) const { return support_face(u).first; }

// ---------------------------------------------------------------------------
// Signed boundary distance
// ---------------------------------------------------------------------------

double Body2::signed_boundary_distance(Vec2 p) const {
    // sup over unit directions u of <p, u> - h(u). The supremum over each
    // interval of the body's normal fan is attained at one of finitely many
    // candidate directions, enumerated below, so the value is exact.
    double best = -std::numeric_limits<double>::infinity();
    const std::size_t n = pieces_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Piece& pc = pieces_[i];
        if (pc.kind == PieceKind::Segment) {
            // The segment is a face of the body, so h(normal) = <from, normal>.
            Vec2 t = unit(pc.to - pc.from);
            Vec2 nrm{t.y, -t.x};
            best = std::max(best, dot(p - pc.from, nrm));
        } else {
            Vec2 d = p - pc.center;
            double dn = norm(d);
            if (dn < 1e-300) {
                best = std::max(best, -pc.radius);
            } else if (angle_in_ccw_range(angle_of(d), pc.ang0, pc.ang1)) {
                best = std::max(best, dn - pc.radius);
            }
        }
        // Vertex between this piece and the next: normal fan candidate.
        const Piece& nx = pieces_[(i + 1) % n];
        Vec2 v = nx.from;
        Vec2 d = p - v;
        double dn = norm(d);
        if (dn < 1e-300) {
            best = std::max(best, 0.0);
            continue;
        }
        double fa = pc.normal_angle_end();
        double fb = lift_above(nx.normal_angle_start(), fa - 1e-12);
        if (angle_in_ccw_range(angle_of(d), fa, fb)) best = std::max(best, dn);
    }
    return best;
}

double Body2::distance_to_complement(Vec2 p) const {
    return std::max(0.0, -signed_boundary_distance(p));
}

// ---------------------------------------------------------------------------
// Boundary parametrization & misc queries
// ---------------------------------------------------------------------------

Vec2 Body2::lowest_point() const {
    Vec2 best = pieces_[0].from;
    auto consider = [&](Vec2 v) {
        if (v.y < best.y || (v.y == best.y && v.x < best.x)) best = v;
    };
    for (const Piece& p : pieces_) {
        consider(p.from);
        if (p.kind == PieceKind::Arc && angle_in_ccw_range(-1.5707963267948966, p.ang0, p.ang1)) {
            consider({p.center.x, p.center.y - p.radius});
        }
    }
    return best;
}

BoundaryPoint Body2::boundary_at(double s) const {
    double m = std::fmod(s, perimeter_);
    if (m < 0.0) m += perimeter_;
    // Find the piece containing arclength m.
    std::size_t lo = 0, hi = pieces_.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (pieces_[mid].start_arclen <= m)
            lo = mid;
        else
            hi = mid;
    }
    double local = std::min(m - pieces_[lo].start_arclen, pieces_[lo].length);
    return {lo, local, m, pieces_[lo].point_at(local)};
}

BoundaryPoint Body2::piece_start(std::size_t i) const {
    const Piece& p = pieces_[i];
    return {i, 0.0, p.start_arclen, p.from};
}

std::array<Vec2, 2> Body2::bbox() const {
    return {Vec2{-support({-1, 0}), -support({0, -1})}, Vec2{support({1, 0}), support({0, 1})}};
}

Vec2 Body2::interior_point() const {
    Vec2 acc{};
    for (const Piece& p : pieces_) {
        acc = acc + p.from + p.point_at(0.5 * p.length);
    }
    return acc / (2.0 * static_cast<double>(pieces_.size()));
}

// ---------------------------------------------------------------------------
// Width
// ---------------------------------------------------------------------------

namespace {

/// Grid resolution for the width sweep over [0, pi) on bodies with arcs.
constexpr int kWidthGrid = 2048;

}  // namespace

std::vector<Vec2> width_candidate_directions(const Body2& body) {
    std::vector<Vec2> cands;
    auto push_unique = [&](Vec2 u) {
        u = canon_dir(unit(u));
        for (Vec2 c : cands) {
            if (norm(c - u) < 1e-10) return;
        }
        cands.push_back(u);
    };

    for (const Piece& p : body.pieces()) {
        if (p.kind == PieceKind::Segment) push_unique(p.normal_at(0.0));
    }
    if (body.is_polygon()) return cands;

    auto w = [&](double theta) { return body.width(dir_from_angle(theta)); };
    constexpr double step = 3.14159265358979323846 / kWidthGrid;
    std::vector<double> grid(kWidthGrid);
    double gmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kWidthGrid; ++i) {
        grid[i] = w(step * i);
        gmin = std::min(gmin, grid[i]);
    }
    double plateau = gmin + 1e-9 * std::max(1.0, gmin);
    for (int i = 0; i < kWidthGrid; ++i) {
        double prev = grid[(i + kWidthGrid - 1) % kWidthGrid];
        double next = grid[(i + 1) % kWidthGrid];
        bool local_min = grid[i] <= prev && grid[i] <= next && (grid[i] < prev || grid[i] < next);
        if (local_min) {
            double theta = golden_min(w, step * (i - 1), step * (i + 1), tolerances().refine);
            push_unique(dir_from_angle(theta));
        }
        if (grid[i] <= plateau) push_unique(dir_from_angle(step * i));
    }
    return cands;
}

MinimalWidth2 minimal_width(const Body2& body) {
    auto cands = width_candidate_directions(body);
    double best = std::numeric_limits<double>::infinity();
    for (Vec2 u : cands) best = std::min(best, body.width(u));
    double tie = best + 1e-12 * std::max(1.0, best);
    Vec2 best_dir{0, 0};
    bool found = false;
    for (Vec2 u : cands) {
        if (body.width(u) > tie) continue;
        for (Vec2 s : {u, -u}) {
            if (!found || lex_less(s, best_dir)) {
                best_dir = s;
                found = true;
            }
        }
    }
    return {best, best_dir};
}

}  // namespace plank
