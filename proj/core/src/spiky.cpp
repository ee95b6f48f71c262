#include "plank/spiky.hpp"

#include <algorithm>
#include <cmath>

#include "plank/error.hpp"

namespace plank {
namespace {

constexpr double kPi = 3.14159265358979323846;

double body_scale(const Body2& body) {
    auto bb = body.bbox();
    return std::max({1.0, bb[1].x - bb[0].x, bb[1].y - bb[0].y});
}

double body_scale(const Polytope3& poly) {
    auto bb = poly.bbox();
    return std::max({1.0, bb[1].x - bb[0].x, bb[1].y - bb[0].y, bb[1].z - bb[0].z});
}

template <typename Vec>
void sort_and_dedupe_directions(std::vector<Vec>& dirs) {
    std::sort(dirs.begin(), dirs.end(), [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    dirs.erase(std::unique(dirs.begin(), dirs.end(),
                           [](const Vec& a, const Vec& b) { return norm(a - b) <= 1e-12; }),
               dirs.end());
}

// --- convex helpers in the projection plane (3D chord) ---

std::vector<Vec2> convex_hull2(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return lex_less(a, b); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return norm(a - b) <= 1e-12; }),
              pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Vec2> h;
    auto build = [&](auto begin, auto end) {
        size_t base = h.size();
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= base + 2 &&
                   cross(h[h.size() - 1] - h[h.size() - 2], *it - h[h.size() - 2]) <= 0.0) {
                h.pop_back();
            }
            h.push_back(*it);
        }
        h.pop_back();
    };
    build(pts.begin(), pts.end());
    build(pts.rbegin(), pts.rend());
    return h;
}

bool in_hull2(Vec2 q, const std::vector<Vec2>& hull, double tol) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return norm(q - hull[0]) <= tol;
    if (hull.size() == 2) {
        Vec2 e = hull[1] - hull[0];
        double ee = norm2(e);
        double t = std::clamp(dot(q - hull[0], e) / ee, 0.0, 1.0);
        return norm(q - (hull[0] + t * e)) <= tol;
    }
    for (size_t i = 0; i < hull.size(); ++i) {
        Vec2 a = hull[i], b = hull[(i + 1) % hull.size()];
        if (cross(b - a, q - a) < -tol * norm(b - a)) return false;
    }
    return true;
}

std::vector<std::array<Vec2, 2>> hull_edges(const std::vector<Vec2>& hull) {
    std::vector<std::array<Vec2, 2>> edges;
    if (hull.size() == 2) {
        edges.push_back({hull[0], hull[1]});
    } else if (hull.size() >= 3) {
        for (size_t i = 0; i < hull.size(); ++i) {
            edges.push_back({hull[i], hull[(i + 1) % hull.size()]});
        }
    }
    return edges;
}

}  // namespace

// --- spikiness ---

std::optional<SpikeWitness2> is_spiky(const Body2& body, Vec2 u, double tol) {
    u = unit(u);
    auto [f0, f1] = body.support_face(u, tol);
    if (norm(f1 - f0) > tol) return std::nullopt;  // support set is a face, not a point
    Vec2 apex = f0;
    Cone2 cone = tangent_cone(body, apex);
    double aperture = std::max(dot(cone.forward, u), dot(cone.backward, u));
    if (aperture >= -tol) return std::nullopt;
    return SpikeWitness2{u, apex, cone, aperture};
}

std::optional<SpikeWitness3> is_spiky(const Polytope3& poly, Vec3 u, double tol) {
    u = unit(u);
    std::vector<int> face = poly.support_set(u, tol);
    if (face.size() != 1) return std::nullopt;
    Vec3 apex = poly.vertices()[static_cast<size_t>(face[0])];
    Cone3 cone = tangent_cone(poly, apex);
    double aperture = -std::numeric_limits<double>::infinity();
    for (const Vec3& g : cone.generators) aperture = std::max(aperture, dot(g, u));
    if (aperture >= -tol) return std::nullopt;
    return SpikeWitness3{u, apex, cone, aperture};
}

std::optional<SpikeWitness2> find_spiky_minimal_width_direction(const Body2& body) {
    double wmin = minimal_width(body).value;
    double slack = 1e-9 * std::max(1.0, wmin);
    std::vector<Vec2> dirs;
    for (Vec2 c : width_candidate_directions(body)) {
        if (body.width(c) > wmin + slack) continue;
        dirs.push_back(c);
        dirs.push_back(-c);
    }
    sort_and_dedupe_directions(dirs);
    for (Vec2 u : dirs) {
        if (auto w = is_spiky(body, u)) return w;
    }
    return std::nullopt;
}

std::optional<SpikeWitness3> find_spiky_minimal_width_direction(const Polytope3& poly) {
    double wmin = minimal_width(poly).value;
    double slack = 1e-9 * std::max(1.0, wmin);
    std::vector<Vec3> dirs;
    for (Vec3 c : width_candidate_directions(poly)) {
        if (poly.width(c) > wmin + slack) continue;
        dirs.push_back(c);
        dirs.push_back(-c);
    }
    sort_and_dedupe_directions(dirs);
    for (Vec3 u : dirs) {
        if (auto w = is_spiky(poly, u)) return w;
    }
    return std::nullopt;
}

// --- width-realizing chords ---

Chord2 minimal_width_chord(const Body2& body, Vec2 u_star) {
    Vec2 u = unit(u_star);
    double w = body.width(u);
    Vec2 p = perp(u);
    auto [f0, f1] = body.support_face(u);
    auto [g0, g1] = body.support_face(-u);
    double s_lo = dot(f0, p), s_hi = dot(f1, p);
    if (s_lo > s_hi) std::swap(s_lo, s_hi);
    double r_lo = dot(g1, p), r_hi = dot(g0, p);
    if (r_lo > r_hi) std::swap(r_lo, r_hi);
    double lo = std::max(s_lo, r_lo);
    double hi = std::min(s_hi, r_hi);
    if (lo > hi + 1e-9 * body_scale(body)) {
        throw InvalidBody(
            "direction does not attain the minimal width: support projections are disjoint");
    }
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
    double h = body.support(u);
    Vec2 a_lo = h * u + lo * p;
    Vec2 a_hi = h * u + hi * p;
    Vec2 a = lex_less(a_lo, a_hi) ? a_lo : a_hi;
    return {a, a - w * u};
}

Chord3 minimal_width_chord(const Polytope3& poly, Vec3 u_star) {
    Vec3 u = unit(u_star);
    double w = poly.width(u);
    double tol = 1e-9 * body_scale(poly);

    // Orthonormal basis of the projection plane perpendicular to u.
    Vec3 seed = std::abs(u.x) <= std::abs(u.y) && std::abs(u.x) <= std::abs(u.z)
                    ? Vec3{1, 0, 0}
                    : (std::abs(u.y) <= std::abs(u.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    Vec3 p1 = unit(cross(u, seed));
    Vec3 p2 = cross(u, p1);

    auto project_face = [&](Vec3 dir) {
        std::vector<Vec2> pts;
        for (int i : poly.support_set(dir)) {
            Vec3 v = poly.vertices()[static_cast<size_t>(i)];
            pts.push_back({dot(v, p1), dot(v, p2)});
        }
        return convex_hull2(std::move(pts));
    };
    std::vector<Vec2> top = project_face(u);
    std::vector<Vec2> bot = project_face(-u);

    // Candidate points of the projection intersection: vertices of either
    // face inside the other plus edge-edge crossings.
    std::vector<Vec2> candidates;
    for (Vec2 q : top) {
        if (in_hull2(q, bot, tol)) candidates.push_back(q);
    }
    for (Vec2 q : bot) {
        if (in_hull2(q, top, tol)) candidates.push_back(q);
    }
    for (const auto& ea : hull_edges(top)) {
        for (const auto& eb : hull_edges(bot)) {
            Vec2 da = ea[1] - ea[0], db = eb[1] - eb[0];
            double den = cross(da, db);
            if (std::abs(den) <= 1e-14 * norm(da) * norm(db)) continue;
            double s = cross(eb[0] - ea[0], db) / den;
            double t = cross(eb[0] - ea[0], da) / den;
            if (s < -1e-12 || s > 1.0 + 1e-12 || t < -1e-12 || t > 1.0 + 1e-12) continue;
            candidates.push_back(ea[0] + std::clamp(s, 0.0, 1.0) * da);
        }
    }
    if (candidates.empty()) {
        throw InvalidBody(
            "direction does not attain the minimal width: support projections are disjoint");
    }

    double h = poly.support(u);
    Vec3 best;
    bool found = false;
    for (Vec2 q : candidates) {
        Vec3 a = h * u + q.x * p1 + q.y * p2;
        if (!found || lex_less(a, best)) {
            best = a;
            found = true;
        }
    }
    return {best, best - w * u};
}

// --- similarities and standard position ---

Similarity2 Similarity2::inverse() const {
    Similarity2 inv;
    inv.angle = -angle;
    inv.scale = 1.0 / scale;
    inv.offset = (-1.0 / scale) * (Mat2::rotation(-angle) * offset);
    return inv;
}

Similarity3 Similarity3::inverse() const {
    Similarity3 inv;
    inv.rot = rot.transposed();
    inv.scale = 1.0 / scale;
    inv.offset = (-1.0 / scale) * (inv.rot * offset);
    return inv;
}

Body2 transformed(const Body2& body, const Similarity2& map) {
    std::vector<Piece> pieces;
    pieces.reserve(body.pieces().size());
    for (Piece pc : body.pieces()) {
        pc.from = map.apply(pc.from);
        pc.to = map.apply(pc.to);
        if (pc.kind == PieceKind::Arc) {
            pc.center = map.apply(pc.center);
            pc.radius *= map.scale;
            pc.ang0 += map.angle;
            pc.ang1 += map.angle;
        }
        pieces.push_back(pc);
    }
    return Body2::from_pieces(std::move(pieces));
}

Polytope3 transformed(const Polytope3& poly, const Similarity3& map) {
    std::vector<Vec3> vs;
    vs.reserve(poly.vertices().size());
    for (Vec3 v : poly.vertices()) vs.push_back(map.apply(v));
    return Polytope3::from_points(std::move(vs));
}

Standardization2 standardize(const Body2& body, Vec2 u) {
    u = unit(u);
    auto witness = is_spiky(body, u);
    if (!witness) throw InvalidBody("body is not spiky in the given direction");
    double w = minimal_width(body).value;
    if (std::abs(body.width(u) - w) > 1e-9 * std::max(1.0, w)) {
        throw InvalidBody("spike direction does not attain the minimal width");
    }

    Standardization2 out;
    out.original_width = w;
    out.to_standard.angle = -kPi / 2.0 - std::atan2(u.y, u.x);  // maps u to (0, -1)
    out.to_standard.scale = 1.0 / w;
    out.to_standard.offset = {0.0, 0.0};
    out.to_standard.offset = -1.0 * out.to_standard.apply(witness->apex);
    out.from_standard = out.to_standard.inverse();
    out.body = transformed(body, out.to_standard);

    auto std_witness = is_spiky(out.body, {0.0, -1.0});
    if (!std_witness) throw NumericFailure("standardized body lost its spike");
    if (norm(std_witness->apex) > 1e-9) throw NumericFailure("standardized apex is off origin");
    if (std::abs(out.body.support({0.0, -1.0})) > 1e-9 ||
        out.body.support({0.0, 1.0}) > 1.0 + 1e-9) {
        throw NumericFailure("standardized body escapes the unit slab");
    }
    out.witness = *std_witness;
    return out;
}

Standardization3 standardize(const Polytope3& poly, Vec3 u) {
    u = unit(u);
    auto witness = is_spiky(poly, u);
    if (!witness) throw InvalidBody("body is not spiky in the given direction");
    double w = minimal_width(poly).value;
    if (std::abs(poly.width(u) - w) > 1e-9 * std::max(1.0, w)) {
        throw InvalidBody("spike direction does not attain the minimal width");
    }

    Standardization3 out;
    out.original_width = w;
    out.to_standard.rot = Mat3::rotation_between(u, {0.0, 0.0, -1.0});
    out.to_standard.scale = 1.0 / w;
    out.to_standard.offset = {0.0, 0.0, 0.0};
    out.to_standard.offset = -1.0 * out.to_standard.apply(witness->apex);
    out.from_standard = out.to_standard.inverse();
    out.body = transformed(poly, out.to_standard);

    auto std_witness = is_spiky(out.body, {0.0, 0.0, -1.0});
    if (!std_witness) throw NumericFailure("standardized body lost its spike");
    if (norm(std_witness->apex) > 1e-9) throw NumericFailure("standardized apex is off origin");
    if (std::abs(out.body.support({0.0, 0.0, -1.0})) > 1e-9 ||
        out.body.support({0.0, 0.0, 1.0}) > 1.0 + 1e-9) {
        throw NumericFailure("standardized body escapes the unit slab");
    }
    out.witness = *std_witness;
    return out;
}

}  // namespace plank
