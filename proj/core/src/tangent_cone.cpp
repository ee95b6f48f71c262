#include "plank/tangent_cone.hpp"

#include <algorithm>
#include <cmath>

#include "plank/error.hpp"

namespace plank {

Cone2 tangent_cone(const Body2& body, Vec2 x, double tol) {
    const auto& pieces = body.pieces();
    const std::size_t n = pieces.size();
    double scale = 1.0;
    for (const Piece& p : pieces)
        scale = std::max({scale, std::abs(p.from.x), std::abs(p.from.y)});
    const double dtol = tol * scale;

    // Vertex case: x coincides with a piece start.
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(x - pieces[i].from) <= dtol) {
            const Piece& prev = pieces[(i + n - 1) % n];
            const Piece& next = pieces[i];
            return {pieces[i].from, next.tangent_at(0.0), -prev.tangent_at(prev.length)};
        }
    }

    // Piece-interior case.
    for (const Piece& p : pieces) {
        if (p.kind == PieceKind::Segment) {
            Vec2 t = unit(p.to - p.from);
            double along = dot(x - p.from, t);
            double off = std::abs(cross(t, x - p.from));
            if (off <= dtol && along >= -dtol && along <= p.length + dtol) {
                return {x, t, -t};
            }
        } else {
            Vec2 d = x - p.center;
            if (std::abs(norm(d) - p.radius) <= dtol &&
                angle_in_ccw_range(angle_of(d), p.ang0, p.ang1, 1e-9)) {
                Vec2 t = perp(unit(d));
                return {x, t, -t};
            }
        }
    }
    throw InvalidBody("point is not on the body boundary");
}

Cone3 tangent_cone(const Polytope3& poly, Vec3 x, double tol) {
    const auto& vs = poly.vertices();
    double scale = 1.0;
    for (Vec3 v : vs) scale = std::max({scale, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
    const double dtol = tol * scale;

    // Vertex case.
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (norm(x - vs[i]) > dtol) continue;
        Cone3 cone;
        cone.apex = vs[i];
        for (auto e : poly.edges()) {
            int other = -1;
            if (e[0] == static_cast<int>(i)) other = e[1];
            if (e[1] == static_cast<int>(i)) other = e[0];
            if (other >= 0)
                cone.generators.push_back(unit(vs[static_cast<std::size_t>(other)] - vs[i]));
        }
        for (const Facet& f : poly.facets()) {
            if (std::find(f.loop.begin(), f.loop.end(), static_cast<int>(i)) != f.loop.end()) {
                cone.facet_normals.push_back(f.normal);
            }
        }
        return cone;
    }

    // Edge-interior case: wedge of the two incident facets.
    for (auto e : poly.edges()) {
        Vec3 a = vs[static_cast<std::size_t>(e[0])], b = vs[static_cast<std::size_t>(e[1])];
        Vec3 d = b - a;
        double len = norm(d);
        Vec3 t = d / len;
        double along = dot(x - a, t);
        if (along < -dtol || along > len + dtol) continue;
        if (norm((x - a) - t * along) > dtol) continue;
        Cone3 cone;
        cone.apex = x;
        cone.generators = {t, -t};
        for (const Facet& f : poly.facets()) {
            bool has_a = std::find(f.loop.begin(), f.loop.end(), e[0]) != f.loop.end();
            bool has_b = std::find(f.loop.begin(), f.loop.end(), e[1]) != f.loop.end();
            if (has_a && has_b) {
                cone.facet_normals.push_back(f.normal);
                // The segment from x to the facet centroid stays in the facet,
                // so its direction is a genuine cone ray into this facet.
                Vec3 fc{};
                for (int vi : f.loop) fc = fc + vs[static_cast<std::size_t>(vi)];
                fc = fc / static_cast<double>(f.loop.size());
                cone.generators.push_back(unit(fc - x));
            }
        }
        if (cone.facet_normals.size() != 2) throw NumericFailure("edge without two incident facets");
        return cone;
    }

    // Facet-interior case: the facet's half-space.
    for (const Facet& f : poly.facets()) {
        if (std::abs(dot(x, f.normal) - f.offset) > dtol) continue;
        bool inside = true;
        for (std::size_t i = 0; i < f.loop.size() && inside; ++i) {
            Vec3 a = vs[static_cast<std::size_t>(f.loop[i])];
            Vec3 b = vs[static_cast<std::size_t>(f.loop[(i + 1) % f.loop.size()])];
            if (dot(cross(b - a, x - a), f.normal) < -dtol * scale) inside = false;
        }
        if (!inside) continue;
        Cone3 cone;
        cone.apex = x;
        cone.facet_normals = {f.normal};
        Vec3 a = vs[static_cast<std::size_t>(f.loop[0])];
        Vec3 b = vs[static_cast<std::size_t>(f.loop[1])];
        Vec3 t1 = unit(b - a);
        Vec3 t2 = cross(f.normal, t1);
        cone.generators = {t1, -t1, t2, -t2};
        return cone;
    }
    throw InvalidBody("point is not on the polytope boundary");
}

Vec2 interior_shift_direction(const Cone2& cone) {
    Vec2 v = unit(cone.forward + cone.backward);
    for (Vec2 n : cone.outward_normals()) {
        if (!(dot(v, n) < -1e-9)) throw NumericFailure("cone is not pointed enough for a shift");
    }
    return v;
}

Vec3 interior_shift_direction(const Cone3& cone) {
    Vec3 acc{};
    for (Vec3 n : cone.facet_normals) acc = acc - n;
    if (norm(acc) < 1e-30) throw NumericFailure("cone is not pointed enough for a shift");
    Vec3 v = unit(acc);
    for (Vec3 n : cone.facet_normals) {
        if (!(dot(v, n) < -1e-9)) throw NumericFailure("cone is not pointed enough for a shift");
    }
    return v;
}

SectionInterval cross_section(const Cone2& cone, double t) {
    double dy = t - cone.apex.y;
    if (!(dy > 0.0) || !(cone.forward.y > 0.0) || !(cone.backward.y > 0.0)) {
        throw InvalidBody("wedge does not open upward through the requested height");
    }
    double xf = cone.apex.x + cone.forward.x * (dy / cone.forward.y);
    double xb = cone.apex.x + cone.backward.x * (dy / cone.backward.y);
    return {t, std::min(xf, xb), std::max(xf, xb)};
}

SectionPolygon cross_section(const Cone3& cone, double t) {
    double dz = t - cone.apex.z;
    if (!(dz > 0.0)) throw InvalidBody("cone slice height is not above the apex");
    std::vector<Vec2> pts;
    for (Vec3 g : cone.generators) {
        if (!(g.z > 0.0)) throw InvalidBody("cone does not open upward");
        double s = dz / g.z;
        pts.push_back({cone.apex.x + g.x * s, cone.apex.y + g.y * s});
    }
    if (pts.size() < 3) throw InvalidBody("cone slice is lower-dimensional");
    Vec2 c{};
    for (Vec2 p : pts) c = c + p;
    c = c / static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](Vec2 a, Vec2 b) {
        return angle_of(a - c) < angle_of(b - c);
    });
    return {t, pts};
}

}  // namespace plank
