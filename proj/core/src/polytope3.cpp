#include "plank/polytope3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "plank/error.hpp"

namespace plank {
namespace {

struct Tri {
    int a, b, c;
    Vec3 n;
    double off;
    bool alive = true;
};

/// Union-find over triangle indices (for coplanar merging).
struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

Vec3 canon_dir3(Vec3 u) {
    if (u.z != 0.0) return u.z > 0 ? u : -u;
    if (u.y != 0.0) return u.y > 0 ? u : -u;
    return u.x >= 0 ? u : -u;
}

}  // namespace

Polytope3 Polytope3::from_points(std::vector<Vec3> points, double tol) {
    if (points.size() < 4) throw InvalidBody("polytope needs at least 4 points");
    double scale = 1.0;
    for (Vec3 p : points)
        scale = std::max({scale, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    const double dtol = tol * scale;

    // Deduplicate, keeping first occurrences in input order.
    std::vector<Vec3> pts;
    for (Vec3 p : points) {
        bool dup = false;
        for (Vec3 q : pts) {
            if (norm(p - q) <= dtol) {
                dup = true;
                break;
            }
        }
        if (!dup) pts.push_back(p);
    }
    const int m = static_cast<int>(pts.size());
    if (m < 4) throw InvalidBody("fewer than 4 distinct points after deduplication");

    // Initial simplex: a point far from p0, then far from the line, then far
    // from the plane.
    int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
    double best = dtol;
    for (int i = 1; i < m; ++i) {
        double d = norm(pts[i] - pts[i0]);
        if (d > best) {
            best = d;
            i1 = i;
        }
    }
    if (i1 < 0) throw InvalidBody("points are degenerate (single cluster)");
    Vec3 axis = unit(pts[i1] - pts[i0]);
    best = dtol;
    for (int i = 0; i < m; ++i) {
        Vec3 d = pts[i] - pts[i0];
        double off = norm(d - axis * dot(d, axis));
        if (off > best) {
            best = off;
            i2 = i;
        }
    }
    if (i2 < 0) throw InvalidBody("points are collinear");
    Vec3 pn = unit(cross(pts[i1] - pts[i0], pts[i2] - pts[i0]));
    best = dtol;
    for (int i = 0; i < m; ++i) {
        double off = std::abs(dot(pts[i] - pts[i0], pn));
        if (off > best) {
            best = off;
            i3 = i;
        }
    }
    if (i3 < 0) throw InvalidBody("points are coplanar");

    const Vec3 inner = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    std::vector<Tri> tris;
    auto add_tri = [&](int a, int b, int c) {
        Vec3 n = cross(pts[b] - pts[a], pts[c] - pts[a]);
        double ln = norm(n);
        if (ln <= 1e-14 * scale * scale) throw InvalidBody("degenerate hull facet");
        n = n / ln;
        double off = dot(pts[a], n);
        if (dot(inner, n) > off) {
            std::swap(b, c);
            n = -n;
            off = dot(pts[a], n);
        }
        tris.push_back({a, b, c, n, off, true});
    };
    add_tri(i0, i1, i2);
    add_tri(i0, i1, i3);
    add_tri(i0, i2, i3);
    add_tri(i1, i2, i3);

    // Incremental insertion with horizon re-triangulation.
    for (int pi = 0; pi < m; ++pi) {
        if (pi == i0 || pi == i1 || pi == i2 || pi == i3) continue;
        Vec3 p = pts[pi];
        std::vector<int> visible;
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (tris[t].alive && dot(p, tris[t].n) - tris[t].off > dtol) {
                visible.push_back(static_cast<int>(t));
            }
        }
        if (visible.empty()) continue;

        std::map<std::pair<int, int>, int> owner;
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (!tris[t].alive) continue;
            const Tri& tr = tris[t];
            owner[{tr.a, tr.b}] = static_cast<int>(t);
            owner[{tr.b, tr.c}] = static_cast<int>(t);
            owner[{tr.c, tr.a}] = static_cast<int>(t);
        }
        std::vector<char> is_vis(tris.size(), 0);
        for (int t : visible) is_vis[static_cast<std::size_t>(t)] = 1;

        std::vector<std::pair<int, int>> horizon;
        for (int t : visible) {
            const Tri& tr = tris[static_cast<std::size_t>(t)];
            for (auto [u, v] : {std::pair{tr.a, tr.b}, std::pair{tr.b, tr.c}, std::pair{tr.c, tr.a}}) {
                auto it = owner.find({v, u});
                if (it == owner.end() || !is_vis[static_cast<std::size_t>(it->second)]) {
                    horizon.push_back({u, v});
                }
            }
        }
        for (int t : visible) tris[static_cast<std::size_t>(t)].alive = false;
        for (auto [u, v] : horizon) add_tri(u, v, pi);
    }

    std::vector<int> alive;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        if (tris[t].alive) alive.push_back(static_cast<int>(t));
    }

    // Merge coplanar neighbors into polygonal facets.
    std::map<std::pair<int, int>, int> owner;
    for (int t : alive) {
        const Tri& tr = tris[static_cast<std::size_t>(t)];
        owner[{tr.a, tr.b}] = t;
        owner[{tr.b, tr.c}] = t;
        owner[{tr.c, tr.a}] = t;
    }
    DisjointSet ds(tris.size());
    for (int t : alive) {
        const Tri& tr = tris[static_cast<std::size_t>(t)];
        for (auto [u, v] : {std::pair{tr.a, tr.b}, std::pair{tr.b, tr.c}, std::pair{tr.c, tr.a}}) {
            auto it = owner.find({v, u});
            if (it == owner.end()) throw NumericFailure("hull surface is not closed");
            const Tri& nb = tris[static_cast<std::size_t>(it->second)];
            if (norm(cross(tr.n, nb.n)) < 1e-7 && std::abs(tr.off - nb.off) <= 10.0 * dtol) {
                ds.unite(t, it->second);
            }
        }
    }
    std::map<int, std::vector<int>> groups;
    for (int t : alive) groups[ds.find(t)].push_back(t);

    Polytope3 poly;
    std::vector<int> remap(pts.size(), -1);
    auto map_vertex = [&](int old) {
        if (remap[static_cast<std::size_t>(old)] < 0) {
            remap[static_cast<std::size_t>(old)] = static_cast<int>(poly.vertices_.size());
            poly.vertices_.push_back(pts[static_cast<std::size_t>(old)]);
        }
        return remap[static_cast<std::size_t>(old)];
    };

    // Deterministic facet order: by smallest triangle index in the group.
    for (const auto& [root, members] : groups) {
        // Directed boundary edges: those not cancelled by a reverse edge
        // within the group.
        std::map<std::pair<int, int>, bool> boundary;
        for (int t : members) {
            const Tri& tr = tris[static_cast<std::size_t>(t)];
            for (auto [u, v] : {std::pair{tr.a, tr.b}, std::pair{tr.b, tr.c}, std::pair{tr.c, tr.a}}) {
                auto it = boundary.find({v, u});
                if (it != boundary.end()) {
                    boundary.erase(it);
                } else {
                    boundary[{u, v}] = true;
                }
            }
        }
        if (boundary.size() < 3) throw NumericFailure("merged facet boundary degenerate");
        std::map<int, int> next;
        int start = std::numeric_limits<int>::max();
        for (const auto& [e, _] : boundary) {
            if (next.count(e.first)) throw NumericFailure("merged facet boundary is not a simple cycle");
            next[e.first] = e.second;
            start = std::min(start, e.first);
        }
        std::vector<int> loop_old;
        int cur = start;
        do {
            loop_old.push_back(cur);
            auto it = next.find(cur);
            if (it == next.end()) throw NumericFailure("merged facet boundary is not closed");
            cur = it->second;
        } while (cur != start && loop_old.size() <= boundary.size());
        if (loop_old.size() != boundary.size())
            throw NumericFailure("merged facet boundary is not a single cycle");

        // Re-fit the plane over the whole loop (Newell's method).
        Vec3 n{};
        for (std::size_t i = 0; i < loop_old.size(); ++i) {
            Vec3 a = pts[static_cast<std::size_t>(loop_old[i])];
            Vec3 b = pts[static_cast<std::size_t>(loop_old[(i + 1) % loop_old.size()])];
            n.x += (a.y - b.y) * (a.z + b.z);
            n.y += (a.z - b.z) * (a.x + b.x);
            n.z += (a.x - b.x) * (a.y + b.y);
        }
        n = unit(n);
        const Tri& rep = tris[static_cast<std::size_t>(members.front())];
        if (dot(n, rep.n) < 0) n = -n;
        double off = 0.0;
        for (int v : loop_old) off += dot(pts[static_cast<std::size_t>(v)], n);
        off /= static_cast<double>(loop_old.size());

        Facet f;
        f.normal = n;
        f.offset = off;
        for (int v : loop_old) f.loop.push_back(map_vertex(v));
        poly.facets_.push_back(std::move(f));
    }

    // Unique undirected edges; each must be shared by exactly two facets.
    std::map<std::array<int, 2>, int> edge_count;
    for (const Facet& f : poly.facets_) {
        for (std::size_t i = 0; i < f.loop.size(); ++i) {
            int a = f.loop[i], b = f.loop[(i + 1) % f.loop.size()];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    for (const auto& [e, cnt] : edge_count) {
        if (cnt != 2) throw NumericFailure("polytope edge not shared by exactly two facets");
        poly.edges_.push_back(e);
    }

    // Euler characteristic and outwardness sanity checks.
    if (poly.vertices_.size() - poly.edges_.size() + poly.facets_.size() != 2)
        throw NumericFailure("hull violates Euler's formula");
    Vec3 c = poly.interior_point();
    for (const Facet& f : poly.facets_) {
        if (dot(c, f.normal) >= f.offset - dtol)
            throw NumericFailure("facet normal does not point away from the interior");
    }
    return poly;
}

double Polytope3::support(Vec3 u) const {
    double best = -std::numeric_limits<double>::infinity();
    for (Vec3 v : vertices_) best = std::max(best, dot(v, u));
    return best;
}

Vec3 Polytope3::support_point(Vec3 u) const {
    double h = support(u);
    double slack = 1e-12 * std::max(1.0, std::abs(h));
    const Vec3* best = nullptr;
    for (const Vec3& v : vertices_) {
        if (dot(v, u) >= h - slack && (best == nullptr || lex_less(v, *best))) best = &v;
    }
    return *best;
}

std::vector<int> Polytope3::support_set(Vec3 u, double tol) const {
    double h = support(u);
    double slack = tol * std::max(1.0, std::abs(h));
    std::vector<int> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (dot(vertices_[i], u) >= h - slack) out.push_back(static_cast<int>(i));
    }
    return out;
}

double Polytope3::facet_excess(Vec3 p) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const Facet& f : facets_) best = std::max(best, dot(p, f.normal) - f.offset);
    return best;
}

double Polytope3::distance_to_complement(Vec3 p) const { return std::max(0.0, -facet_excess(p)); }

Vec3 Polytope3::interior_point() const {
    Vec3 acc{};
    for (Vec3 v : vertices_) acc = acc + v;
    return acc / static_cast<double>(vertices_.size());
}

std::array<Vec3, 2> Polytope3::bbox() const {
    Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (Vec3 v : vertices_) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    return {lo, hi};
}

std::vector<Vec3> width_candidate_directions(const Polytope3& poly) {
    std::vector<Vec3> cands;
    auto push_unique = [&](Vec3 u) {
        u = canon_dir3(unit(u));
        for (Vec3 c : cands) {
            if (norm(c - u) < 1e-10) return;
        }
        cands.push_back(u);
    };
    for (const Facet& f : poly.facets()) push_unique(f.normal);
    const auto& vs = poly.vertices();
    const auto& es = poly.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
        Vec3 d1 = vs[static_cast<std::size_t>(es[i][1])] - vs[static_cast<std::size_t>(es[i][0])];
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            Vec3 d2 = vs[static_cast<std::size_t>(es[j][1])] - vs[static_cast<std::size_t>(es[j][0])];
            Vec3 c = cross(d1, d2);
            if (norm(c) <= 1e-12 * norm(d1) * norm(d2)) continue;
            push_unique(c);
        }
    }
    return cands;
}

MinimalWidth3 minimal_width(const Polytope3& poly) {
    auto cands = width_candidate_directions(poly);
    double best = std::numeric_limits<double>::infinity();
    for (Vec3 u : cands) best = std::min(best, poly.width(u));
    double tie = best + 1e-12 * std::max(1.0, best);
    Vec3 best_dir{};
    bool found = false;
    for (Vec3 u : cands) {
        if (poly.width(u) > tie) continue;
        for (Vec3 s : {u, -u}) {
            if (!found || lex_less(s, best_dir)) {
                best_dir = s;
                found = true;
            }
        }
    }
    return {best, best_dir};
}

SectionPolygon cross_section(const Polytope3& poly, double t) {
    const auto& vs = poly.vertices();
    double scale = 1.0;
    for (Vec3 v : vs) scale = std::max({scale, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
    const double ztol = 1e-9 * scale;

    std::vector<Vec2> pts;
    for (Vec3 v : vs) {
        if (std::abs(v.z - t) <= ztol) pts.push_back({v.x, v.y});
    }
    for (auto e : poly.edges()) {
        Vec3 a = vs[static_cast<std::size_t>(e[0])], b = vs[static_cast<std::size_t>(e[1])];
        if ((a.z - t) * (b.z - t) < 0 && std::abs(a.z - t) > ztol && std::abs(b.z - t) > ztol) {
            double s = (t - a.z) / (b.z - a.z);
            pts.push_back({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)});
        }
    }

    // Deduplicate, then take the 2D convex hull (monotone chain, CCW).
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return lex_less(a, b); });
    std::vector<Vec2> uq;
    for (Vec2 p : pts) {
        if (uq.empty() || norm(p - uq.back()) > 2.0 * ztol) uq.push_back(p);
    }
    if (uq.size() < 3) throw InvalidBody("cross-section is empty or lower-dimensional");

    auto build = [&](bool upper) {
        std::vector<Vec2> chain;
        for (std::size_t k = 0; k < uq.size(); ++k) {
            Vec2 p = uq[upper ? uq.size() - 1 - k : k];
            while (chain.size() >= 2 &&
                   cross(chain[chain.size() - 1] - chain[chain.size() - 2],
                         p - chain[chain.size() - 1]) <= 0) {
                chain.pop_back();
            }
            chain.push_back(p);
        }
        return chain;
    };
    std::vector<Vec2> lower = build(false), upper = build(true);
    std::vector<Vec2> hull(lower.begin(), lower.end() - 1);
    hull.insert(hull.end(), upper.begin(), upper.end() - 1);
    if (hull.size() < 3) throw InvalidBody("cross-section is empty or lower-dimensional");
    double area2 = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        area2 += cross(hull[i], hull[(i + 1) % hull.size()]);
    }
    if (area2 <= 1e-12 * scale * scale)
        throw InvalidBody("cross-section is empty or lower-dimensional");
    return {t, hull};
}

}  // namespace plank
