#include "plank/cover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "plank/error.hpp"
#include "plank/hausdorff.hpp"

namespace plank {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSafety = 0.99;
constexpr int kMaxHalvings = 64;

// ---------------------------------------------------------------------------
// Slice helpers.

// x-extent of body ∩ {y = s}; nullopt when the line misses the body.
std::optional<std::array<double, 2>> horizontal_slice(const Body2& body, double s) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto take = [&](double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    };
    for (const Piece& pc : body.pieces()) {
        if (pc.kind == PieceKind::Segment) {
            double d0 = pc.from.y - s;
            double d1 = pc.to.y - s;
            if (d0 * d1 > 0.0) continue;
            if (std::abs(d1 - d0) < 1e-15) {  // edge runs along the line
                take(pc.from.x);
                take(pc.to.x);
            } else {
                double tau = d0 / (d0 - d1);
                take(pc.from.x + tau * (pc.to.x - pc.from.x));
            }
        } else {
            double dy = s - pc.center.y;
            if (std::abs(dy) > pc.radius) continue;
            double dx = std::sqrt(std::max(0.0, pc.radius * pc.radius - dy * dy));
            for (double x : {pc.center.x - dx, pc.center.x + dx}) {
                double theta = std::atan2(dy, x - pc.center.x);
                if (angle_in_ccw_range(theta, pc.ang0, pc.ang1, 1e-9)) take(x);
            }
        }
    }
    if (!(lo <= hi)) return std::nullopt;
    return std::array<double, 2>{lo, hi};
}

// Outward edge line of a counterclockwise polygon, as the affine map
// x -> offset - <x, normal> (the inward clearance of x past that edge).
struct EdgeLine {
    Vec2 normal;
    double offset = 0.0;

    double clearance(Vec2 x) const { return offset - dot(x, normal); }
};

std::vector<EdgeLine> edge_lines(const std::vector<Vec2>& poly) {
    std::vector<EdgeLine> lines;
    lines.reserve(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Vec2 a = poly[i];
        Vec2 b = poly[(i + 1) % poly.size()];
        Vec2 m = unit(Vec2{b.y - a.y, a.x - b.x});
        lines.push_back({m, dot(a, m)});
    }
    return lines;
}

double min_clearance(const std::vector<EdgeLine>& lines, Vec2 x) {
    double best = std::numeric_limits<double>::infinity();
    for (const EdgeLine& e : lines) best = std::min(best, e.clearance(x));
    return best;
}

// Deepest point of the polygon (the in-center): maximizes the minimum edge
// clearance. The optimum is a vertex of the linear program max r subject to
// <c, m_j> + r <= o_j, so enumerating all triples of active edges and keeping
// the best feasible clearance is exact.
double deepest_clearance(const std::vector<EdgeLine>& lines, Vec2* center) {
    double best = 0.0;
    Vec2 bc{};
    std::size_t n = lines.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const EdgeLine &a = lines[i], &b = lines[j], &c = lines[k];
                double det = a.normal.x * (b.normal.y - c.normal.y) -
                             a.normal.y * (b.normal.x - c.normal.x) +
                             (b.normal.x * c.normal.y - b.normal.y * c.normal.x);
                if (std::abs(det) < 1e-12) continue;
                double dx = a.offset * (b.normal.y - c.normal.y) -
                            a.normal.y * (b.offset - c.offset) +
                            (b.offset * c.normal.y - c.offset * b.normal.y);
                double dy = a.normal.x * (b.offset - c.offset) -
                            a.offset * (b.normal.x - c.normal.x) +
                            (b.normal.x * c.offset - c.normal.x * b.offset);
                Vec2 p{dx / det, dy / det};
                double r = min_clearance(lines, p);
                if (r > best) {
                    best = r;
                    bc = p;
                }
            }
        }
    }
    if (center != nullptr) *center = bc;
    return best;
}

double polygon_perimeter(const std::vector<Vec2>& poly) {
    double acc = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        acc += norm(poly[(i + 1) % poly.size()] - poly[i]);
    }
    return acc;
}

// Among all spiky minimal-width directions, pick the one with the deepest
// aperture (most negative max over generators of <g, u>). The aperture lower
// bounds the slope of the standardized cone rays, so maximizing it keeps the
// cross-section slices, and with them every downstream tolerance, well
// conditioned. Lexicographic tie-break for determinism.
template <typename BodyT, typename WitnessT>
WitnessT deepest_spike_witness(const BodyT& body) {
    double wmin = minimal_width(body).value;
    double slack = 1e-9 * std::max(1.0, wmin);
    std::optional<WitnessT> best;
    for (auto c : width_candidate_directions(body)) {
        if (body.width(c) > wmin + slack) continue;
        for (auto u : {c, -c}) {
            auto w = is_spiky(body, u);
            if (!w) continue;
            if (!best || w->aperture < best->aperture - 1e-12 ||
                (w->aperture < best->aperture + 1e-12 && lex_less(u, best->direction))) {
                best = *w;
            }
        }
    }
    if (!best) throw NotSpiky("no minimal-width direction of the body is spiky");
    return *best;
}

}  // namespace

std::string_view to_string(CoverStrategy strategy) {
    switch (strategy) {
        case CoverStrategy::TwoPlank2D: return "two-plank-2d";
        case CoverStrategy::BoundaryWalk3D: return "boundary-walk-3d";
        case CoverStrategy::Polyhedral: return "polyhedral";
    }
    return "unknown";
}

std::optional<CoverStrategy> parse_cover_strategy(std::string_view name) {
    if (name == "two-plank-2d") return CoverStrategy::TwoPlank2D;
    if (name == "boundary-walk-3d") return CoverStrategy::BoundaryWalk3D;
    if (name == "polyhedral") return CoverStrategy::Polyhedral;
    return std::nullopt;
}

double section_gap(const Cone2& cone, const Body2& inner, double t) {
    SectionInterval sec = cross_section(cone, t);
    ShapeSet boundary;
    boundary.points = {{sec.xlo, t}, {sec.xhi, t}};

    ShapeSet annulus;
    auto add_part = [&](double xa, double xb) {
        xa = std::clamp(xa, sec.xlo, sec.xhi);
        xb = std::clamp(xb, sec.xlo, sec.xhi);
        if (xb - xa > 1e-14) {
            annulus.segments.push_back({Vec2{xa, t}, Vec2{xb, t}});
        } else {
            annulus.points.push_back({xa, t});
        }
    };
    std::optional<std::array<double, 2>> hole = horizontal_slice(inner, t);
    if (hole) {
        add_part(sec.xlo, (*hole)[0]);
        add_part((*hole)[1], sec.xhi);
    } else {
        add_part(sec.xlo, sec.xhi);
    }
    return hausdorff_distance(boundary, annulus);
}

double section_gap(const Cone3& cone, const Polytope3& inner, double t) {
    SectionPolygon sec = cross_section(cone, t);
    std::vector<EdgeLine> outer = edge_lines(sec.polygon);

    double inner_top = inner.support({0.0, 0.0, 1.0});
    std::vector<Vec2> hole;
    if (t < inner_top - 1e-12 * std::max(1.0, inner_top)) {
        hole = cross_section(inner, t).polygon;
    }

    double best = 0.0;
    Vec2 center{};
    double deepest = deepest_clearance(outer, &center);
    if (hole.empty()) {
        best = deepest;
    } else {
        for (Vec2 v : hole) best = std::max(best, min_clearance(outer, v));
        // Along each hole edge the clearance is a concave min of affine
        // functions; its maximum sits at an endpoint or where the active
        // outer edge changes.
        for (std::size_t i = 0; i < hole.size(); ++i) {
            Vec2 p = hole[i];
            Vec2 d = hole[(i + 1) % hole.size()] - p;
            for (std::size_t j = 0; j < outer.size(); ++j) {
                for (std::size_t k = j + 1; k < outer.size(); ++k) {
                    double slope = dot(d, outer[k].normal) - dot(d, outer[j].normal);
                    if (std::abs(slope) < 1e-15) continue;
                    double s = (outer[k].clearance(p) - outer[j].clearance(p)) / slope;
                    if (s <= 0.0 || s >= 1.0) continue;
                    best = std::max(best, min_clearance(outer, p + s * d));
                }
            }
        }
        std::vector<EdgeLine> hole_lines = edge_lines(hole);
        if (min_clearance(hole_lines, center) <= 1e-12) {
            best = std::max(best, deepest);
        }
    }

    // Grid cross-check: candidate enumeration must dominate any sample.
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi = -lo;
    for (Vec2 v : sec.polygon) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
    std::vector<EdgeLine> hole_lines = hole.empty() ? std::vector<EdgeLine>{} : edge_lines(hole);
    for (int ix = 0; ix < 32; ++ix) {
        for (int iy = 0; iy < 32; ++iy) {
            Vec2 p{lo.x + (hi.x - lo.x) * (ix + 0.5) / 32.0,
                   lo.y + (hi.y - lo.y) * (iy + 0.5) / 32.0};
            double clear = min_clearance(outer, p);
            if (clear < 0.0) continue;                                    // outside the slice
            if (!hole.empty() && min_clearance(hole_lines, p) > 1e-12) {  // inside the hole
                continue;
            }
            if (clear > best + 1e-9) {
                throw NumericFailure("slice gap enumeration missed a sampled point");
            }
        }
    }
    return std::max(best, 0.0);
}

CoverParams choose_section_height(const Standardization2& st, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidBody("homothety ratio must be inside (0, 1)");
    Body2 inner = transformed(st.body, Similarity2{0.0, eps, Vec2{0.0, 0.0}});
    const Cone2& cone = st.witness.cone;
    double t = 0.5;
    for (int i = 0; i < kMaxHalvings; ++i, t *= 0.5) {
        double gap = section_gap(cone, inner, t);
        SectionInterval sec = cross_section(cone, t);
        double slice_width = sec.xhi - sec.xlo;
        if (gap < kSafety * (t / 2.0) && gap < kSafety * slice_width) {
            return {eps, t, gap, 0.0, CoverStrategy::TwoPlank2D};
        }
    }
    throw NumericFailure("no cross-section height met the plank budget after 64 halvings");
}

CoverParams choose_section_height(const Standardization3& st, double eps,
                                  CoverStrategy strategy) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidBody("homothety ratio must be inside (0, 1)");
    if (strategy == CoverStrategy::TwoPlank2D) {
        throw InvalidBody("the two-plank strategy applies to planar bodies only");
    }
    Polytope3 inner = transformed(st.body, Similarity3{Mat3{}, eps, Vec3{0.0, 0.0, 0.0}});
    const Cone3& cone = st.witness.cone;
    double rho = polygon_perimeter(cross_section(cone, 1.0).polygon);
    double t = 0.5;
    for (int i = 0; i < kMaxHalvings; ++i, t *= 0.5) {
        double gap = section_gap(cone, inner, t);
        Body2 slice = Body2::from_polygon(cross_section(cone, t).polygon);
        double budget = strategy == CoverStrategy::BoundaryWalk3D
                            ? t / (8.0 * kPi * rho)
                            : t / static_cast<double>(slice.pieces().size());
        if (gap < kSafety * budget && gap < kSafety * minimal_width(slice).value) {
            return {eps, t, gap, 0.0, strategy};
        }
    }
    throw NumericFailure("no cross-section height met the plank budget after 64 halvings");
}

Plank2 lift_plank(const Cone2& cone, double t, double outer_x, double inner_x) {
    if (!(t > 0.0)) throw InvalidBody("slice height must be positive");
    Vec2 h{outer_x, t};
    Vec2 n = unit(perp(h));
    if (dot(cone.forward + cone.backward, n) > 0.0) n = -n;
    if (dot(cone.forward, n) > 1e-9 || dot(cone.backward, n) > 1e-9) {
        throw InvalidBody("lifted boundary line must support the cone");
    }
    double lo = std::min(dot(Vec2{inner_x, t}, n), 0.0);
    return {n, lo, 0.0};
}

Plank3 lift_plank(const Cone3& cone, double t, const Plank2& section) {
    if (!(t > 0.0)) throw InvalidBody("slice height must be positive");
    Vec3 raw{section.normal.x * t, section.normal.y * t, -section.hi};
    double len = norm(raw);
    Vec3 n = raw / len;
    for (const Vec3& g : cone.generators) {
        if (dot(unit(g), n) > 1e-9) {
            throw InvalidBody("lifted boundary plane must support the cone");
        }
    }
    double lo = std::min((section.lo - section.hi) * t / len, 0.0);
    return {n, lo, 0.0};
}

namespace {

// ---------------------------------------------------------------------------
// Inflation and shift (standardized frame).

bool shifted_copy_strictly_inside(const Body2& outer, const Body2& inner, Vec2 y) {
    auto inside = [&](Vec2 p) { return outer.strictly_contains(p + y, 1e-12); };
    for (const Piece& pc : inner.pieces()) {
        if (!inside(pc.from)) return false;
        if (pc.kind == PieceKind::Arc) {
            for (int k = 0; k < 4; ++k) {  // axis extremes of the supporting circle
                double target = k * (kPi / 2.0);
                double lifted = target + 2.0 * kPi * std::ceil((pc.ang0 - target) / (2.0 * kPi));
                if (lifted <= pc.ang1 &&
                    !inside(pc.center + pc.radius * dir_from_angle(lifted))) {
                    return false;
                }
            }
            for (int k = 1; k < 32; ++k) {
                double ang = pc.ang0 + (pc.ang1 - pc.ang0) * k / 32.0;
                if (!inside(pc.center + pc.radius * dir_from_angle(ang))) return false;
            }
        }
    }
    return true;
}

bool shifted_copy_strictly_inside(const Polytope3& outer, const Polytope3& inner, Vec3 y) {
    for (const Vec3& v : inner.vertices()) {
        if (!outer.strictly_contains(v + y, 1e-12)) return false;
    }
    return true;
}

template <typename BodyT, typename VecT>
std::pair<VecT, double> pick_shift(const BodyT& outer, const BodyT& inner, VecT v,
                                   double slack, std::size_t plank_count) {
    double kappa = slack;
    for (int i = 0; i < kMaxHalvings; ++i, kappa *= 0.5) {
        if (shifted_copy_strictly_inside(outer, inner, kappa * v)) {
            kappa = std::min(slack / (4.0 * static_cast<double>(plank_count)), kappa);
            if (!shifted_copy_strictly_inside(outer, inner, kappa * v)) {
                throw NumericFailure("shift radius lost containment after the budget cap");
            }
            return {kappa * v, kappa};
        }
    }
    throw NumericFailure("no shift radius kept the inner copy strictly inside the body");
}

template <typename PlankT>
double total_width(const std::vector<PlankT>& planks) {
    double acc = 0.0;
    for (const PlankT& p : planks) acc += p.width();
    return acc;
}

}  // namespace

CoverResult2 spiky_annulus_cover(const Body2& body, double eps,
                                 std::optional<CoverStrategy> strategy) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidBody("homothety ratio must be inside (0, 1)");
    if (strategy && *strategy != CoverStrategy::TwoPlank2D) {
        throw InvalidBody("planar bodies support the two-plank strategy only");
    }
    auto witness = deepest_spike_witness<Body2, SpikeWitness2>(body);
    Standardization2 st = standardize(body, witness.direction);
    CoverParams params = choose_section_height(st, eps);
    const Cone2& cone = st.witness.cone;

    SectionInterval sec = cross_section(cone, params.t);

    SectionRecord rec;
    rec.slice_width = sec.xhi - sec.xlo;
    rec.plank_widths = {params.delta_t, params.delta_t};

    std::vector<Plank2> planks;
    planks.push_back({Vec2{0.0, 1.0}, params.t, 1.0});  // top plank, width 1 - t
    Plank2 left = lift_plank(cone, params.t, sec.xlo, sec.xlo + params.delta_t);
    Plank2 right = lift_plank(cone, params.t, sec.xhi, sec.xhi - params.delta_t);
    rec.lifted_widths = {left.width(), right.width()};
    planks.push_back(left);
    planks.push_back(right);

    if (left.width() + right.width() >= params.t) {
        throw NumericFailure("slice planks exceeded their height budget");
    }
    rec.pre_inflation_total = total_width(planks);
    double slack = 1.0 - rec.pre_inflation_total;
    if (slack <= 0.0) throw NumericFailure("covering left no width slack before inflation");

    Body2 inner = transformed(st.body, Similarity2{0.0, eps, Vec2{0.0, 0.0}});
    auto [y_std, kappa] =
        pick_shift(st.body, inner, interior_shift_direction(cone), slack, planks.size());
    params.kappa = kappa;
    for (Plank2& p : planks) {
        p.lo -= kappa;
        p.hi += kappa;
    }

    const Similarity2& back = st.from_standard;
    CoverResult2 res;
    res.params = params;
    res.section = std::move(rec);
    res.width = st.original_width;
    res.planks.reserve(planks.size());
    for (const Plank2& p : planks) {
        Vec2 n = back.apply_direction(p.normal);
        double shift = dot(back.offset, n);
        res.planks.push_back({n, back.scale * p.lo + shift, back.scale * p.hi + shift});
    }
    res.y = back.apply(y_std + eps * st.to_standard.offset);
    res.total_width = total_width(res.planks);
    res.margin = res.width - res.total_width;
    if (!(res.margin > 0.0)) throw NumericFailure("covering exceeded the width budget");
    return res;
}

CoverResult3 spiky_annulus_cover(const Polytope3& poly, double eps,
                                 std::optional<CoverStrategy> strategy) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidBody("homothety ratio must be inside (0, 1)");
    CoverStrategy strat = strategy.value_or(CoverStrategy::Polyhedral);
    if (strat == CoverStrategy::TwoPlank2D) {
        throw InvalidBody("the two-plank strategy applies to planar bodies only");
    }
    SpikeWitness3 witness = deepest_spike_witness<Polytope3, SpikeWitness3>(poly);
    Standardization3 st = standardize(poly, witness.direction);
    CoverParams params = choose_section_height(st, eps, strat);
    const Cone3& cone = st.witness.cone;

    Body2 slice = Body2::from_polygon(cross_section(cone, params.t).polygon);

    SectionRecord rec;
    rec.slice_width = minimal_width(slice).value;
    rec.slice_perimeter = slice.perimeter();

    std::vector<Plank2> section_planks;
    if (strat == CoverStrategy::Polyhedral) {
        rec.facet_count = slice.pieces().size();
        for (const Piece& pc : slice.pieces()) {
            Vec2 m = pc.normal_at(0.0);
            double hi = dot(pc.from, m);
            section_planks.push_back({m, hi - params.delta_t, hi});
        }
    } else {
        auto [walk_planks, walk] = boundary_walk_cover(slice, params.delta_t);
        section_planks = std::move(walk_planks);
        double section_total = total_width(section_planks);
        double walk_budget =
            std::sqrt(8.0 * kPi * slice.perimeter() * params.delta_t);
        if (section_total > walk_budget + 1e-9) {
            throw NumericFailure("slice walk exceeded its square-root width budget");
        }
        rec.walk = std::move(walk);
    }
    for (const Plank2& p : section_planks) rec.plank_widths.push_back(p.width());
    if (total_width(section_planks) >= params.t) {
        throw NumericFailure("slice planks exceeded their height budget");
    }

    std::vector<Plank3> planks;
    planks.push_back({Vec3{0.0, 0.0, 1.0}, params.t, 1.0});  // top plank
    for (const Plank2& p : section_planks) {
        Plank3 lifted = lift_plank(cone, params.t, p);
        rec.lifted_widths.push_back(lifted.width());
        planks.push_back(lifted);
    }
    rec.pre_inflation_total = total_width(planks);
    double slack = 1.0 - rec.pre_inflation_total;
    if (slack <= 0.0) throw NumericFailure("covering left no width slack before inflation");

    Polytope3 inner = transformed(st.body, Similarity3{Mat3{}, eps, Vec3{0.0, 0.0, 0.0}});
    auto [y_std, kappa] =
        pick_shift(st.body, inner, interior_shift_direction(cone), slack, planks.size());
    params.kappa = kappa;
    for (Plank3& p : planks) {
        p.lo -= kappa;
        p.hi += kappa;
    }

    const Similarity3& back = st.from_standard;
    CoverResult3 res;
    res.params = params;
    res.section = std::move(rec);
    res.width = st.original_width;
    res.planks.reserve(planks.size());
    for (const Plank3& p : planks) {
        Vec3 n = back.apply_direction(p.normal);
        double shift = dot(back.offset, n);
        res.planks.push_back({n, back.scale * p.lo + shift, back.scale * p.hi + shift});
    }
    res.y = back.apply(y_std + eps * st.to_standard.offset);
    res.total_width = total_width(res.planks);
    res.margin = res.width - res.total_width;
    if (!(res.margin > 0.0)) throw NumericFailure("covering exceeded the width budget");
    return res;
}

}  // namespace plank
