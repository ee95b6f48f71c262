#include "plank/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>

#include "plank/error.hpp"
#include "plank/spiky.hpp"

namespace plank {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMembershipTol = 1e-12;

/// Radical-inverse (van der Corput) value of index i in the given base; the
/// pairs (base 2, base 3) and triples (2, 3, 5) form low-discrepancy points.
double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double f = 1.0;
    double r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require_valid(const SamplePlan& plan) {
    if (plan.interior_samples <= 0 || plan.boundary_samples <= 0) {
        throw InvalidBody("sample plan counts must be positive");
    }
    for (double off : plan.offsets) {
        if (!(off >= 0.0)) throw InvalidBody("sample plan offsets must be nonnegative");
    }
    if (plan.offsets.empty()) throw InvalidBody("sample plan needs at least one boundary offset");
}

template <typename VecT, typename PlankT>
struct SampleSink {
    const std::vector<PlankT>& planks;
    VerifyReport<VecT>& report;
    std::vector<VecT> uncovered;

    /// Tests one annulus member against the planks; returns false when the
    /// point is not in the annulus (so callers can count acceptances).
    template <typename MemberFn>
    bool test(const MemberFn& is_member, VecT p) {
        if (!is_member(p)) return false;
        ++report.samples;
        bool hit = std::any_of(planks.begin(), planks.end(),
                               [&](const PlankT& pl) { return pl.contains(p, kMembershipTol); });
        if (!hit) uncovered.push_back(p);
        return true;
    }

    void finish() {
        std::sort(uncovered.begin(), uncovered.end(),
                  [](const VecT& a, const VecT& b) { return lex_less(a, b); });
        if (uncovered.size() > 100) uncovered.resize(100);
        report.uncovered = std::move(uncovered);
    }
};

template <typename VecT, typename PlankT>
void conclude(VerifyReport<VecT>& rep, const std::vector<PlankT>& planks, double body_width) {
    rep.total_width = 0.0;
    double min_width = planks.empty() ? 0.0 : planks.front().width();
    for (const PlankT& pl : planks) {
        rep.total_width += pl.width();
        min_width = std::min(min_width, pl.width());
    }
    rep.margin = body_width - rep.total_width;
    rep.audits.push_back({"margin-positive", rep.margin > 0.0, rep.margin, 0.0});
    rep.audits.push_back({"plank-widths-nonnegative", min_width >= 0.0, min_width, 0.0});
    if (!rep.uncovered.empty()) {
        rep.verdict = Verdict::Refuted;
    } else if (std::all_of(rep.audits.begin(), rep.audits.end(),
                           [](const AuditCheck& a) { return a.passed; })) {
        rep.verdict = Verdict::CertifiedBySampling;
    } else {
        rep.verdict = Verdict::AuditFailed;
    }
}

void push(std::vector<AuditCheck>& out, std::string name, bool passed, double lhs, double rhs) {
    out.push_back({std::move(name), passed, lhs, rhs});
}

void audit_params(std::vector<AuditCheck>& out, const CoverParams& params) {
    push(out, "ratio-in-range", params.eps > 0.0 && params.eps < 1.0, params.eps, 1.0);
    push(out, "section-height-in-range", params.t > 0.0 && params.t <= 0.5, params.t, 0.5);
    push(out, "gap-nonnegative", params.delta_t >= 0.0, params.delta_t, 0.0);
    push(out, "inflation-positive", params.kappa > 0.0, params.kappa, 0.0);
}

void audit_walk_record(std::vector<AuditCheck>& out, const WalkRecord& walk) {
    const double delta = walk.delta;
    const double rho = walk.perimeter;
    double angle_total = 0.0;
    double arc_budget = 0.0;
    double max_angle = 0.0;
    double min_arc_slack = walk.steps.empty() ? 0.0 : 1.0;
    bool angles_positive = true;
    for (const WalkStep& step : walk.steps) {
        angles_positive = angles_positive && step.alpha > 0.0;
        max_angle = std::max(max_angle, step.alpha);
        angle_total += step.alpha;
        double need = delta / std::sin(std::min(step.alpha, kPi));
        arc_budget += need;
        min_arc_slack = std::min(min_arc_slack, step.arc_length - need);
    }
    push(out, "turn-angles-in-range", angles_positive && max_angle <= kPi + 1e-9, max_angle, kPi);
    push(out, "step-arc-versus-angle", min_arc_slack >= -1e-9, min_arc_slack, 0.0);
    push(out, "arc-length-budget", arc_budget <= rho + 1e-9, arc_budget, rho);
    push(out, "turning-angle-total", angle_total <= 2.0 * kPi + 1e-9, angle_total, 2.0 * kPi);
    // A zero gap admits any finite count; DBL_MAX keeps the record finite so
    // serialized reports stay plain decimal numbers.
    double count_cap = delta > 0.0 ? std::sqrt(2.0 * kPi * rho / delta)
                                   : std::numeric_limits<double>::max();
    push(out, "plank-count-bound", static_cast<double>(walk.steps.size()) < count_cap,
         static_cast<double>(walk.steps.size()), count_cap);
}

template <typename ResultT>
void audit_section_record(std::vector<AuditCheck>& out, const ResultT& res) {
    const SectionRecord& sec = res.section;
    const double delta = res.params.delta_t;
    double section_total = 0.0;
    for (double w : sec.plank_widths) section_total += w;
    push(out, "section-width-below-height", section_total < res.params.t, section_total,
         res.params.t);
    push(out, "gap-below-slice-width", delta < sec.slice_width, delta, sec.slice_width);
    bool lift_ok = sec.lifted_widths.size() == sec.plank_widths.size();
    double max_lift_excess = 0.0;
    for (std::size_t i = 0; lift_ok && i < sec.lifted_widths.size(); ++i) {
        max_lift_excess = std::max(max_lift_excess, sec.lifted_widths[i] - sec.plank_widths[i]);
    }
    push(out, "lift-width-shrinks", lift_ok && max_lift_excess <= 1e-12, max_lift_excess, 0.0);
}

template <typename ResultT>
void audit_totals(std::vector<AuditCheck>& out, const ResultT& res) {
    double plank_total = 0.0;
    for (const auto& pl : res.planks) plank_total += pl.width();
    push(out, "stored-total-matches-planks",
         std::abs(plank_total - res.total_width) <= 1e-9 * std::max(1.0, res.total_width),
         plank_total, res.total_width);
    push(out, "stored-budget-identity", res.margin == res.width - res.total_width, res.margin,
         res.width - res.total_width);
    push(out, "margin-positive", res.margin > 0.0, res.margin, 0.0);
}

}  // namespace

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::CertifiedBySampling: return "certified-by-sampling";
        case Verdict::Refuted: return "refuted";
        case Verdict::AuditFailed: return "audit-failed";
    }
    return "audit-failed";
}

bool annulus_membership(const Body2& body, const Body2& inner, Vec2 y, Vec2 x) {
    return body.contains(x, kMembershipTol) && !inner.strictly_contains(x - y, kMembershipTol);
}

bool annulus_membership(const Polytope3& body, const Polytope3& inner, Vec3 y, Vec3 x) {
    return body.contains(x, kMembershipTol) && !inner.strictly_contains(x - y, kMembershipTol);
}

VerifyReport2 verify_covering(const Body2& body, const Body2& inner, Vec2 y,
                              const std::vector<Plank2>& planks, const SamplePlan& plan) {
    require_valid(plan);
    VerifyReport2 rep;
    const double body_width = minimal_width(body).value;
    auto member = [&](Vec2 p) { return annulus_membership(body, inner, y, p); };
    SampleSink<Vec2, Plank2> sink{planks, rep, {}};

    const auto box = body.bbox();
    const Vec2 span = box[1] - box[0];
    std::uint64_t index = plan.seed % 9973 + 1;
    int kept = 0;
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap = 256ULL * static_cast<std::uint64_t>(plan.interior_samples);
    while (kept < plan.interior_samples && attempts < attempt_cap) {
        Vec2 p{box[0].x + radical_inverse(index, 2) * span.x,
               box[0].y + radical_inverse(index, 3) * span.y};
        ++index;
        ++attempts;
        if (sink.test(member, p)) ++kept;
    }

    std::mt19937_64 rng(plan.seed);
    for (double off : plan.offsets) {
        const double depth = off * body_width;
        double phase = uniform01(rng);
        for (int i = 0; i < plan.boundary_samples; ++i) {
            double s = body.perimeter() * (static_cast<double>(i) + phase) /
                       static_cast<double>(plan.boundary_samples);
            BoundaryPoint bp = body.boundary_at(s);
            Vec2 n = body.pieces()[bp.piece].normal_at(bp.local);
            sink.test(member, bp.point - depth * n);
        }
        phase = uniform01(rng);
        for (int i = 0; i < plan.boundary_samples; ++i) {
            double s = inner.perimeter() * (static_cast<double>(i) + phase) /
                       static_cast<double>(plan.boundary_samples);
            BoundaryPoint bp = inner.boundary_at(s);
            Vec2 n = inner.pieces()[bp.piece].normal_at(bp.local);
            sink.test(member, bp.point + y + depth * n);
        }
    }

    sink.finish();
    conclude(rep, planks, body_width);
    return rep;
}

VerifyReport3 verify_covering(const Polytope3& body, const Polytope3& inner, Vec3 y,
                              const std::vector<Plank3>& planks, const SamplePlan& plan) {
    require_valid(plan);
    VerifyReport3 rep;
    const double body_width = minimal_width(body).value;
    auto member = [&](Vec3 p) { return annulus_membership(body, inner, y, p); };
    SampleSink<Vec3, Plank3> sink{planks, rep, {}};

    const auto box = body.bbox();
    const Vec3 span = box[1] - box[0];
    std::uint64_t index = plan.seed % 9973 + 1;
    int kept = 0;
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap = 256ULL * static_cast<std::uint64_t>(plan.interior_samples);
    while (kept < plan.interior_samples && attempts < attempt_cap) {
        Vec3 p{box[0].x + radical_inverse(index, 2) * span.x,
               box[0].y + radical_inverse(index, 3) * span.y,
               box[0].z + radical_inverse(index, 5) * span.z};
        ++index;
        ++attempts;
        if (sink.test(member, p)) ++kept;
    }

    // Facet sampling: fan-triangulate every facet, pick triangles with a
    // low-discrepancy area-weighted stream, then barycentric coordinates.
    struct FaceTri {
        Vec3 a, b, c;
        Vec3 normal;
        double cum = 0.0;
    };
    auto triangulate = [](const Polytope3& poly) {
        std::vector<FaceTri> tris;
        double total = 0.0;
        const auto& vs = poly.vertices();
        for (const Facet& f : poly.facets()) {
            for (std::size_t i = 1; i + 1 < f.loop.size(); ++i) {
                Vec3 a = vs[f.loop[0]];
                Vec3 b = vs[f.loop[i]];
                Vec3 c = vs[f.loop[i + 1]];
                double area = 0.5 * norm(cross(b - a, c - a));
                if (area <= 0.0) continue;
                total += area;
                tris.push_back({a, b, c, f.normal, total});
            }
        }
        return tris;
    };
    auto sample_surface = [&](const std::vector<FaceTri>& tris, Vec3 shift, double depth,
                              std::uint64_t start) {
        if (tris.empty()) return;
        const double total = tris.back().cum;
        for (int i = 0; i < plan.boundary_samples; ++i) {
            std::uint64_t j = start + static_cast<std::uint64_t>(i);
            double pick = radical_inverse(j, 5) * total;
            auto it = std::lower_bound(tris.begin(), tris.end(), pick,
                                       [](const FaceTri& t, double v) { return t.cum < v; });
            if (it == tris.end()) --it;
            double u = radical_inverse(j, 2);
            double v = radical_inverse(j, 3);
            if (u + v > 1.0) {
                u = 1.0 - u;
                v = 1.0 - v;
            }
            Vec3 p = it->a + u * (it->b - it->a) + v * (it->c - it->a);
            sink.test(member, p + shift + depth * it->normal);
        }
    };

    const std::vector<FaceTri> body_tris = triangulate(body);
    const std::vector<FaceTri> inner_tris = triangulate(inner);
    std::mt19937_64 rng(plan.seed);
    std::uint64_t start = (rng() % 9973) + 1;
    const auto stride = static_cast<std::uint64_t>(plan.boundary_samples);
    for (double off : plan.offsets) {
        const double depth = off * body_width;
        sample_surface(body_tris, Vec3{}, -depth, start);
        start += stride;
        sample_surface(inner_tris, y, depth, start);
        start += stride;
    }

    sink.finish();
    conclude(rep, planks, body_width);
    return rep;
}

std::vector<AuditCheck> audit_trace(const CoverResult2& result) {
    std::vector<AuditCheck> out;
    audit_params(out, result.params);
    push(out, "strategy-matches-dimension", result.params.strategy == CoverStrategy::TwoPlank2D,
         0.0, 0.0);
    push(out, "gap-below-half-height", result.params.delta_t < result.params.t / 2.0,
         result.params.delta_t, result.params.t / 2.0);
    const SectionRecord& sec = result.section;
    bool widths_match = sec.plank_widths.size() == 2;
    for (double w : sec.plank_widths) widths_match = widths_match && w == result.params.delta_t;
    push(out, "section-plank-widths", widths_match,
         static_cast<double>(sec.plank_widths.size()), 2.0);
    audit_section_record(out, result);
    audit_totals(out, result);
    return out;
}

std::vector<AuditCheck> audit_trace(const CoverResult3& result) {
    std::vector<AuditCheck> out;
    audit_params(out, result.params);
    const SectionRecord& sec = result.section;
    if (result.params.strategy == CoverStrategy::BoundaryWalk3D) {
        push(out, "trace-present", sec.walk.has_value(), sec.walk ? 1.0 : 0.0, 1.0);
        if (sec.walk) {
            const WalkRecord& walk = *sec.walk;
            audit_walk_record(out, walk);
            push(out, "trace-gap-consistent", walk.delta == result.params.delta_t, walk.delta,
                 result.params.delta_t);
            double section_total = 0.0;
            for (double w : sec.plank_widths) section_total += w;
            double root_bound = std::sqrt(8.0 * kPi * sec.slice_perimeter * walk.delta);
            push(out, "section-width-root-bound",
                 walk.delta == 0.0 || section_total <= root_bound + 1e-9, section_total,
                 root_bound);
        }
    } else if (result.params.strategy == CoverStrategy::Polyhedral) {
        push(out, "facet-count-positive", sec.facet_count > 0,
             static_cast<double>(sec.facet_count), 0.0);
        double budget = sec.facet_count > 0
                            ? result.params.t / static_cast<double>(sec.facet_count)
                            : 0.0;
        push(out, "gap-below-facet-budget", result.params.delta_t < budget,
             result.params.delta_t, budget);
        push(out, "section-plank-count",
             sec.plank_widths.size() == static_cast<std::size_t>(sec.facet_count),
             static_cast<double>(sec.plank_widths.size()),
             static_cast<double>(sec.facet_count));
    } else {
        push(out, "strategy-matches-dimension", false, 0.0, 0.0);
    }
    audit_section_record(out, result);
    audit_totals(out, result);
    return out;
}

VerifyReport2 verify_cover_result(const Body2& body, const CoverResult2& result,
                                  const SamplePlan& plan) {
    Body2 inner = transformed(body, Similarity2{0.0, result.params.eps, Vec2{}});
    VerifyReport2 rep = verify_covering(body, inner, result.y, result.planks, plan);
    std::vector<AuditCheck> trace = audit_trace(result);
    rep.audits.insert(rep.audits.end(), trace.begin(), trace.end());
    if (rep.verdict == Verdict::CertifiedBySampling &&
        !std::all_of(rep.audits.begin(), rep.audits.end(),
                     [](const AuditCheck& a) { return a.passed; })) {
        rep.verdict = Verdict::AuditFailed;
    }
    return rep;
}

VerifyReport3 verify_cover_result(const Polytope3& body, const CoverResult3& result,
                                  const SamplePlan& plan) {
    Polytope3 inner = transformed(body, Similarity3{Mat3{}, result.params.eps, Vec3{}});
    VerifyReport3 rep = verify_covering(body, inner, result.y, result.planks, plan);
    std::vector<AuditCheck> trace = audit_trace(result);
    rep.audits.insert(rep.audits.end(), trace.begin(), trace.end());
    if (rep.verdict == Verdict::CertifiedBySampling &&
        !std::all_of(rep.audits.begin(), rep.audits.end(),
                     [](const AuditCheck& a) { return a.passed; })) {
        rep.verdict = Verdict::AuditFailed;
    }
    return rep;
}

}  // namespace plank
