#include "plank/verify.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "plank/cover.hpp"
#include "plank/error.hpp"
#include "plank/shapes.hpp"
#include "plank/spiky.hpp"

namespace plank {
namespace {

Body2 make_centered_square(double side = 1.0) {
    double h = side / 2.0;
    return Body2::from_polygon({{-h, -h}, {h, -h}, {h, h}, {-h, h}});
}

Polytope3 make_centered_cube(double side = 1.0) {
    double h = side / 2.0;
    return Polytope3::from_points({{-h, -h, -h},
                                   {h, -h, -h},
                                   {-h, h, -h},
                                   {h, h, -h},
                                   {-h, -h, h},
                                   {h, -h, h},
                                   {-h, h, h},
                                   {h, h, h}});
}

Body2 scaled_copy(const Body2& body, double eps) {
    return transformed(body, Similarity2{0.0, eps, Vec2{}});
}

Polytope3 scaled_copy(const Polytope3& body, double eps) {
    return transformed(body, Similarity3{Mat3{}, eps, Vec3{}});
}

template <typename PlankT, typename VecT>
bool in_some_plank(const std::vector<PlankT>& planks, VecT p) {
    return std::any_of(planks.begin(), planks.end(),
                       [&](const PlankT& pl) { return pl.contains(p, 1e-12); });
}

const AuditCheck* find_check(const std::vector<AuditCheck>& audits, std::string_view name) {
    for (const AuditCheck& a : audits) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

bool all_passed(const std::vector<AuditCheck>& audits) {
    return std::all_of(audits.begin(), audits.end(),
                       [](const AuditCheck& a) { return a.passed; });
}

template <typename ReportT>
void expect_reports_equal(const ReportT& a, const ReportT& b) {
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.total_width, b.total_width);
    EXPECT_EQ(a.margin, b.margin);
    EXPECT_EQ(a.verdict, b.verdict);
    ASSERT_EQ(a.uncovered.size(), b.uncovered.size());
    for (std::size_t i = 0; i < a.uncovered.size(); ++i) {
        EXPECT_TRUE(a.uncovered[i] == b.uncovered[i]);
    }
    ASSERT_EQ(a.audits.size(), b.audits.size());
    for (std::size_t i = 0; i < a.audits.size(); ++i) {
        EXPECT_EQ(a.audits[i].name, b.audits[i].name);
        EXPECT_EQ(a.audits[i].passed, b.audits[i].passed);
        EXPECT_EQ(a.audits[i].lhs, b.audits[i].lhs);
        EXPECT_EQ(a.audits[i].rhs, b.audits[i].rhs);
    }
}

TEST(AnnulusMembership, SeparatesHoleInteriorFromTheRing) {
    Body2 square = make_centered_square();
    Body2 inner = scaled_copy(square, 0.5);
    Vec2 y{0.0, 0.0};
    EXPECT_TRUE(annulus_membership(square, inner, y, {0.4, 0.0}));
    EXPECT_TRUE(annulus_membership(square, inner, y, {-0.3, 0.45}));
    EXPECT_FALSE(annulus_membership(square, inner, y, {0.0, 0.0}));
    EXPECT_FALSE(annulus_membership(square, inner, y, {0.9, 0.0}));
    // Shifting the copy moves the hole.
    EXPECT_TRUE(annulus_membership(square, inner, {0.2, 0.0}, {-0.2, 0.0}));
    EXPECT_FALSE(annulus_membership(square, inner, {0.2, 0.0}, {0.2, 0.0}));
}

TEST(AnnulusMembership, KeepsBothBoundariesInsideTheRing) {
    Body2 square = make_centered_square();
    Body2 inner = scaled_copy(square, 0.5);
    Vec2 y{0.0, 0.0};
    EXPECT_TRUE(annulus_membership(square, inner, y, {0.5, 0.0}));
    EXPECT_TRUE(annulus_membership(square, inner, y, {0.25, 0.0}));
    EXPECT_TRUE(annulus_membership(square, inner, y, {0.25 - 1e-13, 0.1}));
    EXPECT_FALSE(annulus_membership(square, inner, y, {0.25 - 1e-3, 0.1}));
    EXPECT_FALSE(annulus_membership(square, inner, y, {0.5 + 1e-3, 0.0}));
}

TEST(AnnulusMembership, WorksOnPolytopes) {
    Polytope3 cube = make_centered_cube();
    Polytope3 inner = scaled_copy(cube, 0.5);
    Vec3 y{0.0, 0.0, 0.0};
    EXPECT_TRUE(annulus_membership(cube, inner, y, {0.4, 0.0, 0.0}));
    EXPECT_TRUE(annulus_membership(cube, inner, y, {0.25, 0.0, 0.0}));
    EXPECT_TRUE(annulus_membership(cube, inner, y, {0.5, 0.5, 0.5}));
    EXPECT_FALSE(annulus_membership(cube, inner, y, {0.0, 0.0, 0.0}));
    EXPECT_FALSE(annulus_membership(cube, inner, y, {0.6, 0.0, 0.0}));
    EXPECT_TRUE(annulus_membership(cube, inner, {0.1, 0.1, 0.1}, {-0.2, -0.2, -0.2}));
}

TEST(VerifyCovering, FullWidthSlabIsCoveredButFailsTheMarginAudit) {
    Body2 square = make_centered_square();
    Body2 inner = scaled_copy(square, 0.01);
    std::vector<Plank2> planks{{{0.0, 1.0}, -0.5, 0.5}};
    VerifyReport2 rep = verify_covering(square, inner, {0.0, 0.0}, planks);
    EXPECT_EQ(rep.samples, 100000u);
    EXPECT_TRUE(rep.uncovered.empty());
    EXPECT_EQ(rep.total_width, 1.0);
    EXPECT_EQ(rep.margin, 0.0);
    EXPECT_EQ(rep.verdict, Verdict::AuditFailed);
    const AuditCheck* margin = find_check(rep.audits, "margin-positive");
    ASSERT_NE(margin, nullptr);
    EXPECT_FALSE(margin->passed);
    const AuditCheck* widths = find_check(rep.audits, "plank-widths-nonnegative");
    ASSERT_NE(widths, nullptr);
    EXPECT_TRUE(widths->passed);
}

TEST(VerifyCovering, CertifiesAConstructedTriangleCover) {
    Body2 tri = make_equilateral_triangle();
    CoverResult2 res = spiky_annulus_cover(tri, 0.5);
    VerifyReport2 rep = verify_cover_result(tri, res);
    EXPECT_EQ(rep.verdict, Verdict::CertifiedBySampling);
    EXPECT_TRUE(rep.uncovered.empty());
    EXPECT_GE(rep.samples, 99000u);
    EXPECT_NEAR(rep.margin, res.margin, 1e-12);
    EXPECT_TRUE(all_passed(rep.audits));
}

TEST(VerifyCovering, RefutesWhenAnyPlankIsRemoved) {
    Body2 tri = make_equilateral_triangle();
    CoverResult2 res = spiky_annulus_cover(tri, 0.5);
    Body2 inner = scaled_copy(tri, 0.5);
    ASSERT_EQ(res.planks.size(), 3u);
    for (std::size_t drop = 0; drop < res.planks.size(); ++drop) {
        std::vector<Plank2> rest;
        for (std::size_t i = 0; i < res.planks.size(); ++i) {
            if (i != drop) rest.push_back(res.planks[i]);
        }
        VerifyReport2 rep = verify_covering(tri, inner, res.y, rest);
        EXPECT_EQ(rep.verdict, Verdict::Refuted);
        ASSERT_FALSE(rep.uncovered.empty());
        EXPECT_LE(rep.uncovered.size(), 100u);
        EXPECT_TRUE(std::is_sorted(rep.uncovered.begin(), rep.uncovered.end(),
                                   [](Vec2 a, Vec2 b) { return lex_less(a, b); }));
        for (Vec2 p : rep.uncovered) {
            EXPECT_TRUE(annulus_membership(tri, inner, res.y, p));
            EXPECT_FALSE(in_some_plank(rest, p));
        }
    }
}

TEST(VerifyCovering, AddingAPlankNeverFlipsCertifiedToRefuted) {
    Body2 tri = make_equilateral_triangle();
    CoverResult2 res = spiky_annulus_cover(tri, 0.5);
    Body2 inner = scaled_copy(tri, 0.5);
    VerifyReport2 base = verify_covering(tri, inner, res.y, res.planks);
    EXPECT_EQ(base.verdict, Verdict::CertifiedBySampling);

    std::vector<Plank2> extra = res.planks;
    extra.push_back({unit({0.3, 0.7}), -1.0, -0.999});
    VerifyReport2 more = verify_covering(tri, inner, res.y, extra);
    EXPECT_NE(more.verdict, Verdict::Refuted);
    EXPECT_TRUE(more.uncovered.empty());
    EXPECT_EQ(more.samples, base.samples);
}

TEST(VerifyCovering, IsDeterministicForFixedSeedAndSensitiveToIt) {
    Body2 tri = make_scalene_triangle();
    CoverResult2 res = spiky_annulus_cover(tri, 0.3);
    Body2 inner = scaled_copy(tri, 0.3);

    SamplePlan plan;
    plan.seed = 42;
    VerifyReport2 a = verify_covering(tri, inner, res.y, res.planks, plan);
    VerifyReport2 b = verify_covering(tri, inner, res.y, res.planks, plan);
    expect_reports_equal(a, b);
    EXPECT_EQ(a.verdict, Verdict::CertifiedBySampling);

    // A different seed probes different points but reaches the same verdict.
    plan.seed = 43;
    VerifyReport2 c = verify_covering(tri, inner, res.y, res.planks, plan);
    EXPECT_EQ(c.verdict, Verdict::CertifiedBySampling);

    // Determinism also holds for refutations, uncovered points included.
    std::vector<Plank2> missing(res.planks.begin(), res.planks.end() - 1);
    plan.seed = 42;
    VerifyReport2 r1 = verify_covering(tri, inner, res.y, missing, plan);
    VerifyReport2 r2 = verify_covering(tri, inner, res.y, missing, plan);
    EXPECT_EQ(r1.verdict, Verdict::Refuted);
    expect_reports_equal(r1, r2);
}

TEST(VerifyCovering, RejectsDegenerateSamplePlans) {
    Body2 square = make_centered_square();
    Body2 inner = scaled_copy(square, 0.5);
    std::vector<Plank2> planks{{{0.0, 1.0}, -0.5, 0.5}};
    SamplePlan plan;
    plan.interior_samples = 0;
    EXPECT_THROW(verify_covering(square, inner, {0, 0}, planks, plan), InvalidBody);
    plan = SamplePlan{};
    plan.boundary_samples = -1;
    EXPECT_THROW(verify_covering(square, inner, {0, 0}, planks, plan), InvalidBody);
    plan = SamplePlan{};
    plan.offsets = {0.0, -1e-6};
    EXPECT_THROW(verify_covering(square, inner, {0, 0}, planks, plan), InvalidBody);
    plan = SamplePlan{};
    plan.offsets.clear();
    EXPECT_THROW(verify_covering(square, inner, {0, 0}, planks, plan), InvalidBody);
}

TEST(VerifyCovering, CertifiesPyramidCoversWithBothStrategies) {
    Polytope3 pyramid = make_square_pyramid();
    for (CoverStrategy strategy : {CoverStrategy::BoundaryWalk3D, CoverStrategy::Polyhedral}) {
        CoverResult3 res = spiky_annulus_cover(pyramid, 0.5, strategy);
        VerifyReport3 rep = verify_cover_result(pyramid, res);
        EXPECT_EQ(rep.verdict, Verdict::CertifiedBySampling) << to_string(strategy);
        EXPECT_TRUE(rep.uncovered.empty());
        EXPECT_GE(rep.samples, 99000u);
        EXPECT_NEAR(rep.margin, res.margin, 1e-12);
        EXPECT_TRUE(all_passed(rep.audits));
    }
}

TEST(VerifyCovering, RefutesPyramidCoverWithAPlankRemoved) {
    Polytope3 pyramid = make_square_pyramid();
    CoverResult3 res = spiky_annulus_cover(pyramid, 0.5);
    Polytope3 inner = scaled_copy(pyramid, 0.5);
    ASSERT_GE(res.planks.size(), 2u);
    std::vector<Plank3> rest(res.planks.begin() + 1, res.planks.end());
    VerifyReport3 rep = verify_covering(pyramid, inner, res.y, rest);
    EXPECT_EQ(rep.verdict, Verdict::Refuted);
    ASSERT_FALSE(rep.uncovered.empty());
    EXPECT_LE(rep.uncovered.size(), 100u);
    EXPECT_TRUE(std::is_sorted(rep.uncovered.begin(), rep.uncovered.end(),
                               [](Vec3 a, Vec3 b) { return lex_less(a, b); }));
    for (Vec3 p : rep.uncovered) {
        EXPECT_TRUE(annulus_membership(pyramid, inner, res.y, p));
        EXPECT_FALSE(in_some_plank(rest, p));
    }
}

TEST(VerifyCovering, IsDeterministicOnPolytopes) {
    Polytope3 pyramid = make_square_pyramid();
    CoverResult3 res = spiky_annulus_cover(pyramid, 0.7);
    SamplePlan plan;
    plan.interior_samples = 5000;
    plan.boundary_samples = 1500;
    VerifyReport3 a = verify_cover_result(pyramid, res, plan);
    VerifyReport3 b = verify_cover_result(pyramid, res, plan);
    expect_reports_equal(a, b);
    EXPECT_EQ(a.verdict, Verdict::CertifiedBySampling);
}

TEST(AuditTrace, PassesOnConstructedCovers) {
    Body2 tri = make_equilateral_triangle();
    CoverResult2 res2 = spiky_annulus_cover(tri, 0.5);
    std::vector<AuditCheck> audits2 = audit_trace(res2);
    EXPECT_TRUE(all_passed(audits2));
    EXPECT_NE(find_check(audits2, "gap-below-half-height"), nullptr);
    EXPECT_NE(find_check(audits2, "stored-budget-identity"), nullptr);

    Polytope3 pyramid = make_square_pyramid();
    CoverResult3 walk = spiky_annulus_cover(pyramid, 0.5, CoverStrategy::BoundaryWalk3D);
    std::vector<AuditCheck> audits_walk = audit_trace(walk);
    EXPECT_TRUE(all_passed(audits_walk));
    EXPECT_NE(find_check(audits_walk, "turning-angle-total"), nullptr);
    EXPECT_NE(find_check(audits_walk, "plank-count-bound"), nullptr);
    EXPECT_NE(find_check(audits_walk, "section-width-root-bound"), nullptr);

    CoverResult3 poly = spiky_annulus_cover(pyramid, 0.5, CoverStrategy::Polyhedral);
    std::vector<AuditCheck> audits_poly = audit_trace(poly);
    EXPECT_TRUE(all_passed(audits_poly));
    EXPECT_NE(find_check(audits_poly, "gap-below-facet-budget"), nullptr);
}

TEST(AuditTrace, FlagsForgedTurningAngles) {
    Polytope3 pyramid = make_square_pyramid();
    CoverResult3 res = spiky_annulus_cover(pyramid, 0.5, CoverStrategy::BoundaryWalk3D);
    ASSERT_TRUE(res.section.walk.has_value());
    ASSERT_FALSE(res.section.walk->steps.empty());
    res.section.walk->steps[0].alpha = 3.0 * 3.14159265358979323846 / 2.0;
    std::vector<AuditCheck> audits = audit_trace(res);
    const AuditCheck* range = find_check(audits, "turn-angles-in-range");
    ASSERT_NE(range, nullptr);
    EXPECT_FALSE(range->passed);
    const AuditCheck* total = find_check(audits, "turning-angle-total");
    ASSERT_NE(total, nullptr);
    EXPECT_FALSE(total->passed);
}

TEST(AuditTrace, FlagsTamperedBudgets) {
    Body2 tri = make_equilateral_triangle();
    CoverResult2 res = spiky_annulus_cover(tri, 0.5);

    CoverResult2 bad_margin = res;
    bad_margin.margin += 1e-3;
    const AuditCheck* identity = nullptr;
    std::vector<AuditCheck> audits = audit_trace(bad_margin);
    identity = find_check(audits, "stored-budget-identity");
    ASSERT_NE(identity, nullptr);
    EXPECT_FALSE(identity->passed);

    CoverResult2 bad_gap = res;
    bad_gap.params.delta_t = bad_gap.params.t;
    audits = audit_trace(bad_gap);
    const AuditCheck* gap = find_check(audits, "gap-below-half-height");
    ASSERT_NE(gap, nullptr);
    EXPECT_FALSE(gap->passed);

    CoverResult2 bad_kappa = res;
    bad_kappa.params.kappa = 0.0;
    audits = audit_trace(bad_kappa);
    const AuditCheck* kappa = find_check(audits, "inflation-positive");
    ASSERT_NE(kappa, nullptr);
    EXPECT_FALSE(kappa->passed);
}

TEST(AuditTrace, FlagsAMissingWalkTrace) {
    Polytope3 pyramid = make_square_pyramid();
    CoverResult3 res = spiky_annulus_cover(pyramid, 0.5, CoverStrategy::BoundaryWalk3D);
    res.section.walk.reset();
    std::vector<AuditCheck> audits = audit_trace(res);
    const AuditCheck* present = find_check(audits, "trace-present");
    ASSERT_NE(present, nullptr);
    EXPECT_FALSE(present->passed);
}

TEST(AuditTrace, TamperedTraceFailsFullAdjudication) {
    Body2 tri = make_equilateral_triangle();
    CoverResult2 res = spiky_annulus_cover(tri, 0.5);
    res.margin += 1e-3;
    VerifyReport2 rep = verify_cover_result(tri, res);
    EXPECT_TRUE(rep.uncovered.empty());
    EXPECT_EQ(rep.verdict, Verdict::AuditFailed);
}

TEST(VerdictNames, AreStable) {
    EXPECT_EQ(to_string(Verdict::CertifiedBySampling), "certified-by-sampling");
    EXPECT_EQ(to_string(Verdict::Refuted), "refuted");
    EXPECT_EQ(to_string(Verdict::AuditFailed), "audit-failed");
}

}  // namespace
}  // namespace plank
