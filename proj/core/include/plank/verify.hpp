#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plank/body2.hpp"
#include "plank/cover.hpp"
#include "plank/plank.hpp"
#include "plank/polytope3.hpp"

namespace plank {

/// Deterministic sampling recipe for covering verification. The annulus is
/// probed by quasi-random interior points plus an offset ladder of points
/// pushed inward from both boundaries (the outer body's and the shifted
/// copy's), where uncovered regions would hug.
struct SamplePlan {
    int interior_samples = 40000;
    int boundary_samples = 10000;  ///< per boundary, per ladder offset
    std::vector<double> offsets{0.0, 1e-6, 1e-3};  ///< inward distances, times w(K)
    std::uint64_t seed = 0x5eedULL;
};

enum class Verdict {
    CertifiedBySampling,  ///< every sample covered and all audits passed
    Refuted,              ///< at least one annulus sample escaped the planks
    AuditFailed,          ///< covered, but an arithmetic or budget check failed
};

std::string_view to_string(Verdict verdict);

/// One re-evaluated inequality: `lhs` and `rhs` are the two compared
/// quantities (orientation given by the check's name), `passed` the result.
struct AuditCheck {
    std::string name;
    bool passed = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

template <typename VecT>
struct VerifyReport {
    std::size_t samples = 0;      ///< annulus members actually tested
    std::vector<VecT> uncovered;  ///< lexicographically sorted, capped at 100
    double total_width = 0.0;
    double margin = 0.0;  ///< recomputed minimal width minus total width
    std::vector<AuditCheck> audits;
    Verdict verdict = Verdict::AuditFailed;
};

using VerifyReport2 = VerifyReport<Vec2>;
using VerifyReport3 = VerifyReport<Vec3>;

/// True iff x lies in the annulus body \ int(inner + y), i.e. inside the
/// body (within 1e-12) and not strictly inside the shifted copy.
bool annulus_membership(const Body2& body, const Body2& inner, Vec2 y, Vec2 x);
bool annulus_membership(const Polytope3& body, const Polytope3& inner, Vec3 y, Vec3 x);

/// Samples the annulus per `plan` and tests every member against the planks
/// (membership tolerance 1e-12). Total width and margin are recomputed from
/// scratch; the verdict is Refuted when any sample escapes, AuditFailed when
/// the margin fails to be positive (or a plank has negative width), and
/// CertifiedBySampling otherwise. Deterministic for fixed inputs and seed.
VerifyReport2 verify_covering(const Body2& body, const Body2& inner, Vec2 y,
                              const std::vector<Plank2>& planks, const SamplePlan& plan = {});
VerifyReport3 verify_covering(const Polytope3& body, const Polytope3& inner, Vec3 y,
                              const std::vector<Plank3>& planks, const SamplePlan& plan = {});

/// Re-evaluates every inequality recorded in a covering's trace from the raw
/// numbers (step angles, arc lengths, slice budgets, stored totals), without
/// trusting any flag the construction set.
std::vector<AuditCheck> audit_trace(const CoverResult2& result);
std::vector<AuditCheck> audit_trace(const CoverResult3& result);

/// Full adjudication of a covering result against the body it came from:
/// sampling verification plus the trace audits, merged into one report.
VerifyReport2 verify_cover_result(const Body2& body, const CoverResult2& result,
                                  const SamplePlan& plan = {});
VerifyReport3 verify_cover_result(const Polytope3& body, const CoverResult3& result,
                                  const SamplePlan& plan = {});

}  // namespace plank
