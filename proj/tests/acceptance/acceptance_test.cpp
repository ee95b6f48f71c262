// Acceptance gate: seven end-to-end criteria, each printed as one PASS/FAIL
// line. Run with no arguments for the full gate or `--only N` for a single
// criterion; the exit code is the number of failed criteria. Tolerances and
// runtime budgets are pinned next to each criterion.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "io.hpp"
#include "json.hpp"
#include "plank/body2.hpp"
#include "plank/boundary_walk.hpp"
#include "plank/cover.hpp"
#include "plank/polytope3.hpp"
#include "plank/shapes.hpp"
#include "plank/spiky.hpp"
#include "plank/verify.hpp"
#include "support/oracles.hpp"
#include "support/random_bodies.hpp"
#include "support/rng.hpp"
#include "support/ww_oracle.hpp"

namespace {

using namespace plank;
using plank::testing::acute_split_vertex_exists;
using plank::testing::points_width_sweep;
using plank::testing::polygon_width_sweep;
using plank::testing::random_convex_body;
using plank::testing::random_convex_polygon;
using plank::testing::uniform;
using plank::testing::uniform_int;

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using Notes = std::vector<std::string>;

constexpr double kPi = 3.14159265358979323846;

// Pinned tolerances.
constexpr double kWidthAgreementTol = 1e-9;   // calipers vs. sweep oracle
constexpr double kStepAuditTol = 1e-9;        // per-step walk inequalities
constexpr double kCoverageTol = 1e-12;        // plank membership of samples
constexpr double kMonotoneSlop = 1e-12;       // nonincreasing-sequence slack
constexpr double kSweepSlack = 1e-2;          // 3D Fibonacci sweep resolution
constexpr double kGapDecayFactor = 0.1;       // required gap-ratio shrinkage
constexpr std::size_t kMinRecordedSamples = 99000;  // of the 1e5 nominal plan

// Pinned runtime budgets, enforced inside each criterion.
constexpr double kWidthBudgetSec = 10.0;
constexpr double kWalkBudgetSec = 30.0;
constexpr double kPlanarCaseBudgetSec = 5.0;
constexpr double kSpatialStrategyBudgetSec = 20.0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename... Args>
std::string cat(Args&&... args) {
    std::ostringstream out;
    out.precision(17);
    (out << ... << args);
    return out.str();
}

bool check(bool condition, Notes& notes, const std::string& message) {
    if (!condition) notes.push_back(message);
    return condition;
}

bool within_budget(Clock::time_point start, double budget, Notes& notes, const std::string& what) {
    double elapsed = seconds_since(start);
    return check(elapsed < budget, notes,
                 cat(what, " took ", elapsed, " s, budget ", budget, " s"));
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "plankforge_acceptance";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    std::string cmd = cat(PLANKFORGE_CLI_PATH, " ", args, " > /dev/null 2>&1");
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

double shoelace_area(const std::vector<Vec2>& vs) {
    double twice = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        twice += cross(vs[i], vs[(i + 1) % vs.size()]);
    }
    return 0.5 * twice;
}

// --- Criterion 1: calipers width vs. dense angular sweep on random polygons.

bool criterion_width_oracle(Notes& notes) {
    auto start = Clock::now();
    std::mt19937_64 rng(0xACCE5501ull);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        int n = uniform_int(rng, 5, 50);
        std::vector<Vec2> vs = random_convex_polygon(rng, n, 2.0);
        for (Vec2& v : vs) v = v - Vec2{1.0, 1.0};  // into [-1, 1]^2
        Body2 body = Body2::from_polygon(vs);
        double fast = minimal_width(body).value;
        double slow = polygon_width_sweep(body.vertices(), 10000);
        double err = std::abs(fast - slow);
        worst = std::max(worst, err);
        ok &= check(err <= kWidthAgreementTol, notes,
                    cat("polygon ", i, " (", body.vertices().size(), " vertices): calipers ",
                        fast, " vs sweep ", slow, ", |diff| ", err));
    }
    ok &= within_budget(start, kWidthBudgetSec, notes,
                        cat("200 polygons (worst |diff| ", worst, ")"));
    return ok;
}

// --- Criterion 2: boundary-walk plank count, coverage, and per-step audit.

bool walk_case(const Body2& body, double delta, const std::string& label, std::uint64_t seed,
               Notes& notes) {
    bool ok = true;
    auto [planks, walk] = boundary_walk_cover(body, delta);

    double rho = body.perimeter();
    double cap = std::sqrt(2.0 * kPi * rho / delta);
    ok &= check(static_cast<double>(planks.size()) < cap, notes,
                cat(label, ": ", planks.size(), " planks, strict bound ", cap));

    double min_slack = std::numeric_limits<double>::infinity();
    for (const WalkStep& step : walk.steps) {
        ok &= check(step.alpha > 0.0 && step.alpha <= kPi + kStepAuditTol, notes,
                    cat(label, ": step angle ", step.alpha, " outside (0, pi]"));
        double need = delta / std::sin(std::min(step.alpha, kPi));
        min_slack = std::min(min_slack, step.arc_length - need);
    }
    ok &= check(min_slack >= -kStepAuditTol, notes,
                cat(label, ": worst step arc slack ", min_slack));

    // 1e4 random points at depth <= delta behind the boundary; every one that
    // lands inside the body is within delta of the complement and must be in
    // some walk plank.
    std::mt19937_64 rng(seed);
    double perimeter = body.perimeter();
    int kept = 0;
    long guard = 0;
    while (kept < 10000 && guard < 200000) {
        ++guard;
        BoundaryPoint bp = body.boundary_at(uniform(rng, 0.0, perimeter));
        double depth = uniform(rng, 0.0, delta);
        Vec2 p = bp.point - depth * body.pieces()[bp.piece].normal_at(bp.local);
        if (!body.contains(p, kCoverageTol)) continue;
        ++kept;
        bool covered = false;
        for (const Plank2& plank : planks) covered = covered || plank.contains(p, kCoverageTol);
        if (!covered) {
            ok = check(false, notes,
                       cat(label, ": uncovered boundary-offset sample (", p.x, ", ", p.y, ")"));
        }
    }
    ok &= check(kept == 10000, notes, cat(label, ": only ", kept, " of 10000 samples landed"));
    return ok;
}

bool criterion_walk(Notes& notes) {
    auto start = Clock::now();
    bool ok = true;
    std::vector<std::pair<std::string, Body2>> bodies;
    bodies.emplace_back("unit square", make_square(1.0));
    bodies.emplace_back("disc r=1", make_disc(1.0));
    bodies.emplace_back("reuleaux w=1", make_reuleaux_triangle(1.0));
    std::mt19937_64 rng(0xACCE5502ull);
    for (int i = 0; i < 50; ++i) {
        bodies.emplace_back(cat("random polygon ", i), random_convex_body(rng, uniform_int(rng, 5, 50), 2.0));
    }
    std::uint64_t seed = 1;
    for (const auto& [label, body] : bodies) {
        double w = minimal_width(body).value;
        for (double factor : {0.02, 0.05, 0.1}) {
            ok &= walk_case(body, factor * w, cat(label, ", delta=", factor, "*w"), seed++, notes);
        }
    }
    ok &= within_budget(start, kWalkBudgetSec, notes, cat(bodies.size(), " bodies x 3 depths"));
    return ok;
}

// --- Criterion 3: plank covers of planar annuli, end to end through the CLI.

// Probe points whose maximum signed distance to the outer boundary equals the
// maximum over the whole inner boundary: piece endpoints, plus arc points
// extremal against each outer edge normal and each outer arc center.
std::vector<Vec2> interior_probe_points(const Body2& inner, const Body2& outer) {
    std::vector<Vec2> pts;
    for (const Piece& pc : inner.pieces()) {
        pts.push_back(pc.from);
        if (pc.kind != PieceKind::Arc) continue;
        auto add_extreme = [&](double theta) {
            double turns = std::floor((theta - pc.ang0) / (2.0 * kPi));
            double lifted = theta - 2.0 * kPi * turns;  // in [ang0, ang0 + 2*pi)
            if (lifted <= pc.ang1 + 1e-12) {
                pts.push_back(pc.center + pc.radius * dir_from_angle(lifted));
            }
        };
        add_extreme(0.5 * (pc.ang0 + pc.ang1));
        for (const Piece& oc : outer.pieces()) {
            if (oc.kind == PieceKind::Segment) {
                add_extreme(angle_of(oc.normal_at(0.0)));
            } else if (norm(pc.center - oc.center) > 1e-15) {
                add_extreme(angle_of(pc.center - oc.center));
            }
        }
    }
    return pts;
}

bool planar_case(const Body2& body, const fs::path& body_path, double eps, const fs::path& dir,
                 const std::string& label, Notes& notes) {
    auto start = Clock::now();
    bool ok = true;
    fs::path cover_path = dir / cat(label, "_cover.json");
    fs::path report_path = dir / cat(label, "_report.json");

    int rc = run_cli(cat("cover ", body_path.string(), " --eps ", eps, " -o ", cover_path.string()));
    if (!check(rc == 0, notes, cat(label, ": cover exited ", rc))) return false;

    auto parsed = io::load_cover(cover_path.string());
    const auto& result = std::get<CoverResult2>(parsed);
    ok &= check(result.margin > 0.0, notes, cat(label, ": margin ", result.margin, " not positive"));

    rc = run_cli(cat("verify ", body_path.string(), " ", cover_path.string(), " -o ",
                     report_path.string()));
    ok &= check(rc == 0, notes, cat(label, ": verify exited ", rc));
    auto report = nlohmann::json::parse(io::read_text_file(report_path.string()));
    ok &= check(report.at("verdict") == "certified-by-sampling", notes,
                cat(label, ": verdict ", report.at("verdict").get<std::string>()));
    ok &= check(report.at("samples").get<std::uint64_t>() >= kMinRecordedSamples, notes,
                cat(label, ": only ", report.at("samples").get<std::uint64_t>(), " samples"));

    Body2 inner = transformed(body, Similarity2{0.0, eps, result.y});
    double max_signed = -std::numeric_limits<double>::infinity();
    for (Vec2 p : interior_probe_points(inner, body)) {
        max_signed = std::max(max_signed, body.signed_boundary_distance(p));
    }
    ok &= check(max_signed < 0.0, notes,
                cat(label, ": scaled copy touches the boundary, max signed distance ", max_signed));

    ok &= within_budget(start, kPlanarCaseBudgetSec, notes, label);
    return ok;
}

bool criterion_planar_cover(Notes& notes) {
    fs::path dir = scratch_dir();
    bool ok = true;
    std::vector<std::pair<std::string, Body2>> bodies;
    bodies.emplace_back("equilateral", make_equilateral_triangle(1.0));
    bodies.emplace_back("reuleaux", make_reuleaux_triangle(1.0));
    for (const auto& [name, body] : bodies) {
        fs::path body_path = dir / cat(name, ".json");
        io::write_text_file(body_path.string(), io::to_json(body));
        for (double eps : {0.1, 0.5, 0.9}) {
            ok &= planar_case(body, body_path, eps, dir, cat(name, "_eps", eps), notes);
        }
    }
    return ok;
}

// --- Criterion 4: pyramid covers with both strategies, fully adjudicated.

const AuditCheck* find_audit(const std::vector<AuditCheck>& audits, const std::string& name) {
    for (const AuditCheck& audit : audits) {
        if (audit.name == name) return &audit;
    }
    return nullptr;
}

bool criterion_spatial_cover(Notes& notes) {
    bool ok = true;
    Polytope3 pyramid = make_square_pyramid();

    double calipers = minimal_width(pyramid).value;
    double sweep = points_width_sweep(pyramid.vertices());
    ok &= check(std::abs(calipers - 0.5) <= kWidthAgreementTol, notes,
                cat("pyramid width ", calipers, " != 0.5"));
    ok &= check(sweep >= 0.5 - kWidthAgreementTol && sweep <= 0.5 + kSweepSlack, notes,
                cat("pyramid sweep width ", sweep, " inconsistent with 0.5"));

    for (CoverStrategy strategy : {CoverStrategy::Polyhedral, CoverStrategy::BoundaryWalk3D}) {
        auto start = Clock::now();
        std::string label = std::string(to_string(strategy));
        CoverResult3 result = spiky_annulus_cover(pyramid, 0.5, strategy);
        ok &= check(result.margin > 0.0, notes,
                    cat(label, ": margin ", result.margin, " not positive"));

        VerifyReport3 report = verify_cover_result(pyramid, result);
        ok &= check(report.verdict == Verdict::CertifiedBySampling, notes,
                    cat(label, ": verdict ", to_string(report.verdict)));
        ok &= check(report.samples >= kMinRecordedSamples, notes,
                    cat(label, ": only ", report.samples, " samples"));

        const AuditCheck* section = find_audit(report.audits, "section-width-below-height");
        ok &= check(section != nullptr, notes, cat(label, ": section width audit missing"));
        if (section != nullptr) {
            ok &= check(section->passed && section->lhs < section->rhs, notes,
                        cat(label, ": section widths ", section->lhs, " vs height ", section->rhs));
            ok &= check(std::abs(section->rhs - result.params.t) <= 1e-15, notes,
                        cat(label, ": audit height ", section->rhs, " != t ", result.params.t));
        }
        ok &= within_budget(start, kSpatialStrategyBudgetSec, notes, label);
    }
    return ok;
}

// --- Criterion 5: the section gap shrinks superlinearly toward the apex.

// Same witness policy as the cover construction: among the spiky minimal-width
// directions, the one whose cone points away from the supporting line the
// steepest, so the standardized cone is well conditioned. A constant-width
// body has a whole fan of spiky directions per vertex, and the shallow ones
// (support point near a fan edge) standardize to nearly degenerate cones.
std::optional<SpikeWitness2> deepest_witness(const Body2& body) {
    double wmin = minimal_width(body).value;
    double slack = 1e-9 * std::max(1.0, wmin);
    std::optional<SpikeWitness2> best;
    for (Vec2 c : width_candidate_directions(body)) {
        if (body.width(c) > wmin + slack) continue;
        for (Vec2 u : {c, Vec2{-c.x, -c.y}}) {
            auto w = is_spiky(body, u);
            if (!w) continue;
            if (!best || w->aperture < best->aperture - 1e-12 ||
                (w->aperture < best->aperture + 1e-12 && lex_less(u, best->direction))) {
                best = *w;
            }
        }
    }
    return best;
}

bool criterion_gap_decay(Notes& notes) {
    bool ok = true;
    Body2 reuleaux = make_reuleaux_triangle(1.0);
    auto witness = deepest_witness(reuleaux);
    if (!check(witness.has_value(), notes, "reuleaux triangle reported not spiky")) return false;

    Standardization2 st = standardize(reuleaux, witness->direction);
    Body2 inner = transformed(st.body, Similarity2{0.0, 0.9, Vec2{}});

    std::vector<double> gaps, ratios;
    for (int k = 2; k <= 10; ++k) {
        double t = std::ldexp(1.0, -k);
        double gap = section_gap(st.witness.cone, inner, t);
        ok &= check(gap >= 0.0, notes, cat("negative gap ", gap, " at t=2^-", k));
        gaps.push_back(gap);
        ratios.push_back(gap / t);
    }
    for (std::size_t i = 1; i < gaps.size(); ++i) {
        ok &= check(gaps[i] <= gaps[i - 1] + kMonotoneSlop, notes,
                    cat("gap increased: ", gaps[i - 1], " -> ", gaps[i], " at step ", i));
        ok &= check(ratios[i] <= ratios[i - 1] + kMonotoneSlop, notes,
                    cat("gap/t increased: ", ratios[i - 1], " -> ", ratios[i], " at step ", i));
    }
    ok &= check(ratios.back() < kGapDecayFactor * ratios.front(), notes,
                cat("gap/t at 2^-10 is ", ratios.back(), ", needs < ", kGapDecayFactor, " * ",
                    ratios.front()));
    return ok;
}

// --- Criterion 6: spikiness classifier vs. the acute-split-vertex test.

bool classification_matches(const Body2& body, const std::string& label, Notes& notes) {
    bool oracle = acute_split_vertex_exists(body.vertices());
    bool lib = find_spiky_minimal_width_direction(body).has_value();
    return check(lib == oracle, notes,
                 cat(label, ": classifier says ", lib ? "spiky" : "not spiky", ", oracle says ",
                     oracle ? "spiky" : "not spiky"));
}

bool criterion_classification(Notes& notes) {
    bool ok = true;
    std::mt19937_64 rng(0xACCE5506ull);

    for (int i = 0; i < 50; ++i) {
        std::vector<Vec2> tri(3);
        double area = 0.0;
        do {
            for (Vec2& v : tri) v = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
            area = shoelace_area(tri);
        } while (std::abs(area) < 0.05);
        if (area < 0.0) std::swap(tri[1], tri[2]);
        ok &= classification_matches(Body2::from_polygon(tri), cat("triangle ", i), notes);
    }
    for (int i = 0; i < 50; ++i) {
        Body2 quad = random_convex_body(rng, 4, 2.0);
        while (quad.vertices().size() != 4 || shoelace_area(quad.vertices()) < 0.05) {
            quad = random_convex_body(rng, 4, 2.0);
        }
        ok &= classification_matches(quad, cat("quadrilateral ", i), notes);
    }

    ok &= check(!find_spiky_minimal_width_direction(make_square(1.0)).has_value(), notes,
                "unit square misclassified as spiky");
    ok &= classification_matches(make_square(1.0), "unit square", notes);
    ok &= check(find_spiky_minimal_width_direction(make_equilateral_triangle(1.0)).has_value(),
                notes, "equilateral triangle reported not spiky");
    ok &= check(find_spiky_minimal_width_direction(make_reuleaux_triangle(1.0)).has_value(), notes,
                "reuleaux triangle reported not spiky");
    ok &= check(find_spiky_minimal_width_direction(make_square_pyramid()).has_value(), notes,
                "square pyramid reported not spiky");
    return ok;
}

// --- Criterion 7: byte-identical reruns; deleting any plank refutes.

bool criterion_determinism(Notes& notes) {
    fs::path dir = scratch_dir();
    bool ok = true;

    fs::path body_path = dir / "det_triangle.json";
    io::write_text_file(body_path.string(), io::to_json(make_equilateral_triangle(1.0)));

    fs::path cover_a = dir / "det_cover_a.json";
    fs::path cover_b = dir / "det_cover_b.json";
    for (const fs::path& out : {cover_a, cover_b}) {
        int rc = run_cli(cat("cover ", body_path.string(), " --eps 0.5 --seed 11 -o ", out.string()));
        if (!check(rc == 0, notes, cat("cover exited ", rc))) return false;
    }
    std::string cover_text = io::read_text_file(cover_a.string());
    ok &= check(cover_text == io::read_text_file(cover_b.string()), notes,
                "identical cover runs produced different bytes");

    fs::path report_a = dir / "det_report_a.json";
    fs::path report_b = dir / "det_report_b.json";
    for (const fs::path& out : {report_a, report_b}) {
        int rc = run_cli(cat("verify ", body_path.string(), " ", cover_a.string(),
                             " --seed 11 -o ", out.string()));
        ok &= check(rc == 0, notes, cat("verify exited ", rc));
    }
    ok &= check(io::read_text_file(report_a.string()) == io::read_text_file(report_b.string()),
                notes, "identical verify runs produced different bytes");

    auto cover_doc = nlohmann::json::parse(cover_text);
    std::size_t plank_count = cover_doc.at("planks").size();
    ok &= check(plank_count >= 2, notes, cat("expected several planks, got ", plank_count));
    for (std::size_t i = 0; i < plank_count; ++i) {
        nlohmann::json mutated = cover_doc;
        mutated.at("planks").erase(i);
        fs::path mutated_path = dir / cat("det_mutated_", i, ".json");
        io::write_text_file(mutated_path.string(), mutated.dump(2) + "\n");
        fs::path report_path = dir / cat("det_mutated_report_", i, ".json");
        int rc = run_cli(cat("verify ", body_path.string(), " ", mutated_path.string(), " -o ",
                             report_path.string()));
        ok &= check(rc == 1, notes, cat("verify of cover without plank ", i, " exited ", rc));
        auto report = nlohmann::json::parse(io::read_text_file(report_path.string()));
        ok &= check(report.at("verdict") == "refuted", notes,
                    cat("cover without plank ", i, ": verdict ",
                        report.at("verdict").get<std::string>()));
    }
    return ok;
}

struct Criterion {
    const char* name;
    bool (*run)(Notes&);
};

constexpr Criterion kCriteria[] = {
    {"minimal-width oracle agreement", criterion_width_oracle},
    {"boundary-walk bound and coverage", criterion_walk},
    {"2d cover end-to-end", criterion_planar_cover},
    {"3d cover end-to-end", criterion_spatial_cover},
    {"section-gap decay", criterion_gap_decay},
    {"spikiness classification", criterion_classification},
    {"determinism and mutation", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
            return 64;
        }
    }

    int failures = 0;
    for (int i = 0; i < static_cast<int>(std::size(kCriteria)); ++i) {
        if (only != 0 && only != i + 1) continue;
        Notes notes;
        bool passed = false;
        try {
            passed = kCriteria[i].run(notes);
        } catch (const std::exception& e) {
            notes.push_back(cat("unhandled exception: ", e.what()));
        }
        std::printf("criterion %d (%s): %s\n", i + 1, kCriteria[i].name, passed ? "PASS" : "FAIL");
        for (const std::string& note : notes) std::printf("  - %s\n", note.c_str());
        if (!passed) ++failures;
    }
    return failures;
}
