#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "io.hpp"
#include "plank/error.hpp"
#include "plank/tolerance.hpp"
#include "render.hpp"

namespace {

using namespace plank;

constexpr int kExitCertified = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitAuditFailed = 2;
constexpr int kExitInputError = 3;
constexpr int kExitNotSpiky = 4;

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        io::write_text_file(out_path, content);
    }
}

int apply_tolerance_env() {
    const char* env = std::getenv("PLANKFORGE_TOL");
    if (env == nullptr || *env == '\0') return kExitCertified;
    char* end = nullptr;
    double tol = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol)) {
        std::cerr << "PLANKFORGE_TOL must be a positive number, got '" << env << "'\n";
        return kExitInputError;
    }
    tolerances().geom = tol;
    return kExitCertified;
}

int run_width(const std::string& body_path, const std::string& out_path) {
    io::BodyVariant body = io::load_body(body_path);
    if (const Body2* b = std::get_if<Body2>(&body)) {
        MinimalWidth2 mw = minimal_width(*b);
        emit(out_path, io::width_json(2, mw.value, {mw.direction.x, mw.direction.y}));
    } else {
        const Polytope3& p = std::get<Polytope3>(body);
        MinimalWidth3 mw = minimal_width(p);
        emit(out_path,
             io::width_json(3, mw.value, {mw.direction.x, mw.direction.y, mw.direction.z}));
    }
    return kExitCertified;
}

int run_spiky(const std::string& body_path, const std::string& out_path) {
    io::BodyVariant body = io::load_body(body_path);
    std::string text;
    if (const Body2* b = std::get_if<Body2>(&body)) {
        auto witness = find_spiky_minimal_width_direction(*b);
        text = witness ? io::witness_json(*witness) : "none\n";
    } else {
        auto witness = find_spiky_minimal_width_direction(std::get<Polytope3>(body));
        text = witness ? io::witness_json(*witness) : "none\n";
    }
    emit(out_path, text);
    return kExitCertified;
}

int run_cover(const std::string& body_path, double eps, const std::string& strategy_name,
              const std::string& out_path) {
    std::optional<CoverStrategy> strategy;
    if (!strategy_name.empty()) {
        strategy = parse_cover_strategy(strategy_name);
        if (!strategy) throw IoError("unknown cover strategy '" + strategy_name + "'");
    }
    io::BodyVariant body = io::load_body(body_path);
    if (const Body2* b = std::get_if<Body2>(&body)) {
        emit(out_path, io::to_json(spiky_annulus_cover(*b, eps, strategy)));
    } else {
        emit(out_path, io::to_json(spiky_annulus_cover(std::get<Polytope3>(body), eps, strategy)));
    }
    return kExitCertified;
}

int verdict_exit(Verdict verdict) {
    switch (verdict) {
        case Verdict::CertifiedBySampling: return kExitCertified;
        case Verdict::Refuted: return kExitRefuted;
        case Verdict::AuditFailed: return kExitAuditFailed;
    }
    return kExitAuditFailed;
}

int run_verify(const std::string& body_path, const std::string& cover_path, std::int64_t samples,
               std::uint64_t seed, const std::string& out_path) {
    if (samples < 10) throw IoError("--samples must be at least 10");
    SamplePlan plan;
    plan.interior_samples = static_cast<int>(2 * samples / 5);
    plan.boundary_samples = static_cast<int>(samples / 10);
    plan.seed = seed;

    io::BodyVariant body = io::load_body(body_path);
    io::CoverVariant cover = io::load_cover(cover_path);
    if (const Body2* b = std::get_if<Body2>(&body)) {
        const CoverResult2* res = std::get_if<CoverResult2>(&cover);
        if (res == nullptr) throw IoError("2-dimensional body given a 3-dimensional cover file");
        VerifyReport2 rep = verify_cover_result(*b, *res, plan);
        emit(out_path, io::to_json(rep));
        return verdict_exit(rep.verdict);
    }
    const CoverResult3* res = std::get_if<CoverResult3>(&cover);
    if (res == nullptr) throw IoError("3-dimensional body given a 2-dimensional cover file");
    VerifyReport3 rep = verify_cover_result(std::get<Polytope3>(body), *res, plan);
    emit(out_path, io::to_json(rep));
    return verdict_exit(rep.verdict);
}

int run_render(const std::string& body_path, const std::string& cover_path,
               const std::string& out_path) {
    io::BodyVariant body = io::load_body(body_path);
    const Body2* b = std::get_if<Body2>(&body);
    if (b == nullptr) throw IoError("rendering supports 2-dimensional bodies only");
    std::optional<Body2> inner;
    std::vector<Plank2> planks;
    if (!cover_path.empty()) {
        io::CoverVariant cover = io::load_cover(cover_path);
        const CoverResult2* res = std::get_if<CoverResult2>(&cover);
        if (res == nullptr) throw IoError("rendering supports 2-dimensional covers only");
        inner = transformed(*b, Similarity2{0.0, res->params.eps, res->y});
        planks = res->planks;
    }
    emit(out_path, io::render_svg(*b, inner, planks));
    return kExitCertified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructs and verifies finite plank coverings of spiky annuli"};
    app.require_subcommand(1);

    std::string body_path;
    std::string cover_path;
    std::string out_path;
    std::string strategy;
    double eps = 0.0;
    std::int64_t samples = 100000;
    std::uint64_t seed = 0;

    CLI::App* width = app.add_subcommand("width", "print the minimal width and its direction");
    width->add_option("body", body_path, "body JSON file")->required();
    width->add_option("-o,--output", out_path, "write JSON here instead of stdout");

    CLI::App* spiky = app.add_subcommand("spiky", "print a spike witness or 'none'");
    spiky->add_option("body", body_path, "body JSON file")->required();
    spiky->add_option("-o,--output", out_path, "write output here instead of stdout");

    CLI::App* cover = app.add_subcommand("cover", "cover a spiky annulus with planks");
    cover->add_option("body", body_path, "body JSON file")->required();
    cover->add_option("--eps", eps, "homothety ratio in (0, 1)")->required();
    cover->add_option("--strategy", strategy,
                      "two-plank-2d | boundary-walk-3d | polyhedral (default by dimension)");
    cover->add_option("--seed", seed, "seed reserved for randomized strategies (default 0)");
    cover->add_option("-o,--output", out_path, "write cover JSON here instead of stdout");

    CLI::App* verify = app.add_subcommand("verify", "adjudicate a covering by sampling + audits");
    verify->add_option("body", body_path, "body JSON file")->required();
    verify->add_option("cover", cover_path, "cover JSON file")->required();
    verify->add_option("--samples", samples, "total sample budget (default 100000)");
    verify->add_option("--seed", seed, "sampling seed (default 0)");
    verify->add_option("-o,--output", out_path, "write report JSON here instead of stdout");

    CLI::App* render = app.add_subcommand("render", "draw a 2-dimensional body or covering");
    render->add_option("body", body_path, "body JSON file")->required();
    render->add_option("cover", cover_path, "optional cover JSON file");
    render->add_option("-o,--output", out_path, "write SVG here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    if (int code = apply_tolerance_env(); code != kExitCertified) return code;

    try {
        if (width->parsed()) return run_width(body_path, out_path);
        if (spiky->parsed()) return run_spiky(body_path, out_path);
        if (cover->parsed()) return run_cover(body_path, eps, strategy, out_path);
        if (verify->parsed()) return run_verify(body_path, cover_path, samples, seed, out_path);
        if (render->parsed()) return run_render(body_path, cover_path, out_path);
    } catch (const NotSpiky& e) {
        std::cerr << "not spiky: " << e.what() << "\n";
        return kExitNotSpiky;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitAuditFailed;
    } catch (const IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InvalidBody& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
