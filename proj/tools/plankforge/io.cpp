#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "plank/error.hpp"

namespace plank::io {
namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Serialization: stable key order, numbers via format_number.

bool is_scalar_array(const ordered_json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v) {
        if (e.is_object() || e.is_array()) return false;
    }
    return true;
}

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void dump(const ordered_json& v, std::string& out, int indent) {
    const std::string pad(2 * static_cast<std::size_t>(indent), ' ');
    const std::string pad_in(2 * static_cast<std::size_t>(indent + 1), ' ');
    switch (v.type()) {
        case ordered_json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                append_escaped(out, it.key());
                out += ": ";
                dump(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            if (is_scalar_array(v)) {
                out += "[";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ", ";
                    dump(v[i], out, indent);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",\n";
                out += pad_in;
                dump(v[i], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case ordered_json::value_t::string: append_escaped(out, v.get<std::string>()); return;
        case ordered_json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; return;
        case ordered_json::value_t::number_float: out += format_number(v.get<double>()); return;
        case ordered_json::value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            return;
        case ordered_json::value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            return;
        default: out += "null"; return;
    }
}

std::string dump_document(const ordered_json& v) {
    std::string out;
    dump(v, out, 0);
    out += "\n";
    return out;
}

ordered_json from_vec(Vec2 v) { return ordered_json::array({v.x, v.y}); }
ordered_json from_vec(Vec3 v) { return ordered_json::array({v.x, v.y, v.z}); }

template <typename PlankT>
ordered_json planks_json(const std::vector<PlankT>& planks) {
    ordered_json arr = ordered_json::array();
    for (const PlankT& p : planks) {
        ordered_json j;
        j["normal"] = from_vec(p.normal);
        j["lo"] = p.lo;
        j["hi"] = p.hi;
        arr.push_back(std::move(j));
    }
    return arr;
}

ordered_json section_json(const SectionRecord& sec) {
    ordered_json j;
    j["slice_width"] = sec.slice_width;
    j["slice_perimeter"] = sec.slice_perimeter;
    j["plank_widths"] = sec.plank_widths;
    j["lifted_widths"] = sec.lifted_widths;
    j["facet_count"] = sec.facet_count;
    j["pre_inflation_total"] = sec.pre_inflation_total;
    if (sec.walk) {
        ordered_json w;
        w["delta"] = sec.walk->delta;
        w["perimeter"] = sec.walk->perimeter;
        ordered_json steps = ordered_json::array();
        for (const WalkStep& s : sec.walk->steps) {
            ordered_json step;
            step["alpha"] = s.alpha;
            step["arc_length"] = s.arc_length;
            steps.push_back(std::move(step));
        }
        w["steps"] = std::move(steps);
        j["walk"] = std::move(w);
    }
    return j;
}

template <typename ResultT>
ordered_json cover_json(const ResultT& res, int dim) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "cover";
    j["dim"] = dim;
    j["strategy"] = std::string(to_string(res.params.strategy));
    j["eps"] = res.params.eps;
    j["w"] = res.width;
    j["total_width"] = res.total_width;
    j["margin"] = res.margin;
    j["y"] = from_vec(res.y);
    j["planks"] = planks_json(res.planks);
    ordered_json trace;
    trace["t"] = res.params.t;
    trace["delta_t"] = res.params.delta_t;
    trace["kappa"] = res.params.kappa;
    trace["section"] = section_json(res.section);
    j["trace"] = std::move(trace);
    return j;
}

template <typename ReportT>
ordered_json report_json(const ReportT& rep, int dim) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "verify-report";
    j["dim"] = dim;
    j["verdict"] = std::string(to_string(rep.verdict));
    j["samples"] = rep.samples;
    j["total_width"] = rep.total_width;
    j["margin"] = rep.margin;
    ordered_json uncovered = ordered_json::array();
    for (const auto& p : rep.uncovered) uncovered.push_back(from_vec(p));
    j["uncovered"] = std::move(uncovered);
    ordered_json audits = ordered_json::array();
    for (const AuditCheck& a : rep.audits) {
        ordered_json check;
        check["name"] = a.name;
        check["passed"] = a.passed;
        check["lhs"] = a.lhs;
        check["rhs"] = a.rhs;
        audits.push_back(std::move(check));
    }
    j["audits"] = std::move(audits);
    return j;
}

// ---------------------------------------------------------------------------
// Parsing.

nlohmann::json parse_document(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("JSON parse failed: ") + e.what());
    }
}

Vec2 to_vec2(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw IoError("expected a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 to_vec3(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw IoError("expected a [x, y, z] triple");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

BodyVariant parse_body_document(const nlohmann::json& j) {
    if (!j.is_object()) throw IoError("body file must hold a JSON object");
    int dim = j.at("dim").get<int>();
    std::string type = j.at("type").get<std::string>();
    if (dim == 2 && type == "polygon") {
        std::vector<Vec2> vertices;
        for (const auto& v : j.at("vertices")) vertices.push_back(to_vec2(v));
        return Body2::from_polygon(std::move(vertices));
    }
    if (dim == 2 && type == "arcgon") {
        std::vector<Piece> pieces;
        for (const auto& pj : j.at("pieces")) {
            Piece p;
            std::string kind = pj.at("kind").get<std::string>();
            if (kind == "seg") {
                p.kind = PieceKind::Segment;
                p.from = to_vec2(pj.at("from"));
                p.to = to_vec2(pj.at("to"));
            } else if (kind == "arc") {
                p.kind = PieceKind::Arc;
                p.center = to_vec2(pj.at("center"));
                p.radius = pj.at("radius").get<double>();
                p.ang0 = pj.at("from_angle").get<double>();
                p.ang1 = pj.at("to_angle").get<double>();
            } else {
                throw IoError("unknown piece kind '" + kind + "'");
            }
            pieces.push_back(p);
        }
        return Body2::from_pieces(std::move(pieces));
    }
    if (dim == 3 && type == "polytope") {
        std::vector<Vec3> vertices;
        for (const auto& v : j.at("vertices")) vertices.push_back(to_vec3(v));
        return Polytope3::from_points(vertices);
    }
    throw IoError("unsupported body: dim=" + std::to_string(dim) + " type='" + type + "'");
}

SectionRecord parse_section(const nlohmann::json& j) {
    SectionRecord sec;
    sec.slice_width = j.at("slice_width").get<double>();
    sec.slice_perimeter = j.at("slice_perimeter").get<double>();
    sec.plank_widths = j.at("plank_widths").get<std::vector<double>>();
    sec.lifted_widths = j.at("lifted_widths").get<std::vector<double>>();
    sec.facet_count = j.at("facet_count").get<int>();
    sec.pre_inflation_total = j.at("pre_inflation_total").get<double>();
    if (j.contains("walk")) {
        WalkRecord walk;
        const auto& w = j.at("walk");
        walk.delta = w.at("delta").get<double>();
        walk.perimeter = w.at("perimeter").get<double>();
        for (const auto& sj : w.at("steps")) {
            WalkStep step;
            step.alpha = sj.at("alpha").get<double>();
            step.arc_length = sj.at("arc_length").get<double>();
            walk.steps.push_back(step);
        }
        sec.walk = std::move(walk);
    }
    return sec;
}

CoverParams parse_params(const nlohmann::json& j) {
    CoverParams params;
    params.eps = j.at("eps").get<double>();
    const std::string strategy_name = j.at("strategy").get<std::string>();
    std::optional<CoverStrategy> strategy = parse_cover_strategy(strategy_name);
    if (!strategy) throw IoError("unknown cover strategy '" + strategy_name + "'");
    params.strategy = *strategy;
    const auto& trace = j.at("trace");
    params.t = trace.at("t").get<double>();
    params.delta_t = trace.at("delta_t").get<double>();
    params.kappa = trace.at("kappa").get<double>();
    return params;
}

template <typename ResultT, typename VecFn>
ResultT parse_cover_result(const nlohmann::json& j, const VecFn& to_vec) {
    ResultT res;
    res.params = parse_params(j);
    res.width = j.at("w").get<double>();
    res.total_width = j.at("total_width").get<double>();
    res.margin = j.at("margin").get<double>();
    res.y = to_vec(j.at("y"));
    for (const auto& pj : j.at("planks")) {
        res.planks.push_back({to_vec(pj.at("normal")), pj.at("lo").get<double>(),
                              pj.at("hi").get<double>()});
    }
    res.section = parse_section(j.at("trace").at("section"));
    return res;
}

CoverVariant parse_cover_document(const nlohmann::json& j) {
    if (!j.is_object()) throw IoError("cover file must hold a JSON object");
    if (j.value("kind", std::string()) != "cover") {
        throw IoError("not a cover file (expected \"kind\": \"cover\")");
    }
    int dim = j.at("dim").get<int>();
    if (dim == 2) return parse_cover_result<CoverResult2>(j, to_vec2);
    if (dim == 3) return parse_cover_result<CoverResult3>(j, to_vec3);
    throw IoError("unsupported cover dimension " + std::to_string(dim));
}

template <typename WitnessT, typename GeneratorFn>
std::string witness_document(const WitnessT& witness, int dim, const GeneratorFn& generators) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "spike-witness";
    j["dim"] = dim;
    j["spiky"] = true;
    j["direction"] = from_vec(witness.direction);
    j["apex"] = from_vec(witness.apex);
    j["aperture"] = witness.aperture;
    j["cone_generators"] = generators();
    return dump_document(j);
}

}  // namespace

std::string format_number(double value) {
    if (!std::isfinite(value)) throw IoError("non-finite number in JSON output");
    // Both zeros print as "0": parsers read "-0" back as integer zero anyway,
    // so folding the sign keeps serialize(parse(text)) == text.
    if (value == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path + "'");
}

BodyVariant parse_body(const std::string& text) {
    nlohmann::json j = parse_document(text);
    try {
        return parse_body_document(j);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad body file: ") + e.what());
    }
}

BodyVariant load_body(const std::string& path) { return parse_body(read_text_file(path)); }

std::string to_json(const Body2& body) {
    ordered_json j;
    j["schema_version"] = 1;
    j["dim"] = 2;
    if (body.is_polygon()) {
        j["type"] = "polygon";
        ordered_json vertices = ordered_json::array();
        for (Vec2 v : body.vertices()) vertices.push_back(from_vec(v));
        j["vertices"] = std::move(vertices);
    } else {
        j["type"] = "arcgon";
        ordered_json pieces = ordered_json::array();
        for (const Piece& p : body.pieces()) {
            ordered_json pj;
            if (p.kind == PieceKind::Segment) {
                pj["kind"] = "seg";
                pj["from"] = from_vec(p.from);
                pj["to"] = from_vec(p.to);
            } else {
                pj["kind"] = "arc";
                pj["center"] = from_vec(p.center);
                pj["radius"] = p.radius;
                pj["from_angle"] = p.ang0;
                pj["to_angle"] = p.ang1;
            }
            pieces.push_back(std::move(pj));
        }
        j["pieces"] = std::move(pieces);
    }
    return dump_document(j);
}

std::string to_json(const Polytope3& poly) {
    ordered_json j;
    j["schema_version"] = 1;
    j["dim"] = 3;
    j["type"] = "polytope";
    ordered_json vertices = ordered_json::array();
    for (Vec3 v : poly.vertices()) vertices.push_back(from_vec(v));
    j["vertices"] = std::move(vertices);
    return dump_document(j);
}

std::string to_json(const CoverResult2& result) { return dump_document(cover_json(result, 2)); }
std::string to_json(const CoverResult3& result) { return dump_document(cover_json(result, 3)); }

CoverVariant parse_cover(const std::string& text) {
    nlohmann::json j = parse_document(text);
    try {
        return parse_cover_document(j);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad cover file: ") + e.what());
    }
}

CoverVariant load_cover(const std::string& path) { return parse_cover(read_text_file(path)); }

std::string to_json(const VerifyReport2& report) { return dump_document(report_json(report, 2)); }
std::string to_json(const VerifyReport3& report) { return dump_document(report_json(report, 3)); }

std::string width_json(int dim, double w, const std::vector<double>& direction) {
    ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "width";
    j["dim"] = dim;
    j["w"] = w;
    j["u_star"] = direction;
    return dump_document(j);
}

std::string witness_json(const SpikeWitness2& witness) {
    return witness_document(witness, 2, [&] {
        ordered_json gens = ordered_json::array();
        gens.push_back(from_vec(witness.cone.forward));
        gens.push_back(from_vec(witness.cone.backward));
        return gens;
    });
}

std::string witness_json(const SpikeWitness3& witness) {
    return witness_document(witness, 3, [&] {
        ordered_json gens = ordered_json::array();
        for (Vec3 g : witness.cone.generators) gens.push_back(from_vec(g));
        return gens;
    });
}

}  // namespace plank::io
