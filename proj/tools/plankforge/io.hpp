#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "plank/body2.hpp"
#include "plank/cover.hpp"
#include "plank/polytope3.hpp"
#include "plank/spiky.hpp"
#include "plank/verify.hpp"

namespace plank::io {

using BodyVariant = std::variant<Body2, Polytope3>;
using CoverVariant = std::variant<CoverResult2, CoverResult3>;

/// Formats one double with up to 17 significant digits, enough for the
/// parsed value to recover the original bit pattern.
std::string format_number(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Body files: {"dim":2,"type":"polygon","vertices":[[x,y],...]},
/// {"dim":2,"type":"arcgon","pieces":[{"kind":"seg",...}|{"kind":"arc",...}]},
/// or {"dim":3,"type":"polytope","vertices":[[x,y,z],...]}. Throws IoError on
/// malformed JSON and InvalidBody on bad geometry.
BodyVariant parse_body(const std::string& text);
BodyVariant load_body(const std::string& path);

std::string to_json(const Body2& body);
std::string to_json(const Polytope3& poly);

/// Covering files carry the planks, the shift, and the full construction
/// trace, so a verifier can re-run every audit from the file alone.
std::string to_json(const CoverResult2& result);
std::string to_json(const CoverResult3& result);
CoverVariant parse_cover(const std::string& text);
CoverVariant load_cover(const std::string& path);

std::string to_json(const VerifyReport2& report);
std::string to_json(const VerifyReport3& report);

std::string width_json(int dim, double w, const std::vector<double>& direction);
std::string witness_json(const SpikeWitness2& witness);
std::string witness_json(const SpikeWitness3& witness);

}  // namespace plank::io
