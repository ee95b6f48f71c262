#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plank/body2.hpp"
#include "plank/plank.hpp"

namespace plank::io {

/// Styling knobs for the SVG output. Dimensions are pixels; the padding is a
/// fraction of the larger body extent kept clear around the drawing.
struct RenderSpec {
    double canvas_px = 720.0;
    double body_stroke_px = 2.0;
    double plank_stroke_px = 1.0;
    double plank_fill_opacity = 0.35;
    std::vector<std::string> color_cycle{"#1f6fb2", "#d1495b", "#2e933c",
                                         "#8f2d56", "#e09f3e", "#3d5a80"};
    double view_padding = 0.08;
};

/// Renders the body outline, the shifted inner copy (when given), and one
/// translucent quad per plank, clipped to the canvas. The world y axis points
/// up; SVG rows grow downward, so coordinates are flipped on output.
std::string render_svg(const Body2& body, const std::optional<Body2>& inner,
                       const std::vector<Plank2>& planks, const RenderSpec& spec = {});

}  // namespace plank::io
