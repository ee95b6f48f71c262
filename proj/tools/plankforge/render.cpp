#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "plank/error.hpp"

namespace plank::io {
namespace {

constexpr double kTau = 6.28318530717958647692;

void require_valid(const RenderSpec& spec) {
    if (!(spec.canvas_px > 0.0)) throw InvalidBody("render canvas size must be positive");
    if (!(spec.body_stroke_px >= 0.0) || !(spec.plank_stroke_px >= 0.0)) {
        throw InvalidBody("render stroke widths must be nonnegative");
    }
    if (!(spec.plank_fill_opacity >= 0.0 && spec.plank_fill_opacity <= 1.0)) {
        throw InvalidBody("plank fill opacity must lie in [0, 1]");
    }
    if (spec.color_cycle.empty()) throw InvalidBody("render color cycle must be nonempty");
    if (!(spec.view_padding >= 0.0)) throw InvalidBody("view padding must be nonnegative");
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

/// World-to-canvas map: uniform scale, content centered, y flipped.
struct Viewport {
    Vec2 center;
    double scale = 1.0;
    double canvas = 0.0;

    Vec2 map(Vec2 p) const {
        return {canvas / 2.0 + (p.x - center.x) * scale,
                canvas / 2.0 - (p.y - center.y) * scale};
    }
};

Viewport fit_view(const Body2& body, const RenderSpec& spec) {
    const auto box = body.bbox();
    const double ext = std::max(box[1].x - box[0].x, box[1].y - box[0].y);
    const double pad = spec.view_padding * ext;
    Viewport view;
    view.center = 0.5 * (box[0] + box[1]);
    view.scale = spec.canvas_px / (ext + 2.0 * pad);
    view.canvas = spec.canvas_px;
    return view;
}

std::string body_path(const Body2& body, const Viewport& view) {
    std::string d;
    const Vec2 start = view.map(body.pieces().front().from);
    d += "M " + px(start.x) + " " + px(start.y);
    for (const Piece& p : body.pieces()) {
        const Vec2 end = view.map(p.to);
        if (p.kind == PieceKind::Segment) {
            d += " L " + px(end.x) + " " + px(end.y);
        } else {
            double span = p.ang1 - p.ang0;
            span -= kTau * std::floor(span / kTau);
            const char* large = span > kTau / 2.0 ? "1" : "0";
            const double r = p.radius * view.scale;
            // Counterclockwise in world coordinates turns clockwise after the
            // y flip, which is SVG's sweep direction 1.
            d += " A " + px(r) + " " + px(r) + " 0 " + std::string(large) + " 1 " + px(end.x) +
                 " " + px(end.y);
        }
    }
    d += " Z";
    return d;
}

std::string plank_quad(const Plank2& plank, const Viewport& view, double reach) {
    const Vec2 n = plank.normal;
    const Vec2 t = perp(n);
    const double mid = dot(view.center, t);
    std::string pts;
    const Vec2 corners[4] = {
        plank.lo * n + (mid - reach) * t,
        plank.hi * n + (mid - reach) * t,
        plank.hi * n + (mid + reach) * t,
        plank.lo * n + (mid + reach) * t,
    };
    for (int i = 0; i < 4; ++i) {
        const Vec2 c = view.map(corners[i]);
        if (i) pts += " ";
        pts += px(c.x) + "," + px(c.y);
    }
    return pts;
}

}  // namespace

std::string render_svg(const Body2& body, const std::optional<Body2>& inner,
                       const std::vector<Plank2>& planks, const RenderSpec& spec) {
    require_valid(spec);
    const Viewport view = fit_view(body, spec);
    const auto box = body.bbox();
    const double reach = norm(box[1] - box[0]);

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           px(spec.canvas_px) + "\" height=\"" + px(spec.canvas_px) + "\" viewBox=\"0 0 " +
           px(spec.canvas_px) + " " + px(spec.canvas_px) + "\">\n";
    svg += "  <rect width=\"" + px(spec.canvas_px) + "\" height=\"" + px(spec.canvas_px) +
           "\" fill=\"white\"/>\n";

    for (std::size_t i = 0; i < planks.size(); ++i) {
        const std::string& color = spec.color_cycle[i % spec.color_cycle.size()];
        svg += "  <polygon points=\"" + plank_quad(planks[i], view, reach) + "\" fill=\"" +
               color + "\" fill-opacity=\"" + px(spec.plank_fill_opacity) + "\" stroke=\"" +
               color + "\" stroke-width=\"" + px(spec.plank_stroke_px) + "\"/>\n";
    }

    svg += "  <path d=\"" + body_path(body, view) + "\" fill=\"none\" stroke=\"#111111\"" +
           " stroke-width=\"" + px(spec.body_stroke_px) + "\"/>\n";
    if (inner) {
        svg += "  <path d=\"" + body_path(*inner, view) +
               "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"" +
               px(spec.body_stroke_px / 2.0) + "\" stroke-dasharray=\"6 4\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace plank::io
