#include "inellipse/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace inellipse {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8g", x);
    return buf;
}

struct Bounds {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    void add(const Point& p) {
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
        ymin = std::min(ymin, p.y());
        ymax = std::max(ymax, p.y());
    }
};

void draw_segment(std::string& svg, const Point& p, const Point& q, const std::string& style) {
    svg += "  <line x1=\"" + num(p.x()) + "\" y1=\"" + num(p.y()) + "\" x2=\"" + num(q.x()) + "\" y2=\"" +
           num(q.y()) + "\" " + style + "/>\n";
}

void draw_dot(std::string& svg, const Point& p, double r, const std::string& fill) {
    svg += "  <circle cx=\"" + num(p.x()) + "\" cy=\"" + num(p.y()) + "\" r=\"" + num(r) + "\" fill=\"" + fill +
           "\"/>\n";
}

void draw_ellipse(std::string& svg, const EllipseInfo& info, const std::string& stroke, double width) {
    const auto [major, minor] = axis_directions(info);
    const double angle_deg = std::atan2(major.dy, major.dx) * 180.0 / M_PI;
    svg += "  <g transform=\"translate(" + num(info.center.x()) + " " + num(info.center.y()) + ") rotate(" +
           num(angle_deg) + ")\">\n";
    svg += "    <ellipse cx=\"0\" cy=\"0\" rx=\"" + num(info.a) + "\" ry=\"" + num(info.b) +
           "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
    svg += "  </g>\n";
}

void draw_tangency(std::string& svg, const TangencyReport& t, double dot_r, double width) {
    const std::string chord_style =
        "stroke=\"#2a9d8f\" stroke-width=\"" + num(width) + "\" fill=\"none\"";
    draw_segment(svg, t.q[0], t.q[1], chord_style);
    draw_segment(svg, t.q[1], t.q[2], chord_style);
    draw_segment(svg, t.q[2], t.q[3], chord_style);
    draw_segment(svg, t.q[0], t.q[3], chord_style);
    for (const auto& p : t.q) draw_dot(svg, p, dot_r, "#e63946");
}

}  // namespace

std::string render_svg(const RenderOptions& opts) {
    const Quadrilateral& q = opts.quad;
    Bounds b;
    for (const auto& p : q.v) b.add(p);
    if (opts.min_ecc)
        for (const auto& [p1, p2] : opts.min_ecc->equal_diameters) {
            b.add(p1);
            b.add(p2);
        }
    const double margin = 0.05 * std::max(b.xmax - b.xmin, b.ymax - b.ymin);
    b.xmin -= margin;
    b.xmax += margin;
    b.ymin -= margin;
    b.ymax += margin;
    const double w = b.xmax - b.xmin, h = b.ymax - b.ymin;
    const double lw = 0.004 * std::max(w, h);     // stroke width in user units
    const double dot_r = 0.008 * std::max(w, h);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(b.xmin) + " " +
           num(b.ymin) + " " + num(w) + " " + num(h) + "\" width=\"720\" height=\"" +
           num(720.0 * h / w) + "\">\n";
    // y grows upward in the plane; flip into SVG screen coordinates
    svg += "<g transform=\"matrix(1 0 0 -1 0 " + num(b.ymin + b.ymax) + ")\">\n";

    std::string pts;
    for (int i = 0; i < 4; ++i) pts += num(q.v[i].x()) + "," + num(q.v[i].y()) + (i < 3 ? " " : "");
    svg += "  <polygon points=\"" + pts + "\" fill=\"#f1faee\" stroke=\"#1d3557\" stroke-width=\"" + num(lw) +
           "\"/>\n";

    const std::string dash = "stroke=\"#457b9d\" stroke-width=\"" + num(lw) + "\" stroke-dasharray=\"" +
                             num(4 * lw) + " " + num(3 * lw) + "\"";
    draw_segment(svg, q.a1(), q.a3(), dash);  // diagonals
    draw_segment(svg, q.a2(), q.a4(), dash);

    const QuadClassification cls = classify_quad(q);
    if (cls.is_parallelogram) {
        draw_dot(svg, cls.diagonal_intersection, dot_r, "#1d3557");
    } else {
        const std::string dots = "stroke=\"#1d3557\" stroke-width=\"" + num(lw) + "\" stroke-dasharray=\"" +
                                 num(lw) + " " + num(2 * lw) + "\"";
        draw_segment(svg, cls.m1, cls.m2, dots);  // Newton segment
    }

    if (opts.ellipse) {
        draw_ellipse(svg, opts.ellipse->info, "#e76f51", lw);
        draw_tangency(svg, opts.ellipse->tangency, dot_r, 0.6 * lw);
        draw_dot(svg, opts.ellipse->center, dot_r, "#e76f51");
    }
    if (opts.min_ecc) {
        draw_ellipse(svg, opts.min_ecc->ellipse.info, "#9b2226", lw);
        draw_tangency(svg, opts.min_ecc->ellipse.tangency, dot_r, 0.6 * lw);
        const std::string diam_style = "stroke=\"#9b2226\" stroke-width=\"" + num(0.8 * lw) + "\"";
        for (const auto& [p1, p2] : opts.min_ecc->equal_diameters) draw_segment(svg, p1, p2, diam_style);
        draw_dot(svg, opts.min_ecc->ellipse.center, dot_r, "#9b2226");
    }

    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace inellipse
