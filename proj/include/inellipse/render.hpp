#pragma once

#include <optional>
#include <string>

#include "inellipse/min_ecc.hpp"

namespace inellipse {

struct RenderOptions {
    Quadrilateral quad;
    std::optional<InscribedEllipseReport> ellipse;
    std::optional<MinEccResult> min_ecc;
};

// Deterministic SVG 1.1 drawing: quadrilateral, dashed diagonals, dotted
// Newton segment, exact rotated-ellipse element, tangency points/chords,
// equal-diameter segments. viewBox fitted with a 5% margin.
std::string render_svg(const RenderOptions& opts);

}  // namespace inellipse
