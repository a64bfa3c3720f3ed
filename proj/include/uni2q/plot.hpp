#pragma once

#include <string>

#include "uni2q/hull.hpp"

namespace uni2q {

constexpr int kCanvasSize = 800;
constexpr double kPlotRadius = 300.0;

/// Complex-plane figure: unit circle, spectrum points A..D, the global hull,
/// the product-input hull with its P..S corners (when `include_local`), the
/// origin and the segment from the origin to the nearest hull point.
/// Output depends only on the arguments.
std::string render_hull_svg(const HullAnalysis& h, bool include_local = true);

}  // namespace uni2q
