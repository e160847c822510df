#pragma once

#include <optional>
#include <string>

#include "pixrec/geometry.hpp"
#include "pixrec/pixelation.hpp"
#include "pixrec/reconstruction.hpp"

namespace pixrec {

struct SvgLayers {
    const PLScene* scene = nullptr;
    const Pixelation* pixelation = nullptr;
    const Polytrapezoid* shape = nullptr;
};

/// SVG with one <g> per present layer (ids "scene", "pixelation",
/// "reconstruction"). Output depends only on the inputs.
std::string render_svg(const SvgLayers& layers, int widthPx = 800);

/// Reconstruction as JSON: exact trapezoid coordinates as "p/q" strings,
/// tags, and the Reeb graph counts.
std::string polytrapezoid_json(const Reconstruction& rec);

}  // namespace pixrec
