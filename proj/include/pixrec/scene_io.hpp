#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pixrec/geometry.hpp"

namespace pixrec {

/// JSON scene: {"name": str, "polygons": [[["p/q", "p/q"], ...], ...]}.
/// Coordinates may be strings "p", "p/q" or JSON integers. Throws ParseError.
PLScene parse_scene(const std::string& text);
PLScene load_scene(const std::string& path);
std::string scene_to_json(const PLScene& scene);

/// Scenes shipped with the library.
std::vector<std::string> builtin_scene_names();
PLScene builtin_scene(const std::string& name);

/// Affine map (x, y) -> (x + y/35, y + x/37) used to make axis-parallel
/// layouts generic.
Point shear(const Point& p);

/// Seeded generic scene of 1-3 convex pieces (points, segments, polygons)
/// with coordinates in (0,1) over the denominator 385.
PLScene random_scene(std::uint64_t seed);

}  // namespace pixrec
