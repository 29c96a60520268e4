#pragma once

#include <optional>
#include <string>

#include "dispersal/instance.hpp"

namespace dispersal {

struct RenderOptions {
  Rational scale{10};  // pixels per unit
  bool show_moves = true;
};

/// SVG drawing with the y axis pointing up. Moved disks appear dashed at the
/// origin and solid at the target, joined by an arrow. Lattice blocks are drawn
/// as hatched rectangles with their holes cut out.
std::string render_svg(const Instance& inst, const std::optional<Witness>& w = std::nullopt,
                       const RenderOptions& opts = {});

}  // namespace dispersal
