#pragma once

#include <iosfwd>

#include "schottky/group.hpp"

namespace schottky {

struct SvgOptions {
  double window_cx = 0.0;  // chart window center
  double window_cy = 0.0;
  double window_halfwidth = 2.0;
  int pixels = 800;
};

// Chart-plane figure of an n=2 configuration: one circle per orbit ball,
// fill color keyed by word depth (depth-1 balls are the caps themselves).
// Caps whose chart image is unbounded are drawn as outlines.
void render_svg(std::ostream& os, const SchottkySet& s,
                const std::vector<OrbitBall>& balls, const SvgOptions& opt);

}  // namespace schottky
