#pragma once

#include "schottky/mobius.hpp"
#include "schottky/types.hpp"

namespace schottky {

// Stereographic chart R^n <-> S^n \ {pole}, pole fixed at e_{n+1}.
// Round balls in the chart correspond to caps that do not contain the pole.

struct ChartBall {
  Vec center;
  double radius;
};

Cap cap_from_chart_ball(const ChartBall& b);

struct ChartCircle {
  ChartBall ball;
  bool cap_is_interior;  // false: the cap maps to the exterior of the ball
};

// Boundary circle of a cap in the chart. PoleEncountered when the boundary
// sphere passes through the pole (chart image would be a hyperplane).
ChartCircle chart_circle_from_cap(const Cap& c);

}  // namespace schottky
