#pragma once

#include "schottky/schottky_set.hpp"

namespace schottky {

// Totally geodesic hyperplane of the ball model B^m spanning the boundary
// circle of an ideal cap on S^{m-1}: the Euclidean sphere orthogonal to the
// unit sphere with the same ideal trace (a flat diameter plane when the cap
// is a half-sphere).
struct GeodesicHyperplane {
  Cap ideal_cap;
  bool flat;          // offset == 0: plane through the origin
  Vec sphere_center;  // u / t (when not flat)
  double sphere_radius;

  // >= 0 on the hull side (the complement-of-cap side), boundary at 0.
  double side_value(const Vec& x) const;
};

struct HullDescription {
  int ball_dim;  // hull lives in B^{ball_dim}
  std::vector<GeodesicHyperplane> halfspaces;
};

// One halfspace per cap of the boundary Schottky set S on S^{m-1}; the hull
// is the intersection of the S-side halfspaces.
HullDescription hull_from_schottky(const SchottkySet& boundary);

bool hull_contains(const HullDescription& hull, const Vec& ball_point);

// Ball-model hyperbolic distance
// arccosh(1 + 2|x-y|^2 / ((1-|x|^2)(1-|y|^2))).
double hyp_distance(const Vec& x, const Vec& y);

}  // namespace schottky
