#include "schottky/hull.hpp"

#include <cmath>

namespace schottky {

double GeodesicHyperplane::side_value(const Vec& x) const {
  // Hull side = complement of the ideal cap. For t > 0 the cap's ideal
  // points are inside the orthogonal sphere, so the hull side is outside it;
  // for t < 0 the containment flips; t = 0 degenerates to a diameter plane.
  const Cap& c = ideal_cap;
  if (flat) return -c.normal().dot(x);
  double g = (x - sphere_center).squaredNorm() - sphere_radius * sphere_radius;
  return c.offset() > 0.0 ? g : -g;
}

HullDescription hull_from_schottky(const SchottkySet& boundary) {
  HullDescription hull;
  hull.ball_dim = boundary.n + 1;
  hull.halfspaces.reserve(boundary.caps.size());
  for (const Cap& c : boundary.caps) {
    GeodesicHyperplane h{c, false, Vec(), 0.0};
    double t = c.offset();
    if (std::fabs(t) < 1e-14) {
      h.flat = true;
      h.sphere_center = Vec::Zero(c.normal().size());
      h.sphere_radius = 0.0;
    } else {
      h.sphere_center = c.normal() / t;
      h.sphere_radius = std::sqrt(1.0 - t * t) / std::fabs(t);
    }
    hull.halfspaces.push_back(std::move(h));
  }
  return hull;
}

bool hull_contains(const HullDescription& hull, const Vec& ball_point) {
  if (ball_point.norm() >= 1.0)
    raise(ErrorKind::DomainEscape, "point outside the open unit ball");
  for (const GeodesicHyperplane& h : hull.halfspaces)
    if (h.side_value(ball_point) < -1e-12) return false;
  return true;
}

double hyp_distance(const Vec& x, const Vec& y) {
  double nx = x.squaredNorm(), ny = y.squaredNorm();
  if (nx >= 1.0 || ny >= 1.0)
    raise(ErrorKind::DomainEscape, "points must lie in the open unit ball");
  double arg = 1.0 + 2.0 * (x - y).squaredNorm() / ((1.0 - nx) * (1.0 - ny));
  return std::acosh(arg);
}

}  // namespace schottky
