#include "schottky/chart.hpp"

#include <cmath>

namespace schottky {

Cap cap_from_chart_ball(const ChartBall& b) {
  int n = static_cast<int>(b.center.size());
  if (b.radius <= 0.0)
    raise(ErrorKind::NumericalDegeneracy, "chart ball radius must be positive");
  double beta = b.center.squaredNorm() - b.radius * b.radius;
  Vec a(n + 1);
  a.head(n) = -2.0 * b.center;
  a[n] = 1.0 - beta;
  double na = a.norm();
  return Cap(-a / na, (1.0 + beta) / na);
}

ChartCircle chart_circle_from_cap(const Cap& c) {
  int n = c.sphere_dim();
  double denom = c.offset() + c.normal()[n];
  if (std::fabs(denom) < 1e-13)
    raise(ErrorKind::PoleEncountered,
          "cap boundary passes through the chart pole");
  ChartBall ball;
  ball.center = -c.normal().head(n) / denom;
  ball.radius = std::sqrt(1.0 - c.offset() * c.offset()) / std::fabs(denom);
  // The cap maps to the ball interior exactly when the pole is outside it.
  bool interior = c.normal()[n] < c.offset();
  return ChartCircle{std::move(ball), interior};
}

}  // namespace schottky
