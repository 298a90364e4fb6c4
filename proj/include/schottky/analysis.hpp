#pragma once

#include <functional>
#include <span>
#include <utility>

#include "schottky/chart.hpp"
#include "schottky/rng.hpp"
#include "schottky/schottky_set.hpp"

namespace schottky {

struct DistortionSample {
  double t;
  double ratio;
};

// Empirical distortion data with a monotone staircase upper envelope over
// log-spaced bins. No parametric gauge is fitted.
struct DistortionProfile {
  std::vector<DistortionSample> samples;
  struct Step {
    double t_upper;
    double value;
  };
  std::vector<Step> envelope;
  std::size_t degenerate_skipped = 0;

  double envelope_at(double t) const;
  bool envelope_dominates_samples() const;
};

DistortionProfile build_profile(std::vector<DistortionSample> samples, int bins);

struct MapUnderTest {
  int sphere_dim = 2;
  std::function<SpherePoint(const SpherePoint&)> sphere_eval;
  std::function<bool(const SpherePoint&)> domain;  // null = total
  std::function<Vec(const Vec&)> chart_eval;       // chart-side view
  std::function<Mat(const Vec&)> chart_jacobian;   // optional analytic

  bool in_domain(const SpherePoint& p) const { return !domain || domain(p); }

  static MapUnderTest from_mobius(const MobiusMap& m);
  static MapUnderTest from_chart_fn(int sphere_dim,
                                    std::function<Vec(const Vec&)> chart_fn,
                                    std::function<bool(const Vec&)> chart_domain = {},
                                    std::function<Mat(const Vec&)> jacobian = {});
};

using SphereSampler = std::function<SpherePoint(Rng&)>;

SphereSampler uniform_sphere_sampler(int sphere_dim);
SphereSampler chart_box_sampler(const Vec& lo, const Vec& hi);

// Quasisymmetry profile over random distinct triples, chordal metric.
DistortionProfile qs_envelope(const MapUnderTest& map, const SphereSampler& sampler,
                              std::size_t triples, Rng& rng, int bins = 48);

// Same, measured in the Euclidean chart metric (for chart-framed maps).
DistortionProfile qs_envelope_chart(const std::function<Vec(const Vec&)>& chart_fn,
                                    const Vec& lo, const Vec& hi,
                                    std::size_t triples, Rng& rng, int bins = 48);

// Quasi-Moebius profile over random distinct quadruples (cross-ratios).
DistortionProfile qm_envelope(const MapUnderTest& map, const SphereSampler& sampler,
                              std::size_t quadruples, Rng& rng, int bins = 48);

// sup/inf stretching over sampled chordal spheres; returns the max ratio over
// the smallest `tail_rungs` ladder radii. DomainEscape when an r-sphere
// leaves the domain.
double dilatation_estimate(const MapUnderTest& map, const SpherePoint& x,
                           std::span<const double> radii_ladder,
                           int directions = 64, int tail_rungs = 3);

struct MobiusFit {
  MobiusMap map;
  double residual;  // RMS chordal error over the pairs
  int iterations;
};

// Alternating least squares on null-vector lifts with Lorentz re-projection.
// IllConditioned when the source points nearly concentrate on a low sphere.
MobiusFit mobius_fit(std::span<const std::pair<SpherePoint, SpherePoint>> pairs,
                     int max_iterations = 50);

// sigma_1/sigma_n - 1 of the chart Jacobian at x (0 for conformal maps).
// Finite differences are central with one Richardson step unless the map
// carries an analytic Jacobian. SingularJacobian if sigma_n < 1e-12.
double conformality_defect(const MapUnderTest& map, const Vec& chart_x, double h);

double hausdorff_distance(std::span<const Vec> a, std::span<const Vec> b);
double hausdorff_distance_points(std::span<const SpherePoint> a,
                                 std::span<const SpherePoint> b);

// Discretization of a cap configuration (boundary samples plus centers) for
// Hausdorff comparisons.
std::vector<Vec> cap_config_samples(const SchottkySet& s, int per_cap);

struct ChartBallConfig {
  std::vector<ChartBall> balls;
  std::vector<Vec> points;
};

// x -> x / r with infinity fixed: balls (c/r, rho/r), points p/r.
ChartBallConfig rescale_config(const ChartBallConfig& config, double r);

// Samples of a chart-ball configuration clipped to the window [-w, w]^n
// (boundary points of balls meeting the window, plus marked points).
std::vector<Vec> chart_config_samples(const ChartBallConfig& config,
                                      double window_halfwidth, int per_ball);

}  // namespace schottky
