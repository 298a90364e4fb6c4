#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "schottky/chart.hpp"
#include "schottky/mobius.hpp"
#include "schottky/rng.hpp"

namespace schottky {

// Open connected region of S^n given through a chart-side distance to its
// boundary (positive inside, <= 0 outside). Relative Schottky sets carry one.
struct Region {
  std::string description;
  int sphere_dim = 2;
  bool whole_sphere = true;
  std::function<double(const Vec&)> dist_to_boundary_chart;

  bool contains_chart(const Vec& y) const {
    return whole_sphere || dist_to_boundary_chart(y) > 0.0;
  }
};

Region whole_sphere_region(int sphere_dim);
Region chart_ball_region(Vec center, double radius);

// Sampled flood-fill witness for connectivity of a region within the chart
// window [-w, w]^n. Returns true when the sampled inside cells form one
// component.
bool region_connectivity_witness(const Region& region, double window_halfwidth,
                                 int cells_per_axis);

struct SchottkySet {
  int n = 2;  // sphere dimension
  std::vector<Cap> caps;
  std::optional<Region> region;

  // Truncation metadata for sets that stand in for infinite families.
  struct Truncation {
    double diameter_floor = 0.0;
    double residual_margin = 0.0;
    int depth = 0;
    double window = 0.0;
  };
  std::optional<Truncation> truncation;

  int cap_count() const { return static_cast<int>(caps.size()); }
  // 1-based cap access matching word indices.
  const Cap& cap(int index) const;
};

SchottkySet make_schottky_set(std::vector<Cap> caps,
                              std::optional<Region> region = std::nullopt);

struct Violation {
  enum class Kind {
    TooFewCaps,
    DimensionMismatch,
    Overlap,
    RegionContainment,
  };
  Kind kind;
  int index_a = 0;  // 1-based cap indices when applicable
  int index_b = 0;
  double amount = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  int cap_count = 0;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

ValidationReport validate(const SchottkySet& s);

double sphere_area(int n);
double cap_area(int n, double angular_radius);

// Exact complement measure for whole-sphere sets:
// area(S^n) - sum of cap areas. NotWholeSphere for relative sets.
double measure(const SchottkySet& s);

struct RelativeMeasure {
  double value;
  double std_error;
  std::size_t samples;
};
// Monte Carlo measure of (region minus caps) for relative sets.
RelativeMeasure relative_measure(const SchottkySet& s, std::uint64_t seed,
                                 std::size_t samples, int threads = 1);

enum class Membership { InSet, InCap, OnPeripheralSphere };

struct Classification {
  Membership kind;
  int index = 0;  // 1-based cap index for InCap / OnPeripheralSphere
};

Classification contains(const SchottkySet& s, const SpherePoint& p,
                        double boundary_tol = kBoundaryTol);

// Lemma-style arc replacement: a polyline from x to y inside
// (ambient intersect complement of all caps of diameter >= eps). `ambient`
// empty means the whole sphere. Throws NotInSet / NoArcInAmbient.
std::vector<SpherePoint> connect_in_ball(const SchottkySet& s,
                                         const SpherePoint& x,
                                         const SpherePoint& y,
                                         const std::optional<Cap>& ambient,
                                         double eps);

// True iff `candidate`'s boundary sphere coincides with a peripheral sphere
// (within kPeripheralMatchTol in (u,t)). Sampled containment in S is a
// precondition; NotContained if a boundary sample lands inside a cap.
bool is_peripheral(const SchottkySet& s, const Cap& candidate,
                   int boundary_samples = 128);

}  // namespace schottky
