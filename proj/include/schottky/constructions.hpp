#pragma once

#include <utility>
#include <vector>

#include "schottky/analysis.hpp"
#include "schottky/numerics.hpp"
#include "schottky/schottky_set.hpp"

namespace schottky {

// Fat ("thick") Cantor set on [0,1]: step k removes the centered open
// interval of length 4^{-k} from each of the 2^{k-1} blocks. Exact rational
// bookkeeping; limit measure 1/2.
struct FatCantorSet {
  int depth = 0;

  struct Removed {
    Fraction a, b;
    int step;
  };
  std::vector<Removed> removed;  // sorted by left endpoint

  Fraction truncation_measure() const;  // 1/2 + 2^{-depth-1}
  static Fraction limit_measure() { return Fraction(1, 2); }

  bool contains(double x) const;       // membership in the depth-truncation
  double dist(double x) const;         // distance to the truncation
  double kept_measure_below(double x) const;  // |K_depth ∩ [0, x]|, x in [0,1]
  std::vector<std::pair<Fraction, Fraction>> kept_blocks() const;
};

FatCantorSet fat_cantor(int depth);

// h(x) = x + |K ∩ [0,x]| (and h(x) = x for x <= 0): monotone bi-Lipschitz
// with constants in [1,2], slope 2 on the truncated Cantor set, slope 1 on
// the removed intervals, h(0) = 0.
double h_map(const FatCantorSet& k, double x);

struct SlabPacking {
  std::pair<double, double> slab_interval;
  double window;
  std::vector<ChartBall> balls;
  double residual_margin;
};

// Deterministic ball packing of the slab (a,b) x [-w,w]^{n-1}: a cubic
// lattice of equal balls sized to the slab width, then gap filling with
// halved radii down to `residual_margin`.
SlabPacking pack_slab(double a, double b, int chart_dim, double window,
                      double residual_margin, std::size_t budget);

struct NonrigidExample {
  SchottkySet s;
  SchottkySet s_prime;
  MapUnderTest f;  // chart map (h(x1), x2, ..., xn)
  FatCantorSet cantor;
  std::vector<SlabPacking> packings;
  double window;
  double slab_offset(std::size_t slab_index) const;  // translation h applies
};

NonrigidExample nonrigid_example(int n, int cantor_depth, double window,
                                 double residual_margin,
                                 std::size_t ball_budget = 200000);

Region cantor_product_complement_region(const FatCantorSet& k, int sphere_dim);

struct PorousStep {
  int k = 0;
  double separation = 0.0;
  double radius = 0.0;
  std::vector<Vec> net;
};

struct PorousSet {
  std::vector<ChartBall> balls;
  std::vector<PorousStep> steps;
  Region region;
  double scale = 1.0;
  double smallest_radius = 0.0;

  SchottkySet as_schottky_set() const;  // relative set (caps + region)
  bool in_set_chart(const Vec& y) const;
  // min(dist to region boundary, dist to removed balls) at a chart point
  double dist_to_boundary_chart(const Vec& y) const;
};

// Greedy separated-net construction: step s uses separation scale/2^{s-1},
// ball radius scale/2^{s+1}, candidate grid pitch scale/2^{s+2} over the
// window [-w,w]^n. EmptyNet if a step yields no candidates.
PorousSet porous_relative_schottky(const Region& region, int steps, double scale,
                                   double window_halfwidth,
                                   std::size_t ball_budget = 500000);

struct PorosityReport {
  bool pass = false;
  double min_feasible_c = 0.0;  // infinity when some (y, r) meets no ball
  std::size_t samples = 0;
  std::size_t failures = 0;  // (y, r) pairs with no admissible component
  double floor_r = 0.0;
  double rho0 = 0.0;
};

// Local porosity probe: for sampled y in T inside the window and log-spaced
// r in (floor_r, rho0), look for a complementary ball meeting B(y,r) with
// diameter within [r/C, C r]; records the minimal feasible C.
PorosityReport porosity_check(const PorousSet& t, const Vec& window_center,
                              double window_halfwidth, double rho0, double c_bound,
                              double floor_r, std::size_t sample_budget, Rng& rng);

}  // namespace schottky
