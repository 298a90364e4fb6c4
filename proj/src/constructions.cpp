#include "schottky/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace schottky {

namespace {

// Spatial hash over chart balls for range queries (cells keyed on floor
// coordinates at a fixed cell size).
class BallGrid {
 public:
  BallGrid(int dim, double cell) : dim_(dim), cell_(cell) {}

  void insert(const Vec& center, double radius, std::size_t index) {
    visit_cells(center, radius, [&](long long key) {
      cells_[key].push_back(index);
    });
  }

  // Indices of balls whose centers lie within `reach` of y (superset).
  template <class Fn>
  void for_candidates(const Vec& y, double reach, Fn&& fn) const {
    seen_.clear();
    visit_cells(y, reach, [&](long long key) {
      auto it = cells_.find(key);
      if (it == cells_.end()) return;
      for (std::size_t idx : it->second) {
        if (seen_.insert(idx).second) fn(idx);
      }
    });
  }

 private:
  template <class Fn>
  void visit_cells(const Vec& c, double radius, Fn&& fn) const {
    std::vector<long long> lo(dim_), hi(dim_);
    for (int d = 0; d < dim_; ++d) {
      lo[d] = static_cast<long long>(std::floor((c[d] - radius) / cell_));
      hi[d] = static_cast<long long>(std::floor((c[d] + radius) / cell_));
    }
    std::vector<long long> cur(lo);
    for (;;) {
      long long key = 0;
      for (int d = 0; d < dim_; ++d) key = key * 73856093LL + cur[d] * 19349663LL;
      fn(key);
      int d = 0;
      while (d < dim_ && ++cur[d] > hi[d]) {
        cur[d] = lo[d];
        ++d;
      }
      if (d == dim_) break;
    }
  }

  int dim_;
  double cell_;
  std::unordered_map<long long, std::vector<std::size_t>> cells_;
  mutable std::unordered_set<std::size_t> seen_;
};

}  // namespace

Fraction FatCantorSet::truncation_measure() const {
  Fraction m(1, 1);
  for (const Removed& r : removed) m = m - (r.b - r.a);
  return m;
}

bool FatCantorSet::contains(double x) const {
  if (x < 0.0 || x > 1.0) return false;
  for (const Removed& r : removed) {
    if (x > r.a.value() && x < r.b.value()) return false;
    if (r.a.value() > x) break;
  }
  return true;
}

double FatCantorSet::dist(double x) const {
  if (x < 0.0) return -x;
  if (x > 1.0) return x - 1.0;
  double best = 0.0;
  for (const Removed& r : removed) {
    double a = r.a.value(), b = r.b.value();
    if (x > a && x < b) {
      best = std::min(x - a, b - x);
      break;
    }
    if (a > x) break;
  }
  return best;
}

double FatCantorSet::kept_measure_below(double x) const {
  if (x <= 0.0) return 0.0;
  double cl = std::min(x, 1.0);
  double gone = 0.0;
  for (const Removed& r : removed) {
    double a = r.a.value(), b = r.b.value();
    if (a >= cl) break;
    gone += std::min(b, cl) - a;
  }
  return cl - gone;
}

std::vector<std::pair<Fraction, Fraction>> FatCantorSet::kept_blocks() const {
  std::vector<std::pair<Fraction, Fraction>> blocks;
  Fraction cursor(0, 1);
  for (const Removed& r : removed) {
    blocks.emplace_back(cursor, r.a);
    cursor = r.b;
  }
  blocks.emplace_back(cursor, Fraction(1, 1));
  return blocks;
}

FatCantorSet fat_cantor(int depth) {
  if (depth < 1 || depth > 18)
    raise(ErrorKind::NumericalDegeneracy, "fat_cantor depth must be in 1..18");
  FatCantorSet k;
  k.depth = depth;
  std::vector<std::pair<Fraction, Fraction>> blocks{{Fraction(0, 1), Fraction(1, 1)}};
  long long pow4 = 1;
  for (int step = 1; step <= depth; ++step) {
    pow4 *= 4;
    Fraction half(1, 2 * pow4);  // half of the removed length 4^{-step}
    std::vector<std::pair<Fraction, Fraction>> next;
    next.reserve(blocks.size() * 2);
    for (const auto& [a, b] : blocks) {
      Fraction mid = (a + b) / Fraction(2, 1);
      FatCantorSet::Removed r{mid - half, mid + half, step};
      k.removed.push_back(r);
      next.emplace_back(a, r.a);
      next.emplace_back(r.b, b);
    }
    blocks = std::move(next);
  }
  std::sort(k.removed.begin(), k.removed.end(),
            [](const FatCantorSet::Removed& x, const FatCantorSet::Removed& y) {
              return x.a < y.a;
            });
  return k;
}

double h_map(const FatCantorSet& k, double x) {
  if (x <= 0.0) return x;
  if (x >= 1.0) return x + k.truncation_measure().value();
  return x + k.kept_measure_below(x);
}

SlabPacking pack_slab(double a, double b, int chart_dim, double window,
                      double residual_margin, std::size_t budget) {
  if (b <= a)
    raise(ErrorKind::NumericalDegeneracy, "empty slab interval");
  if (chart_dim < 2)
    raise(ErrorKind::NumericalDegeneracy, "slabs need chart dimension >= 2");
  if (residual_margin <= 0.0)
    raise(ErrorKind::NumericalDegeneracy, "residual margin must be positive");
  SlabPacking pack;
  pack.slab_interval = {a, b};
  pack.window = window;
  double wd = b - a;
  int extra = chart_dim - 1;

  auto fits = [&](const Vec& c, double rho) {
    if (c[0] - rho < a - 1e-13 || c[0] + rho > b + 1e-13) return false;
    for (int d = 1; d < chart_dim; ++d)
      if (c[d] - rho < -window - 1e-13 || c[d] + rho > window + 1e-13) return false;
    for (const ChartBall& e : pack.balls)
      if ((c - e.center).norm() < rho + e.radius - 1e-13) return false;
    return true;
  };

  // level 0: equal balls on a lattice along the slab mid-plane; deeper
  // levels fill gaps on a pitch-rho grid with halved radii. Refining to a
  // quarter of the margin makes the sampled certificate "every interior
  // point within residual_margin of a ball or the boundary" hold.
  double mid = 0.5 * (a + b);
  double rho = 0.49 * wd;
  for (int level = 0; rho >= 0.25 * residual_margin; ++level, rho *= 0.5) {
    double pitch = (level == 0) ? 2.0 * rho : rho;
    std::vector<double> x1s;
    if (level == 0) {
      x1s.push_back(mid);
    } else {
      for (double x1 = a + rho; x1 <= b - rho + 1e-13; x1 += pitch)
        x1s.push_back(x1);
    }
    long per_axis =
        std::max<long>(1, static_cast<long>(std::floor(2.0 * window / pitch)) + 1);
    std::vector<long> idx(static_cast<std::size_t>(extra), 0);
    for (;;) {
      Vec c(chart_dim);
      for (int d = 0; d < extra; ++d)
        c[d + 1] = -window + idx[static_cast<std::size_t>(d)] * pitch;
      for (double x1 : x1s) {
        c[0] = x1;
        if (fits(c, rho)) {
          pack.balls.push_back(ChartBall{c, rho});
          if (pack.balls.size() > budget)
            raise(ErrorKind::BudgetExceeded, "slab packing exceeded ball budget");
        }
      }
      int d = extra - 1;
      while (d >= 0 && ++idx[static_cast<std::size_t>(d)] >= per_axis) {
        idx[static_cast<std::size_t>(d)] = 0;
        --d;
      }
      if (d < 0) break;
    }
  }
  pack.residual_margin = residual_margin;
  return pack;
}

double NonrigidExample::slab_offset(std::size_t slab_index) const {
  const auto& iv = packings[slab_index].slab_interval;
  return cantor.kept_measure_below(iv.first);
}

NonrigidExample nonrigid_example(int n, int cantor_depth, double window,
                                 double residual_margin, std::size_t ball_budget) {
  if (n < 2)
    raise(ErrorKind::NumericalDegeneracy, "nonrigid example needs n >= 2");
  NonrigidExample ex;
  ex.cantor = fat_cantor(cantor_depth);
  ex.window = window;

  std::vector<Cap> caps, caps_prime;
  std::size_t total = 0;
  for (const auto& rem : ex.cantor.removed) {
    SlabPacking pack = pack_slab(rem.a.value(), rem.b.value(), n, window,
                                 residual_margin, ball_budget);
    total += pack.balls.size();
    if (total > ball_budget)
      raise(ErrorKind::BudgetExceeded, "nonrigid example exceeded ball budget");
    double offset = ex.cantor.kept_measure_below(rem.a.value());
    for (const ChartBall& b : pack.balls) {
      caps.push_back(cap_from_chart_ball(b));
      ChartBall moved = b;
      moved.center[0] += offset;
      caps_prime.push_back(cap_from_chart_ball(moved));
    }
    ex.packings.push_back(std::move(pack));
  }
  ex.s = make_schottky_set(std::move(caps));
  ex.s.truncation = SchottkySet::Truncation{0.0, residual_margin, cantor_depth, window};
  ex.s_prime = make_schottky_set(std::move(caps_prime));
  ex.s_prime.truncation = ex.s.truncation;

  FatCantorSet k = ex.cantor;
  ex.f = MapUnderTest::from_chart_fn(n, [k](const Vec& y) {
    Vec out = y;
    out[0] = h_map(k, y[0]);
    return out;
  });
  return ex;
}

Region cantor_product_complement_region(const FatCantorSet& k, int sphere_dim) {
  Region r;
  r.description = "complement of a thick-Cantor product";
  r.sphere_dim = sphere_dim;
  r.whole_sphere = false;
  r.dist_to_boundary_chart = [k](const Vec& y) {
    double acc = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      double d = k.dist(y[i]);
      acc += d * d;
    }
    return std::sqrt(acc);
  };
  return r;
}

SchottkySet PorousSet::as_schottky_set() const {
  std::vector<Cap> caps;
  caps.reserve(balls.size());
  for (const ChartBall& b : balls) caps.push_back(cap_from_chart_ball(b));
  SchottkySet s = make_schottky_set(std::move(caps), region);
  s.truncation = SchottkySet::Truncation{2.0 * smallest_radius, 0.0,
                                         static_cast<int>(steps.size()), 0.0};
  return s;
}

bool PorousSet::in_set_chart(const Vec& y) const {
  if (!region.contains_chart(y)) return false;
  for (const ChartBall& b : balls)
    if ((y - b.center).norm() < b.radius) return false;
  return true;
}

double PorousSet::dist_to_boundary_chart(const Vec& y) const {
  double d = region.dist_to_boundary_chart(y);
  for (const ChartBall& b : balls)
    d = std::min(d, (y - b.center).norm() - b.radius);
  return d;
}

PorousSet porous_relative_schottky(const Region& region, int steps, double scale,
                                   double window_halfwidth,
                                   std::size_t ball_budget) {
  if (steps < 1)
    raise(ErrorKind::NumericalDegeneracy, "needs at least one step");
  if (region.whole_sphere)
    raise(ErrorKind::NumericalDegeneracy,
          "porous construction needs a proper region");
  int n = region.sphere_dim;

  PorousSet t;
  t.region = region;
  t.scale = scale;

  double max_radius = scale / 4.0;
  BallGrid grid(n, max_radius);

  for (int s = 1; s <= steps; ++s) {
    double sep = scale / std::pow(2.0, s - 1);
    double rad = scale / std::pow(2.0, s + 1);
    double pitch = scale / std::pow(2.0, s + 2);

    // distance to the boundary of D_{s-1} = region boundary plus the spheres
    // of all removed balls; only balls within reach can violate sep
    auto dist_ok = [&](const Vec& y) {
      if (region.dist_to_boundary_chart(y) < sep) return false;
      bool ok = true;
      grid.for_candidates(y, sep + max_radius, [&](std::size_t idx) {
        const ChartBall& b = t.balls[idx];
        if ((y - b.center).norm() - b.radius < sep) ok = false;
      });
      return ok;
    };

    PorousStep step;
    step.k = s;
    step.separation = sep;
    step.radius = rad;

    // greedy maximal sep-separated subset over the lexicographic grid
    BallGrid net_grid(n, sep);
    std::vector<Vec> net;
    long per_axis = static_cast<long>(std::floor(2.0 * window_halfwidth / pitch)) + 1;
    std::vector<long> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
      Vec y(n);
      for (int d = 0; d < n; ++d)
        y[d] = -window_halfwidth + idx[static_cast<std::size_t>(d)] * pitch;
      if (dist_ok(y)) {
        bool separated = true;
        // net candidates act as zero-radius balls in their own grid
        net_grid.for_candidates(y, sep, [&](std::size_t ni) {
          if ((y - net[ni]).norm() < sep) separated = false;
        });
        if (separated) {
          net.push_back(y);
          net_grid.insert(y, 0.0, net.size() - 1);
        }
      }
      int d = n - 1;
      while (d >= 0 && ++idx[static_cast<std::size_t>(d)] >= per_axis) {
        idx[static_cast<std::size_t>(d)] = 0;
        --d;
      }
      if (d < 0) break;
    }

    if (net.empty())
      raise(ErrorKind::EmptyNet,
            "step " + std::to_string(s) + " produced no net points");

    for (const Vec& c : net) {
      t.balls.push_back(ChartBall{c, rad});
      grid.insert(c, rad, t.balls.size() - 1);
      if (t.balls.size() > ball_budget)
        raise(ErrorKind::BudgetExceeded, "porous construction exceeded ball budget");
    }
    step.net = std::move(net);
    t.steps.push_back(std::move(step));
    t.smallest_radius = rad;
  }
  return t;
}

PorosityReport porosity_check(const PorousSet& t, const Vec& window_center,
                              double window_halfwidth, double rho0, double c_bound,
                              double floor_r, std::size_t sample_budget, Rng& rng) {
  PorosityReport rep;
  rep.floor_r = floor_r;
  rep.rho0 = rho0;
  rep.min_feasible_c = 0.0;
  int n = static_cast<int>(window_center.size());

  double max_radius = 0.0;
  for (const ChartBall& b : t.balls) max_radius = std::max(max_radius, b.radius);
  BallGrid grid(n, std::max(max_radius, 1e-9));
  for (std::size_t i = 0; i < t.balls.size(); ++i)
    grid.insert(t.balls[i].center, t.balls[i].radius, i);

  const int kRungs = 12;
  std::size_t produced = 0;
  std::size_t attempts = 0;
  while (produced < sample_budget && attempts < 200 * sample_budget) {
    ++attempts;
    Vec y(n);
    for (int d = 0; d < n; ++d)
      y[d] = window_center[d] + rng.uniform(-window_halfwidth, window_halfwidth);
    if (!t.in_set_chart(y)) continue;
    ++produced;
    for (int j = 0; j < kRungs; ++j) {
      double r = floor_r * std::pow(rho0 / floor_r,
                                    (j + 0.5) / static_cast<double>(kRungs));
      double best_c = std::numeric_limits<double>::infinity();
      grid.for_candidates(y, r + max_radius, [&](std::size_t idx) {
        const ChartBall& b = t.balls[idx];
        if ((y - b.center).norm() >= r + b.radius) return;  // misses B(y,r)
        double diam = 2.0 * b.radius;
        best_c = std::min(best_c, std::max(r / diam, diam / r));
      });
      if (std::isinf(best_c)) {
        ++rep.failures;
        rep.min_feasible_c = best_c;
      } else if (!std::isinf(rep.min_feasible_c)) {
        rep.min_feasible_c = std::max(rep.min_feasible_c, best_c);
      }
    }
  }
  rep.samples = produced;
  rep.pass = produced > 0 && rep.failures == 0 &&
             rep.min_feasible_c <= c_bound;
  return rep;
}

}  // namespace schottky
