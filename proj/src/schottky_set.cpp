#include "schottky/schottky_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "schottky/kern/kernels.hpp"
#include "schottky/numerics.hpp"
#include "schottky/parallel.hpp"

namespace schottky {

Region whole_sphere_region(int sphere_dim) {
  Region r;
  r.description = "whole sphere";
  r.sphere_dim = sphere_dim;
  r.whole_sphere = true;
  r.dist_to_boundary_chart = [](const Vec&) { return 1e300; };
  return r;
}

Region chart_ball_region(Vec center, double radius) {
  Region r;
  std::ostringstream os;
  os << "chart ball radius " << radius;
  r.description = os.str();
  r.sphere_dim = static_cast<int>(center.size());
  r.whole_sphere = false;
  r.dist_to_boundary_chart = [c = std::move(center), radius](const Vec& y) {
    return radius - (y - c).norm();
  };
  return r;
}

bool region_connectivity_witness(const Region& region, double window_halfwidth,
                                 int cells_per_axis) {
  int n = region.sphere_dim;
  if (n < 1 || n > 3)
    raise(ErrorKind::NumericalDegeneracy,
          "connectivity witness supports chart dimensions 1..3");
  if (region.whole_sphere) return true;

  long total = 1;
  for (int i = 0; i < n; ++i) total *= cells_per_axis;
  std::vector<char> inside(total, 0);
  std::vector<long> parent(total);
  std::iota(parent.begin(), parent.end(), 0L);
  std::function<long(long)> find = [&](long a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](long a, long b) { parent[find(a)] = find(b); };

  double h = 2.0 * window_halfwidth / cells_per_axis;
  auto cell_center = [&](long idx) {
    Vec y(n);
    for (int d = 0; d < n; ++d) {
      long c = idx % cells_per_axis;
      idx /= cells_per_axis;
      y[d] = -window_halfwidth + (c + 0.5) * h;
    }
    return y;
  };
  for (long i = 0; i < total; ++i)
    inside[i] = region.contains_chart(cell_center(i)) ? 1 : 0;

  long stride = 1;
  for (int d = 0; d < n; ++d) {
    for (long i = 0; i < total; ++i) {
      if (!inside[i]) continue;
      long c = (i / stride) % cells_per_axis;
      if (c + 1 < cells_per_axis && inside[i + stride]) unite(i, i + stride);
    }
    stride *= cells_per_axis;
  }
  long root = -1;
  for (long i = 0; i < total; ++i) {
    if (!inside[i]) continue;
    long r = find(i);
    if (root == -1) root = r;
    else if (r != root) return false;
  }
  return root != -1;
}

const Cap& SchottkySet::cap(int index) const {
  if (index < 1 || index > cap_count())
    raise(ErrorKind::IndexOutOfRange,
          "cap index " + std::to_string(index) + " out of 1.." +
              std::to_string(cap_count()));
  return caps[static_cast<std::size_t>(index - 1)];
}

SchottkySet make_schottky_set(std::vector<Cap> caps, std::optional<Region> region) {
  if (caps.empty())
    raise(ErrorKind::NumericalDegeneracy, "Schottky set needs caps");
  SchottkySet s;
  s.n = caps.front().sphere_dim();
  s.caps = std::move(caps);
  s.region = std::move(region);
  return s;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  if (ok()) {
    os << "valid, " << cap_count << " caps";
    return os.str();
  }
  os << violations.size() << " violation(s):";
  for (const auto& v : violations) os << "\n  " << v.detail;
  return os.str();
}

ValidationReport validate(const SchottkySet& s) {
  ValidationReport rep;
  rep.cap_count = s.cap_count();

  if (s.cap_count() < 3) {
    Violation v;
    v.kind = Violation::Kind::TooFewCaps;
    v.amount = s.cap_count();
    v.detail = "fewer than three complementary components (" +
               std::to_string(s.cap_count()) + ")";
    rep.violations.push_back(std::move(v));
  }
  for (int i = 1; i <= s.cap_count(); ++i) {
    if (s.cap(i).sphere_dim() != s.n) {
      Violation v;
      v.kind = Violation::Kind::DimensionMismatch;
      v.index_a = i;
      v.detail = "cap " + std::to_string(i) + " has wrong dimension";
      rep.violations.push_back(std::move(v));
    }
  }
  for (int i = 1; i <= s.cap_count(); ++i) {
    for (int j = i + 1; j <= s.cap_count(); ++j) {
      double overlap = cap_overlap_angle(s.cap(i), s.cap(j));
      if (overlap > 1e-12) {
        Violation v;
        v.kind = Violation::Kind::Overlap;
        v.index_a = i;
        v.index_b = j;
        v.amount = overlap;
        std::ostringstream os;
        os << "caps " << i << " and " << j << " overlap by angle " << overlap;
        v.detail = os.str();
        rep.violations.push_back(std::move(v));
      }
    }
  }
  if (s.region && !s.region->whole_sphere) {
    for (int i = 1; i <= s.cap_count(); ++i) {
      bool contained = false;
      std::string why;
      try {
        ChartCircle cc = chart_circle_from_cap(s.cap(i));
        if (!cc.cap_is_interior) {
          why = "cap contains the chart pole";
        } else {
          double d = s.region->dist_to_boundary_chart(cc.ball.center);
          if (d >= cc.ball.radius - 1e-12) contained = true;
          else {
            std::ostringstream os;
            os << "closure escapes region by " << cc.ball.radius - d;
            why = os.str();
          }
        }
      } catch (const Error& e) {
        why = e.what();
      }
      if (!contained) {
        Violation v;
        v.kind = Violation::Kind::RegionContainment;
        v.index_a = i;
        v.detail = "cap " + std::to_string(i) + " not contained in region: " + why;
        rep.violations.push_back(std::move(v));
      }
    }
  }
  return rep;
}

double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

double cap_area(int n, double theta) {
  if (theta <= 0.0) return 0.0;
  if (theta >= M_PI) return sphere_area(n);
  if (theta > M_PI_2) return sphere_area(n) - cap_area(n, M_PI - theta);
  double s = std::sin(theta);
  return 0.5 * sphere_area(n) *
         regularized_incomplete_beta(0.5 * n, 0.5, s * s);
}

double measure(const SchottkySet& s) {
  if (s.region && !s.region->whole_sphere)
    raise(ErrorKind::NotWholeSphere,
          "exact measure needs a whole-sphere set; use relative_measure");
  double total = sphere_area(s.n);
  for (const Cap& c : s.caps) total -= cap_area(s.n, c.angular_radius());
  return total;
}

RelativeMeasure relative_measure(const SchottkySet& s, std::uint64_t seed,
                                 std::size_t samples, int threads) {
  const auto& k = kern::active();
  int dim = s.n + 1;
  std::size_t hits_total = 0;
  std::vector<std::size_t> hits_by_chunk(std::max(1, threads), 0);
  Rng base(seed);

  for_chunks(samples, threads, [&](int chunk, std::size_t b, std::size_t e) {
    Rng rng = base.split(static_cast<std::uint64_t>(chunk));
    std::size_t cnt = e - b;
    std::vector<double> soa(static_cast<std::size_t>(dim) * cnt);
    for (std::size_t i = 0; i < cnt; ++i) {
      Vec p = rng.unit_vec(dim);
      for (int r = 0; r < dim; ++r) soa[static_cast<std::size_t>(r) * cnt + i] = p[r];
    }
    std::vector<double> margin(cnt);
    std::vector<char> in_cap(cnt, 0);
    for (const Cap& c : s.caps) {
      k.affine_margin(soa.data(), dim, cnt, c.normal().data(), c.offset(),
                      margin.data());
      for (std::size_t i = 0; i < cnt; ++i)
        if (margin[i] > 0.0) in_cap[i] = 1;
    }
    std::size_t h = 0;
    for (std::size_t i = 0; i < cnt; ++i) {
      if (in_cap[i]) continue;
      if (s.region && !s.region->whole_sphere) {
        Vec p(dim);
        for (int r = 0; r < dim; ++r) p[r] = soa[static_cast<std::size_t>(r) * cnt + i];
        if (1.0 - p[dim - 1] < 1e-12) continue;  // pole: measure-zero
        Vec y = p.head(dim - 1) / (1.0 - p[dim - 1]);
        if (!s.region->contains_chart(y)) continue;
      }
      ++h;
    }
    hits_by_chunk[static_cast<std::size_t>(chunk)] = h;
  });
  for (std::size_t h : hits_by_chunk) hits_total += h;

  double area = sphere_area(s.n);
  double p = static_cast<double>(hits_total) / static_cast<double>(samples);
  RelativeMeasure rm;
  rm.value = area * p;
  rm.std_error = area * std::sqrt(std::max(p * (1.0 - p), 0.0) /
                                  static_cast<double>(samples));
  rm.samples = samples;
  return rm;
}

Classification contains(const SchottkySet& s, const SpherePoint& p,
                        double boundary_tol) {
  for (int i = 1; i <= s.cap_count(); ++i) {
    double m = s.cap(i).margin(p);
    if (std::fabs(m) <= boundary_tol)
      return Classification{Membership::OnPeripheralSphere, i};
    if (m > 0.0) return Classification{Membership::InCap, i};
  }
  return Classification{Membership::InSet, 0};
}

namespace {

// Householder involution mapping `from` to `to` (unit vectors).
Mat householder_swap(const Vec& from, const Vec& to) {
  int d = static_cast<int>(from.size());
  Vec w = from - to;
  double n2 = w.squaredNorm();
  if (n2 < 1e-24) return Mat::Identity(d, d);
  return Mat::Identity(d, d) - (2.0 / n2) * (w * w.transpose());
}

double ambient_margin(const std::optional<Cap>& ambient, const SpherePoint& p) {
  return ambient ? ambient->margin(p) : 1.0;
}

// Spherical interpolation between unit vectors of R^d (any d), shorter arc.
Vec slerp(const Vec& a, const Vec& b, double s) {
  double c = std::clamp(a.dot(b), -1.0, 1.0);
  double ang = std::acos(c);
  if (ang < 1e-14) return a;
  double sa = std::sin((1.0 - s) * ang), sb = std::sin(s * ang);
  Vec v = (sa * a + sb * b) / std::sin(ang);
  return v / v.norm();
}

struct CapRun {
  int cap_index;      // 1-based
  std::size_t first;  // first sample inside closure
  std::size_t last;   // last sample inside closure
};

}  // namespace

std::vector<SpherePoint> connect_in_ball(const SchottkySet& s,
                                         const SpherePoint& x,
                                         const SpherePoint& y,
                                         const std::optional<Cap>& ambient,
                                         double eps) {
  if (eps <= 0.0)
    raise(ErrorKind::NumericalDegeneracy, "diameter floor must be positive");
  auto check_member = [&](const SpherePoint& p, const char* which) {
    Classification c = contains(s, p);
    if (c.kind == Membership::InCap)
      raise(ErrorKind::NotInSet,
            std::string(which) + " lies in cap " + std::to_string(c.index));
    if (ambient_margin(ambient, p) < -kBoundaryTol)
      raise(ErrorKind::NotInSet, std::string(which) + " lies outside the ambient ball");
  };
  check_member(x, "x");
  check_member(y, "y");

  if (chordal(x, y) < 1e-14) return {x, y};

  int d = x.ambient_dim();

  // Projection pole: outside the ambient cap, away from x and y.
  Vec pole;
  if (ambient) {
    pole = -ambient->normal();
  } else {
    Vec sum = x.coords() + y.coords();
    if (sum.norm() > 0.2) {
      pole = -sum / sum.norm();
    } else {
      pole = Vec::Unit(d, 0);
      pole -= pole.dot(x.coords()) * x.coords();
      double nn = pole.norm();
      if (nn < 1e-8) {
        pole = Vec::Unit(d, 1);
        pole -= pole.dot(x.coords()) * x.coords();
        nn = pole.norm();
      }
      pole /= nn;
    }
  }
  Mat h = householder_swap(pole, Vec::Unit(d, d - 1));

  auto to_plane = [&](const SpherePoint& p) {
    Vec q = h * p.coords();
    double denom = 1.0 - q[d - 1];
    if (denom < 1e-10)
      raise(ErrorKind::NoArcInAmbient, "endpoint collides with projection pole");
    return Vec(q.head(d - 1) / denom);
  };
  auto from_plane = [&](const Vec& z) {
    double r2 = z.squaredNorm();
    Vec q(d);
    q.head(d - 1) = 2.0 * z / (r2 + 1.0);
    q[d - 1] = (r2 - 1.0) / (r2 + 1.0);
    return SpherePoint(Vec(h * q));
  };

  Vec zx = to_plane(x), zy = to_plane(y);

  // Relevant caps: diameter at or above the floor.
  std::vector<int> relevant;
  for (int i = 1; i <= s.cap_count(); ++i)
    if (s.cap(i).chordal_diameter() >= eps) relevant.push_back(i);

  const std::size_t kSamples = 4096;
  std::vector<SpherePoint> arc;
  arc.reserve(kSamples + 1);
  for (std::size_t j = 0; j <= kSamples; ++j) {
    double t = static_cast<double>(j) / kSamples;
    arc.push_back(from_plane((1.0 - t) * zx + t * zy));
  }

  // Maximal closure runs per cap (a circle meets a ball in one arc).
  std::vector<CapRun> runs;
  for (int ci : relevant) {
    const Cap& c = s.cap(ci);
    std::size_t first = arc.size(), last = 0;
    for (std::size_t j = 0; j < arc.size(); ++j) {
      if (c.margin(arc[j]) >= -kBoundaryTol) {
        first = std::min(first, j);
        last = std::max(last, j);
      }
    }
    if (first >= arc.size()) continue;
    bool interior_hit = false;
    for (std::size_t j = first; j <= last; ++j)
      if (c.margin(arc[j]) > kBoundaryTol) interior_hit = true;
    if (!interior_hit) continue;  // grazing contact only
    runs.push_back(CapRun{ci, first, last});
  }
  std::sort(runs.begin(), runs.end(),
            [](const CapRun& a, const CapRun& b) { return a.first < b.first; });
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].first <= runs[r - 1].last)
      raise(ErrorKind::NoArcInAmbient, "overlapping cap traversals on base arc");

  // Bisect the crossing parameter of cap `c` between samples a (outside) and
  // b (inside closure), then land exactly on the boundary sphere.
  auto crossing_point = [&](const Cap& c, double ta, double tb) {
    for (int it = 0; it < 60; ++it) {
      double tm = 0.5 * (ta + tb);
      SpherePoint p = from_plane((1.0 - tm) * zx + tm * zy);
      if (c.margin(p) >= 0.0) tb = tm;
      else ta = tm;
    }
    SpherePoint p = from_plane((1.0 - tb) * zx + tb * zy);
    return c.boundary_point(p.coords());
  };

  // Detour from p to q along the peripheral sphere of cap c, staying inside
  // the ambient cap.
  auto detour = [&](const Cap& c, const SpherePoint& p, const SpherePoint& q,
                    std::vector<SpherePoint>& out) {
    double t = c.offset();
    double rho = std::sin(c.angular_radius());
    Vec m = t * c.normal();
    auto to_small = [&](const SpherePoint& pt) {
      Vec v = pt.coords() - m;
      v -= v.dot(c.normal()) * c.normal();
      double nn = v.norm();
      if (nn < 1e-14)
        raise(ErrorKind::NoArcInAmbient, "degenerate boundary decomposition");
      return Vec(v / nn);
    };
    Vec vp = to_small(p), vq = to_small(q);

    // Trace of the ambient cap on the unit sphere of the peripheral
    // hyperplane: {v : <v, w> > tau}.
    bool constrained = false;
    Vec w;
    double tau = -2.0;
    if (ambient) {
      Vec g = ambient->normal() - ambient->normal().dot(c.normal()) * c.normal();
      double gamma = g.norm();
      double base = ambient->offset() - t * c.normal().dot(ambient->normal());
      if (gamma > 1e-12) {
        w = g / gamma;
        tau = base / (rho * gamma);
        constrained = tau > -1.0;
      } else if (base >= 0.0) {
        raise(ErrorKind::NoArcInAmbient, "peripheral sphere outside ambient ball");
      }
    }

    auto emit = [&](const Vec& va, const Vec& vb) {
      const int kM = 128;
      for (int j = 1; j <= kM; ++j) {
        Vec v = slerp(va, vb, static_cast<double>(j) / kM);
        out.push_back(SpherePoint(Vec(m + rho * v)));
      }
    };

    bool direct_ok = true;
    if ((vp + vq).norm() < 1e-9) direct_ok = false;  // antipodal on the sphere
    if (direct_ok && constrained) {
      for (int j = 0; j <= 64 && direct_ok; ++j) {
        Vec v = slerp(vp, vq, j / 64.0);
        if (v.dot(w) < tau - 1e-12) direct_ok = false;
      }
    }
    if (direct_ok) {
      emit(vp, vq);
    } else {
      // Route through the deepest inside direction; geodesics toward the
      // trace-cap center stay inside it. All candidates live in the
      // hyperplane orthogonal to the peripheral normal.
      Vec mid = constrained ? w : Vec(-(vp + vq));
      if (mid.norm() < 1e-9) {
        for (const Vec& b : c.boundary_basis()) {
          Vec cand = b - b.dot(vp) * vp;
          if (cand.norm() > 0.5) {
            mid = cand;
            break;
          }
        }
      }
      if (mid.norm() < 1e-9)
        raise(ErrorKind::NoArcInAmbient, "no detour direction available");
      mid /= mid.norm();
      emit(vp, mid);
      emit(mid, vq);
    }
  };

  std::vector<SpherePoint> path;
  path.push_back(x);
  std::size_t cursor = 0;
  for (const CapRun& run : runs) {
    const Cap& c = s.cap(run.cap_index);
    // copy free samples before the run
    for (std::size_t j = cursor + 1; j < run.first; ++j) path.push_back(arc[j]);
    double step = 1.0 / kSamples;
    SpherePoint pin = (run.first == 0)
                          ? c.boundary_point(arc.front().coords())
                          : crossing_point(c, (run.first - 1) * step, run.first * step);
    SpherePoint pout = (run.last == kSamples)
                           ? c.boundary_point(arc.back().coords())
                           : crossing_point(c, (run.last + 1) * step, run.last * step);
    path.push_back(pin);
    detour(c, pin, pout, path);
    cursor = run.last;
  }
  for (std::size_t j = cursor + 1; j < arc.size(); ++j) path.push_back(arc[j]);
  path.back() = y;

  // Drop consecutive duplicates.
  std::vector<SpherePoint> cleaned;
  for (const auto& p : path)
    if (cleaned.empty() || chordal(cleaned.back(), p) > 1e-13) cleaned.push_back(p);
  if (chordal(cleaned.back(), y) > 1e-13) cleaned.push_back(y);
  return cleaned;
}

bool is_peripheral(const SchottkySet& s, const Cap& candidate,
                   int boundary_samples) {
  std::vector<Vec> basis = candidate.boundary_basis();
  Rng rng(0xC0FFEE);
  for (int j = 0; j < boundary_samples; ++j) {
    Vec v;
    if (s.n == 2) {
      double phi = 2.0 * M_PI * j / boundary_samples;
      v = std::cos(phi) * basis[0] + std::sin(phi) * basis[1];
    } else {
      Vec g = rng.gaussian_vec(static_cast<int>(basis.size()));
      v = Vec::Zero(candidate.normal().size());
      for (std::size_t b = 0; b < basis.size(); ++b) v += g[b] * basis[b];
      v /= v.norm();
    }
    SpherePoint p(Vec(candidate.offset() * candidate.normal() +
                      std::sin(candidate.angular_radius()) * v));
    Classification c = contains(s, p);
    if (c.kind == Membership::InCap)
      raise(ErrorKind::NotContained,
            "candidate sphere enters cap " + std::to_string(c.index));
  }
  for (const Cap& c : s.caps)
    if (same_boundary_sphere(candidate, c)) return true;
  return false;
}

}  // namespace schottky
