#include "schottky/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace schottky {

double DistortionProfile::envelope_at(double t) const {
  for (const Step& s : envelope)
    if (t <= s.t_upper) return s.value;
  return envelope.empty() ? 0.0 : envelope.back().value;
}

bool DistortionProfile::envelope_dominates_samples() const {
  for (const DistortionSample& s : samples)
    if (s.ratio > envelope_at(s.t) + 1e-12) return false;
  return true;
}

DistortionProfile build_profile(std::vector<DistortionSample> samples, int bins) {
  DistortionProfile p;
  p.samples = std::move(samples);
  if (p.samples.empty()) return p;
  double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
  for (const auto& s : p.samples) {
    tmin = std::min(tmin, s.t);
    tmax = std::max(tmax, s.t);
  }
  tmin = std::max(tmin, 1e-300);
  double l0 = std::log(tmin), l1 = std::log(std::max(tmax, tmin * (1.0 + 1e-12)));
  double width = (l1 - l0) / bins;
  std::vector<double> binmax(static_cast<std::size_t>(bins),
                             -std::numeric_limits<double>::infinity());
  for (const auto& s : p.samples) {
    int b = width > 0.0 ? static_cast<int>((std::log(s.t) - l0) / width) : 0;
    b = std::clamp(b, 0, bins - 1);
    binmax[static_cast<std::size_t>(b)] = std::max(binmax[static_cast<std::size_t>(b)], s.ratio);
  }
  double running = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < bins; ++b) {
    if (std::isinf(binmax[static_cast<std::size_t>(b)]) && running < 0.0) continue;
    running = std::max(running, binmax[static_cast<std::size_t>(b)]);
    p.envelope.push_back({std::exp(l0 + (b + 1) * width), running});
  }
  return p;
}

MapUnderTest MapUnderTest::from_mobius(const MobiusMap& m) {
  MapUnderTest t;
  t.sphere_dim = m.sphere_dim();
  t.sphere_eval = [m](const SpherePoint& p) { return apply_point(m, p); };
  t.chart_eval = [m](const Vec& y) {
    return apply_point(m, SpherePoint::from_chart(y)).to_chart();
  };
  return t;
}

MapUnderTest MapUnderTest::from_chart_fn(int sphere_dim,
                                         std::function<Vec(const Vec&)> chart_fn,
                                         std::function<bool(const Vec&)> chart_domain,
                                         std::function<Mat(const Vec&)> jacobian) {
  MapUnderTest t;
  t.sphere_dim = sphere_dim;
  t.chart_eval = chart_fn;
  t.chart_jacobian = std::move(jacobian);
  t.sphere_eval = [chart_fn, sphere_dim](const SpherePoint& p) {
    if (p.near_chart_pole()) return SpherePoint::chart_pole(sphere_dim);
    return SpherePoint::from_chart(chart_fn(p.to_chart()));
  };
  if (chart_domain) {
    t.domain = [chart_domain](const SpherePoint& p) {
      if (p.near_chart_pole()) return false;
      return chart_domain(p.to_chart());
    };
  }
  return t;
}

SphereSampler uniform_sphere_sampler(int sphere_dim) {
  return [sphere_dim](Rng& rng) { return SpherePoint(rng.unit_vec(sphere_dim + 1)); };
}

SphereSampler chart_box_sampler(const Vec& lo, const Vec& hi) {
  return [lo, hi](Rng& rng) {
    Vec y(lo.size());
    for (int i = 0; i < lo.size(); ++i) y[i] = rng.uniform(lo[i], hi[i]);
    return SpherePoint::from_chart(y);
  };
}

DistortionProfile qs_envelope(const MapUnderTest& map, const SphereSampler& sampler,
                              std::size_t triples, Rng& rng, int bins) {
  std::vector<DistortionSample> samples;
  samples.reserve(triples);
  std::size_t degenerate = 0;
  for (std::size_t k = 0; k < triples; ++k) {
    SpherePoint x = sampler(rng), y = sampler(rng), z = sampler(rng);
    if (!map.in_domain(x) || !map.in_domain(y) || !map.in_domain(z)) {
      ++degenerate;
      continue;
    }
    double dxy = chordal(x, y), dxz = chordal(x, z);
    if (dxy < 1e-12 || dxz < 1e-12) {
      ++degenerate;
      continue;
    }
    SpherePoint fx = map.sphere_eval(x), fy = map.sphere_eval(y), fz = map.sphere_eval(z);
    double num = chordal(fx, fy), den = chordal(fx, fz);
    if (den < 1e-14) {
      ++degenerate;
      continue;
    }
    samples.push_back({dxy / dxz, num / den});
  }
  DistortionProfile p = build_profile(std::move(samples), bins);
  p.degenerate_skipped = degenerate;
  return p;
}

DistortionProfile qs_envelope_chart(const std::function<Vec(const Vec&)>& chart_fn,
                                    const Vec& lo, const Vec& hi,
                                    std::size_t triples, Rng& rng, int bins) {
  std::vector<DistortionSample> samples;
  samples.reserve(triples);
  std::size_t degenerate = 0;
  auto pick = [&](Rng& r) {
    Vec y(lo.size());
    for (int i = 0; i < lo.size(); ++i) y[i] = r.uniform(lo[i], hi[i]);
    return y;
  };
  for (std::size_t k = 0; k < triples; ++k) {
    Vec x = pick(rng), y = pick(rng), z = pick(rng);
    double dxy = (x - y).norm(), dxz = (x - z).norm();
    if (dxy < 1e-12 || dxz < 1e-12) {
      ++degenerate;
      continue;
    }
    Vec fx = chart_fn(x), fy = chart_fn(y), fz = chart_fn(z);
    double den = (fx - fz).norm();
    if (den < 1e-14) {
      ++degenerate;
      continue;
    }
    samples.push_back({dxy / dxz, (fx - fy).norm() / den});
  }
  DistortionProfile p = build_profile(std::move(samples), bins);
  p.degenerate_skipped = degenerate;
  return p;
}

DistortionProfile qm_envelope(const MapUnderTest& map, const SphereSampler& sampler,
                              std::size_t quadruples, Rng& rng, int bins) {
  std::vector<DistortionSample> samples;
  samples.reserve(quadruples);
  std::size_t degenerate = 0;
  for (std::size_t k = 0; k < quadruples; ++k) {
    SpherePoint x1 = sampler(rng), x2 = sampler(rng), x3 = sampler(rng), x4 = sampler(rng);
    if (!map.in_domain(x1) || !map.in_domain(x2) || !map.in_domain(x3) ||
        !map.in_domain(x4)) {
      ++degenerate;
      continue;
    }
    try {
      double t = cross_ratio(x1, x2, x3, x4);
      double r = cross_ratio(map.sphere_eval(x1), map.sphere_eval(x2),
                             map.sphere_eval(x3), map.sphere_eval(x4));
      samples.push_back({t, r});
    } catch (const Error&) {
      ++degenerate;
    }
  }
  DistortionProfile p = build_profile(std::move(samples), bins);
  p.degenerate_skipped = degenerate;
  return p;
}

double dilatation_estimate(const MapUnderTest& map, const SpherePoint& x,
                           std::span<const double> radii_ladder, int directions,
                           int tail_rungs) {
  if (radii_ladder.empty())
    raise(ErrorKind::NumericalDegeneracy, "radius ladder is empty");
  if (!map.in_domain(x))
    raise(ErrorKind::DomainEscape, "center point outside the domain");
  int d = x.ambient_dim();

  // Orthonormal tangent frame at x.
  std::vector<Vec> frame;
  std::vector<Vec> acc{x.coords()};
  for (int i = 0; i < d && static_cast<int>(frame.size()) < d - 1; ++i) {
    Vec v = Vec::Unit(d, i);
    for (const Vec& b : acc) v -= v.dot(b) * b;
    double nn = v.norm();
    if (nn > 1e-8) {
      v /= nn;
      acc.push_back(v);
      frame.push_back(v);
    }
  }

  std::vector<double> ladder(radii_ladder.begin(), radii_ladder.end());
  std::sort(ladder.begin(), ladder.end(), std::greater<double>());

  Rng dir_rng(0x5EED);
  SpherePoint fx = map.sphere_eval(x);
  double result = 0.0;
  int considered = 0;
  for (std::size_t ri = 0; ri < ladder.size(); ++ri) {
    double r = ladder[ri];
    double alpha = std::acos(std::clamp(1.0 - 0.5 * r * r, -1.0, 1.0));
    double lmax = 0.0, lmin = std::numeric_limits<double>::infinity();
    // axis directions first, then random tangent mixtures
    for (int j = 0; j < directions; ++j) {
      Vec w;
      std::size_t axes = 2 * frame.size();
      if (static_cast<std::size_t>(j) < axes) {
        w = frame[static_cast<std::size_t>(j) / 2];
        if (j % 2) w = -w;
      } else if (frame.size() == 2) {
        double phi = 2.0 * M_PI * (j - 4) / std::max(1, directions - 4);
        w = std::cos(phi) * frame[0] + std::sin(phi) * frame[1];
      } else {
        Vec g = dir_rng.gaussian_vec(static_cast<int>(frame.size()));
        w = Vec::Zero(d);
        for (std::size_t b = 0; b < frame.size(); ++b) w += g[b] * frame[b];
        w /= w.norm();
      }
      SpherePoint y(Vec(std::cos(alpha) * x.coords() + std::sin(alpha) * w));
      if (!map.in_domain(y))
        raise(ErrorKind::DomainEscape, "sampling sphere leaves the domain");
      double dv = chordal(map.sphere_eval(y), fx);
      lmax = std::max(lmax, dv);
      lmin = std::min(lmin, dv);
    }
    if (lmin < 1e-300)
      raise(ErrorKind::NumericalDegeneracy, "image sphere collapsed");
    bool in_tail = ri + static_cast<std::size_t>(tail_rungs) >= ladder.size();
    if (in_tail) {
      result = std::max(result, lmax / lmin);
      ++considered;
    }
  }
  if (considered == 0)
    raise(ErrorKind::NumericalDegeneracy, "no ladder rungs considered");
  return result;
}

MobiusFit mobius_fit(std::span<const std::pair<SpherePoint, SpherePoint>> pairs,
                     int max_iterations) {
  if (pairs.empty())
    raise(ErrorKind::IllConditioned, "no pairs");
  int d = pairs.front().first.ambient_dim() + 1;
  int n = d - 2;
  if (static_cast<int>(pairs.size()) < n + 3)
    raise(ErrorKind::IllConditioned, "need at least n+3 pairs");
  const int k = static_cast<int>(pairs.size());

  Mat x(d, k), y(d, k);
  for (int i = 0; i < k; ++i) {
    x.col(i) = pairs[static_cast<std::size_t>(i)].first.lift();
    y.col(i) = pairs[static_cast<std::size_t>(i)].second.lift();
  }

  // Conditioning: sources must span R^{n+2} (fails when the points nearly
  // concentrate on a sphere of dimension < n-1).
  Eigen::JacobiSVD<Mat> svd_x(x);
  double cond = svd_x.singularValues()(0) /
                std::max(svd_x.singularValues()(d - 1), 1e-300);
  if (svd_x.singularValues()(d - 1) < 1e-10 || cond > 1e12)
    raise(ErrorKind::IllConditioned,
          "source points nearly concentrate on a lower-dimensional sphere");

  Vec lambda = Vec::Ones(k);
  Mat xxt = x * x.transpose();
  Eigen::LDLT<Mat> solver(xxt);

  auto residual_of = [&](const MobiusMap& m) {
    double acc = 0.0;
    for (const auto& [p, q] : pairs) {
      double dd = chordal(apply_point(m, p), q);
      acc += dd * dd;
    }
    return std::sqrt(acc / k);
  };

  Mat best = Mat::Identity(d, d);
  double best_res = std::numeric_limits<double>::infinity();
  int best_iter = 0;
  double prev_res = std::numeric_limits<double>::infinity();

  for (int it = 0; it < max_iterations; ++it) {
    Mat target = y * lambda.asDiagonal();
    Mat m = solver.solve(x * target.transpose()).transpose();

    double det = m.determinant();
    if (std::fabs(det) < 1e-30)
      raise(ErrorKind::IllConditioned, "fit collapsed to a singular matrix");
    m /= std::pow(std::fabs(det), 1.0 / d);
    for (int rp = 0; rp < 8; ++rp) m = lorentz_reproject(m);

    int parity = m.determinant() < 0.0 ? -1 : 1;
    MobiusMap cand(m, parity);
    double res = residual_of(cand);
    if (res < best_res) {
      best_res = res;
      best = m;
      best_iter = it + 1;
    }

    // scale update
    for (int i = 0; i < k; ++i) {
      Vec mx = m * x.col(i);
      lambda[i] = mx.dot(y.col(i)) / y.col(i).squaredNorm();
    }
    double mean = lambda.cwiseAbs().mean();
    if (mean < 1e-300)
      raise(ErrorKind::IllConditioned, "scales collapsed");
    lambda /= mean;

    if (std::fabs(prev_res - res) < 1e-12 && it > 2) break;
    prev_res = res;
  }

  int parity = best.determinant() < 0.0 ? -1 : 1;
  return MobiusFit{MobiusMap(best, parity), best_res, best_iter};
}

double conformality_defect(const MapUnderTest& map, const Vec& chart_x, double h) {
  int n = static_cast<int>(chart_x.size());
  Mat jac(n, n);
  if (map.chart_jacobian) {
    jac = map.chart_jacobian(chart_x);
  } else {
    if (!map.chart_eval)
      raise(ErrorKind::NumericalDegeneracy, "map has no chart evaluator");
    auto central = [&](double step) {
      Mat j(n, n);
      for (int c = 0; c < n; ++c) {
        Vec xp = chart_x, xm = chart_x;
        xp[c] += step;
        xm[c] -= step;
        j.col(c) = (map.chart_eval(xp) - map.chart_eval(xm)) / (2.0 * step);
      }
      return j;
    };
    // one Richardson step: (4 D(h/2) - D(h)) / 3
    jac = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  }
  Eigen::JacobiSVD<Mat> svd(jac);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(n - 1);
  if (smin < 1e-12)
    raise(ErrorKind::SingularJacobian, "Jacobian numerically singular");
  return smax / smin - 1.0;
}

double hausdorff_distance(std::span<const Vec> a, std::span<const Vec> b) {
  if (a.empty() || b.empty())
    raise(ErrorKind::NumericalDegeneracy, "Hausdorff distance of empty set");
  auto one_sided = [](std::span<const Vec> p, std::span<const Vec> q) {
    double sup = 0.0;
    for (const Vec& u : p) {
      double inf = std::numeric_limits<double>::infinity();
      for (const Vec& v : q) inf = std::min(inf, (u - v).norm());
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

double hausdorff_distance_points(std::span<const SpherePoint> a,
                                 std::span<const SpherePoint> b) {
  std::vector<Vec> va, vb;
  va.reserve(a.size());
  vb.reserve(b.size());
  for (const auto& p : a) va.push_back(p.coords());
  for (const auto& p : b) vb.push_back(p.coords());
  return hausdorff_distance(va, vb);
}

std::vector<Vec> cap_config_samples(const SchottkySet& s, int per_cap) {
  std::vector<Vec> out;
  Rng rng(0xCAB5);
  for (const Cap& c : s.caps) {
    out.push_back(c.normal());  // center direction
    std::vector<Vec> basis = c.boundary_basis();
    for (int j = 0; j < per_cap; ++j) {
      Vec v;
      if (s.n == 2) {
        double phi = 2.0 * M_PI * j / per_cap;
        v = std::cos(phi) * basis[0] + std::sin(phi) * basis[1];
      } else {
        Vec g = rng.gaussian_vec(static_cast<int>(basis.size()));
        v = Vec::Zero(c.normal().size());
        for (std::size_t b = 0; b < basis.size(); ++b) v += g[b] * basis[b];
        v /= v.norm();
      }
      out.push_back(c.offset() * c.normal() + std::sin(c.angular_radius()) * v);
    }
  }
  return out;
}

ChartBallConfig rescale_config(const ChartBallConfig& config, double r) {
  if (r <= 0.0)
    raise(ErrorKind::NumericalDegeneracy, "rescale factor must be positive");
  ChartBallConfig out;
  out.balls.reserve(config.balls.size());
  for (const ChartBall& b : config.balls)
    out.balls.push_back(ChartBall{b.center / r, b.radius / r});
  out.points.reserve(config.points.size());
  for (const Vec& p : config.points) out.points.push_back(p / r);
  return out;
}

std::vector<Vec> chart_config_samples(const ChartBallConfig& config,
                                      double window_halfwidth, int per_ball) {
  std::vector<Vec> out;
  for (const ChartBall& b : config.balls) {
    if (b.center.lpNorm<Eigen::Infinity>() > window_halfwidth + b.radius) continue;
    int n = static_cast<int>(b.center.size());
    if (n == 1) {
      out.push_back(b.center - Vec::Constant(1, b.radius));
      out.push_back(b.center + Vec::Constant(1, b.radius));
      continue;
    }
    for (int j = 0; j < per_ball; ++j) {
      double phi = 2.0 * M_PI * j / per_ball;
      Vec p = b.center;
      p[0] += b.radius * std::cos(phi);
      p[1] += b.radius * std::sin(phi);
      if (p.lpNorm<Eigen::Infinity>() <= window_halfwidth) out.push_back(p);
    }
  }
  for (const Vec& p : config.points)
    if (p.lpNorm<Eigen::Infinity>() <= window_halfwidth) out.push_back(p);
  return out;
}

}  // namespace schottky
