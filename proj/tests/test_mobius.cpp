#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "schottky/mobius.hpp"

using namespace schottky;
using schottky::testing::mat_inf_dist;

namespace {

Cap equatorial_cap(int n) {
  Vec u = Vec::Zero(n + 1);
  u[n] = 1.0;
  return Cap(u, 0.0);
}

Cap random_cap(int n, Rng& rng) {
  return Cap(rng.unit_vec(n + 1), std::cos(rng.uniform(0.2, 1.2)));
}

}  // namespace

TEST_CASE("chart round trip and chordal identities") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Vec y = rng.gaussian_vec(2) * 3.0;
    SpherePoint p = SpherePoint::from_chart(y);
    CHECK(std::fabs(p.coords().norm() - 1.0) <= 1e-12);
    CHECK((p.to_chart() - y).norm() <= 1e-10 * (1.0 + y.norm()));
  }
  for (int trial = 0; trial < 50; ++trial) {
    Vec a = rng.gaussian_vec(2), b = rng.gaussian_vec(2);
    double d = chordal(SpherePoint::from_chart(a), SpherePoint::from_chart(b));
    CHECK(d <= 2.0 + 1e-15);
    double formula = 2.0 * (a - b).norm() /
                     std::sqrt((1.0 + a.squaredNorm()) * (1.0 + b.squaredNorm()));
    CHECK(std::fabs(d - formula) <= 1e-12);
  }
}

TEST_CASE("reflection in the equatorial cap is the coordinate mirror") {
  for (int n : {2, 3}) {
    MobiusMap r = reflection_in_cap(equatorial_cap(n));
    CHECK(r.parity() == -1);
    Mat expect = Mat::Identity(n + 2, n + 2);
    expect(n, n) = -1.0;
    CHECK(mat_inf_dist(r.matrix(), expect) <= 1e-14);

    Vec north = Vec::Zero(n + 1);
    north[n] = 1.0;
    SpherePoint img = apply_point(r, SpherePoint(north));
    CHECK(chordal(img, SpherePoint(Vec(-north))) <= 1e-12);
  }
}

TEST_CASE("reflections are involutions and fix their boundary sphere") {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    Cap c = random_cap(2, rng);
    MobiusMap r = reflection_in_cap(c);
    CHECK(mat_inf_dist((r.matrix() * r.matrix()), Mat::Identity(4, 4)) <= 1e-10);
    CHECK(r.lorentz_defect() <= 1e-12);
    for (int k = 0; k < 10; ++k) {
      SpherePoint b = c.boundary_point(rng.unit_vec(3));
      CHECK(chordal(apply_point(r, b), b) <= 1e-10);
    }
  }
}

TEST_CASE("unit-circle reflection matches the chart inversion oracle") {
  // cap whose chart trace is the unit circle
  Cap c = cap_from_chart_ball(ChartBall{Vec::Zero(2), 1.0});
  MobiusMap r = reflection_in_cap(c);

  Vec two(2);
  two << 2.0, 0.0;
  Vec img = apply_point(r, SpherePoint::from_chart(two)).to_chart();
  CHECK(std::fabs(img[0] - 0.5) <= 1e-10);
  CHECK(std::fabs(img[1]) <= 1e-10);

  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    Vec z = rng.gaussian_vec(2) * 1.5;
    if (z.norm() < 1e-3) continue;
    Vec expect = z / z.squaredNorm();  // inversion oracle x -> x/|x|^2
    Vec got = apply_point(r, SpherePoint::from_chart(z)).to_chart();
    CHECK((got - expect).norm() <= 1e-9 * (1.0 + expect.norm()));
  }
}

TEST_CASE("apply_cap: identity, mirror symmetry, boundary consistency") {
  Rng rng(44);
  Vec un(3);
  un << 0.3, 0.2, 0.8;
  Cap northern(un / un.norm(), 0.6);

  Cap same = apply_cap(MobiusMap::identity(2), northern);
  CHECK((same.normal() - northern.normal()).norm() <= 1e-14);
  CHECK(std::fabs(same.offset() - northern.offset()) <= 1e-14);

  MobiusMap mirror = reflection_in_cap(equatorial_cap(2));
  Cap flipped = apply_cap(mirror, northern);
  CHECK(std::fabs(flipped.normal()[2] + northern.normal()[2]) <= 1e-12);
  CHECK(std::fabs(flipped.offset() - northern.offset()) <= 1e-12);

  for (int trial = 0; trial < 5; ++trial) {
    MobiusMap m = reflection_in_cap(random_cap(2, rng));
    Cap c = random_cap(2, rng);
    Cap mc = apply_cap(m, c);
    // side convention: an interior sample lands inside the image
    SpherePoint inside = c.center_point();
    CHECK(mc.margin(apply_point(m, inside)) > 0.0);
    for (int k = 0; k < 100; ++k) {
      SpherePoint b = c.boundary_point(rng.unit_vec(3));
      CHECK(std::fabs(mc.margin(apply_point(m, b))) <= 1e-9);
    }
  }
}

TEST_CASE("cross-ratio: chart limit case, exact symmetries, formula oracle") {
  // chart points 0, 2, 1, infinity
  Vec z0(2), z2(2), z1(2);
  z0 << 0, 0;
  z2 << 2, 0;
  z1 << 1, 0;
  double cr = cross_ratio(SpherePoint::from_chart(z0), SpherePoint::from_chart(z2),
                          SpherePoint::from_chart(z1), SpherePoint::chart_pole(2));
  CHECK(std::fabs(cr - 1.0) <= 1e-12);

  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    SpherePoint a(rng.unit_vec(3)), b(rng.unit_vec(3)), c(rng.unit_vec(3)),
        d(rng.unit_vec(3));
    double v;
    try {
      v = cross_ratio(a, b, c, d);
    } catch (const Error&) {
      continue;
    }
    // exact algebraic symmetries of the displayed formula
    CHECK(cross_ratio(c, d, a, b) == doctest::Approx(v).epsilon(1e-15));
    CHECK(cross_ratio(a, b, d, c) == doctest::Approx(1.0 / v).epsilon(1e-15));
    // independent evaluation from raw coordinates
    auto dist = [](const SpherePoint& x, const SpherePoint& y) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        double t = x.coords()[i] - y.coords()[i];
        s += t * t;
      }
      return std::sqrt(s);
    };
    double direct = dist(a, c) * dist(b, d) / (dist(a, d) * dist(b, c));
    CHECK(std::fabs(v - direct) <= 1e-12 * (1.0 + direct));
  }

  CHECK_THROWS_AS(cross_ratio(SpherePoint::from_chart(z0), SpherePoint::from_chart(z0),
                              SpherePoint::from_chart(z1), SpherePoint::chart_pole(2)),
                  Error);
}

TEST_CASE("compose and inverse") {
  Rng rng(66);
  Cap c1 = random_cap(2, rng), c2 = random_cap(2, rng), c3 = random_cap(2, rng);
  MobiusMap r1 = reflection_in_cap(c1), r2 = reflection_in_cap(c2),
            r3 = reflection_in_cap(c3);

  MobiusMap w = compose(compose(r1, r2), r3);
  CHECK(w.parity() == -1);
  MobiusMap id = compose(w, inverse(w));
  CHECK(mat_inf_dist(id.matrix(), Mat::Identity(4, 4)) <= 1e-10);

  MobiusMap r12 = compose(r1, r2);
  CHECK(r12.parity() == 1);
  for (int k = 0; k < 100; ++k) {
    SpherePoint p(rng.unit_vec(3));
    SpherePoint via_word = apply_point(r12, p);
    SpherePoint via_steps = apply_point(r1, apply_point(r2, p));
    CHECK(chordal(via_word, via_steps) <= 1e-10);
  }
}

TEST_CASE("Lorentz defect stays bounded over 10^4 compositions") {
  // Word products at the lengths the orbit machinery uses: every product of
  // up to 12 reflections keeps a scale-relative defect within 1e-8.
  SchottkySet s = schottky::testing::symmetric_set();
  Rng rng(77);
  double worst = 0.0;
  std::size_t compositions = 0;
  while (compositions < 10000) {
    int len = rng.uniform_int(2, 12);
    ReducedWord w = random_reduced_word(s.cap_count(), len, rng);
    MobiusMap m = word_to_mobius(s, w);
    compositions += w.size();
    worst = std::max(worst, m.lorentz_defect());
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("Moebius maps preserve cross-ratios") {
  Rng rng(88);
  for (int trial = 0; trial < 25; ++trial) {
    MobiusMap m = compose(reflection_in_cap(random_cap(2, rng)),
                          reflection_in_cap(random_cap(2, rng)));
    SpherePoint a(rng.unit_vec(3)), b(rng.unit_vec(3)), c(rng.unit_vec(3)),
        d(rng.unit_vec(3));
    double before;
    try {
      before = cross_ratio(a, b, c, d);
    } catch (const Error&) {
      continue;
    }
    double after = cross_ratio(apply_point(m, a), apply_point(m, b),
                               apply_point(m, c), apply_point(m, d));
    CHECK(std::fabs(after - before) <= 1e-9 * (1.0 + before));
  }
}

TEST_CASE("batch application agrees with pointwise application") {
  Rng rng(101);
  MobiusMap m = compose(reflection_in_cap(random_cap(2, rng)),
                        reflection_in_cap(random_cap(2, rng)));
  const std::size_t count = 257;
  PointBatch in(2, count), out(2, count);
  std::vector<SpherePoint> pts;
  for (std::size_t i = 0; i < count; ++i) {
    pts.push_back(SpherePoint(rng.unit_vec(3)));
    in.set(i, pts.back());
  }
  PointBatch::apply(m, in, out);
  std::vector<double> d(count);
  PointBatch::chordal_distances(in, out, d.data());
  for (std::size_t i = 0; i < count; i += 17) {
    SpherePoint expect = apply_point(m, pts[i]);
    CHECK(chordal(out.get(i), expect) <= 1e-12);
    CHECK(d[i] == doctest::Approx(chordal(pts[i], out.get(i))).epsilon(1e-12));
  }
}

TEST_CASE("attracting fixed point of a two-reflection word") {
  SchottkySet s = schottky::testing::symmetric_set();
  MobiusMap m = compose(reflection_in_cap(s.cap(1)), reflection_in_cap(s.cap(2)));
  SpherePoint fp = attracting_fixed_point(m);
  CHECK(chordal(apply_point(m, fp), fp) <= 1e-9);
}
