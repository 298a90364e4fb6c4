#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "helpers.hpp"
#include "schottky/group.hpp"

using namespace schottky;
using namespace schottky::testing;

TEST_CASE("reduced words: validation, reduction, palindromes") {
  CHECK_THROWS_AS(ReducedWord({1, 1}), Error);
  CHECK_THROWS_AS(ReducedWord({2, 3, 3, 1}), Error);

  ReducedWord a({1, 2});
  ReducedWord b({2, 1});
  CHECK(reduce_concat(a, b).is_empty());
  CHECK(reduce_concat(a, ReducedWord({1, 3})) == ReducedWord({1, 2, 1, 3}));
  CHECK(ReducedWord({1, 2, 3}).palindrome() == ReducedWord({1, 2, 3, 2, 1}));
  CHECK(ReducedWord({1, 2, 3}).reversed() == ReducedWord({3, 2, 1}));
  CHECK(ReducedWord({1}) < ReducedWord({1, 2}));
  CHECK(ReducedWord({1, 2}) < ReducedWord({2}));

  // reduction matches the group product pointwise
  SchottkySet s = symmetric_set();
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    ReducedWord u = random_reduced_word(3, rng.uniform_int(0, 5), rng);
    ReducedWord v = random_reduced_word(3, rng.uniform_int(0, 5), rng);
    MobiusMap lhs = word_to_mobius(s, reduce_concat(u, v));
    MobiusMap rhs = compose(word_to_mobius(s, u), word_to_mobius(s, v));
    SpherePoint p(rng.unit_vec(3));
    CHECK(chordal(apply_point(lhs, p), apply_point(rhs, p)) <= 1e-9);
  }
}

TEST_CASE("word_to_mobius basics") {
  SchottkySet s = symmetric_set();
  CHECK(mat_inf_dist(word_to_mobius(s, ReducedWord::empty()).matrix(),
                     Mat::Identity(4, 4)) == 0.0);

  // associativity of the triple product, pointwise
  MobiusMap w121 = word_to_mobius(s, ReducedWord({1, 2, 1}));
  MobiusMap lhs = compose(reflection_in_cap(s.cap(1)),
                          compose(reflection_in_cap(s.cap(2)),
                                  reflection_in_cap(s.cap(1))));
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    SpherePoint p(rng.unit_vec(3));
    CHECK(chordal(apply_point(w121, p), apply_point(lhs, p)) <= 1e-10);
  }
  CHECK(w121.parity() == -1);

  CHECK_THROWS_AS(word_to_mobius(s, ReducedWord({4})), Error);
}

TEST_CASE("orbit balls match the unpruned brute-force oracle") {
  SchottkySet s = symmetric_set();
  const double delta = 0.1;

  // soundness of the depth-12 oracle: nothing at depth 12 still qualifies
  auto depth12 = brute_force_orbit(s, 12, 0.0);
  double max12 = 0.0;
  for (const auto& b : depth12)
    if (b.word.size() == 12) max12 = std::max(max12, b.diameter);
  REQUIRE(max12 < delta);

  std::vector<OrbitBall> expect;
  for (const auto& b : depth12)
    if (b.diameter >= delta) expect.push_back(b);

  auto got = orbit_balls(s, delta);
  REQUIRE(got.size() == expect.size());
  std::map<std::string, double> expected_diams;
  for (const auto& b : expect) expected_diams[b.word.str()] = b.diameter;
  for (const auto& b : got) {
    auto it = expected_diams.find(b.word.str());
    REQUIRE(it != expected_diams.end());
    CHECK(b.diameter == doctest::Approx(it->second).epsilon(1e-12));
  }

  // parent links and nesting in (u,t) geometry
  for (const auto& b : got) {
    if (b.word.size() == 1) {
      CHECK(b.parent == -1);
      continue;
    }
    REQUIRE(b.parent >= 0);
    const OrbitBall& par = got[static_cast<std::size_t>(b.parent)];
    CHECK(par.word.size() + 1 == b.word.size());
    CHECK(angle_between(par.cap.normal(), b.cap.normal()) +
              b.cap.angular_radius() <=
          par.cap.angular_radius() + 1e-9);
    CHECK(b.diameter <= par.diameter + 1e-12);
  }

  // same-depth disjointness up to depth 6
  auto depth6 = brute_force_orbit(s, 6, 0.0);
  std::map<std::size_t, std::vector<const OrbitBall*>> by_depth;
  for (const auto& b : depth6) by_depth[b.word.size()].push_back(&b);
  for (const auto& [depth, balls] : by_depth) {
    for (std::size_t i = 0; i < balls.size(); ++i)
      for (std::size_t j = i + 1; j < balls.size(); ++j)
        CHECK(cap_overlap_angle(balls[i]->cap, balls[j]->cap) <= 1e-9);
  }

  // shrinking: per-depth max diameter is non-increasing
  double prev = 1e300;
  for (const auto& [depth, balls] : by_depth) {
    double m = 0.0;
    for (const auto* b : balls) m = std::max(m, b->diameter);
    CHECK(m <= prev + 1e-12);
    prev = m;
  }

  // reduced-word combinatorics at fixed depth: m (m-1)^{k-1}
  std::size_t count2 = 0;
  for (const auto& b : depth6)
    if (b.word.size() <= 2) ++count2;
  CHECK(count2 == 9);  // 3 + 3*2

  // degenerate floors
  CHECK(orbit_balls(s, 3.0).empty());
  CHECK_THROWS_AS(orbit_balls(s, 1e-4, 10), Error);
}

TEST_CASE("palindrome words give the reflections in orbit spheres") {
  SchottkySet s = symmetric_set();
  auto balls = orbit_balls(s, 0.05);
  int checked = 0;
  for (const auto& b : balls) {
    if (b.word.size() < 2 || b.word.size() > 4) continue;
    MobiusMap direct = reflection_in_cap(b.cap);
    MobiusMap conj = word_to_mobius(s, b.word.palindrome());
    double scale = std::max(1.0, conj.matrix().lpNorm<Eigen::Infinity>());
    CHECK(mat_inf_dist(direct.matrix(), conj.matrix()) <= 1e-9 * scale);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("point coding") {
  SchottkySet s = symmetric_set();
  Rng rng(13);

  SpherePoint in_s = SpherePoint::chart_pole(2);
  CodingResult base = code_point(s, in_s, 32);
  CHECK(base.terminated);
  CHECK(base.word.is_empty());

  CodingResult c1 = code_point(s, s.cap(1).center_point(), 32);
  REQUIRE(c1.word.size() >= 1);
  CHECK(c1.word[0] == 1);

  // coding is deterministic and consistent: p = U_w(landing)
  for (int k = 0; k < 1000; ++k) {
    SpherePoint p(rng.unit_vec(3));
    CodingResult a = code_point(s, p, 24);
    CodingResult b = code_point(s, p, 24);
    CHECK(a.word == b.word);
    if (a.terminated && !a.word.is_empty()) {
      MobiusMap u = word_to_mobius(s, a.word);
      CHECK(chordal(apply_point(u, *a.landing), p) <= 1e-8);
      CHECK(contains(s, *a.landing).kind != Membership::InCap);
    }
  }

  // attracting fixed point of R1 R2 codes as 1,2,1,2,...
  MobiusMap loxo = compose(reflection_in_cap(s.cap(1)), reflection_in_cap(s.cap(2)));
  SpherePoint fp = attracting_fixed_point(loxo);
  CodingResult cfp = code_point(s, fp, 16);
  CHECK_FALSE(cfp.terminated);
  REQUIRE(cfp.word.size() == 16);
  for (std::size_t i = 0; i < cfp.word.size(); ++i)
    CHECK(cfp.word[i] == (i % 2 == 0 ? 1 : 2));
}

TEST_CASE("sampled discreteness gap dominates the first three radii") {
  Rng rng(21);
  for (int fixture = 0; fixture < 3; ++fixture) {
    SchottkySet s =
        fixture == 0 ? symmetric_set() : random_valid_set(2, 4 + fixture, rng);
    Rng inner(100 + static_cast<std::uint64_t>(fixture));
    DiscretenessReport rep = discreteness_gap(s, 200, 200, 10, inner);
    CHECK(rep.gap >= rep.min_chordal_radius - 1e-9);
    CHECK(rep.min_geodesic_radius > 0.0);
    CHECK(rep.words_sampled == 200);
  }
}

TEST_CASE("fact-(iii) copies of S") {
  SchottkySet s = symmetric_set();
  SchottkyCopy copy = copy_of_s(s, ReducedWord({1}));

  // outer ball is B_1 itself; inner balls are R_1(B_2), R_1(B_3)
  CHECK(same_boundary_sphere(copy.outer, s.cap(1), 1e-12));
  REQUIRE(copy.inner.size() == 2);
  MobiusMap r1 = reflection_in_cap(s.cap(1));
  for (const auto& [i, ball] : copy.inner) {
    Cap expect = apply_cap(r1, s.cap(i));
    CHECK(same_boundary_sphere(ball, expect, 1e-10));
    CHECK(cap_contains_cap(copy.outer, ball, 1e-9));
  }
  CHECK(cap_overlap_angle(copy.inner[0].second, copy.inner[1].second) <= 1e-9);

  // sampled points of S land in the described relative set
  Rng rng(31);
  SchottkyCopy deep = copy_of_s(s, ReducedWord({2, 1, 3}));
  MobiusMap u = word_to_mobius(s, deep.word);
  for (int k = 0; k < 100; ++k) {
    SpherePoint p = sample_point_of_s(s, rng);
    SpherePoint q = apply_point(u, p);
    CHECK(deep.outer.margin(q) >= -1e-9);
    for (const auto& [i, ball] : deep.inner) CHECK(ball.margin(q) <= 1e-9);
  }

  CHECK_THROWS_AS(copy_of_s(s, ReducedWord::empty()), Error);
}
