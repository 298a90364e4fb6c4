#pragma once

#include <cmath>
#include <vector>

#include "schottky/group.hpp"
#include "schottky/rng.hpp"
#include "schottky/schottky_set.hpp"

namespace schottky::testing {

// Three caps of angular radius pi/3 at equatorial directions 120 degrees
// apart: tangent closures, complement measure exactly pi.
inline SchottkySet three_tangent_set() {
  std::vector<Cap> caps;
  for (int k = 0; k < 3; ++k) {
    double phi = 2.0 * M_PI * k / 3.0;
    Vec u(3);
    u << std::cos(phi), std::sin(phi), 0.0;
    caps.emplace_back(u, 0.5);
  }
  return make_schottky_set(std::move(caps));
}

// Same directions, angular radius pi/6: room between the caps, fast-shrinking
// orbit balls.
inline SchottkySet symmetric_set() {
  std::vector<Cap> caps;
  for (int k = 0; k < 3; ++k) {
    double phi = 2.0 * M_PI * k / 3.0;
    Vec u(3);
    u << std::cos(phi), std::sin(phi), 0.0;
    caps.emplace_back(u, std::cos(M_PI / 6.0));
  }
  return make_schottky_set(std::move(caps));
}

// Random valid configuration with `want` caps by greedy rejection.
inline SchottkySet random_valid_set(int n, int want, Rng& rng) {
  std::vector<Cap> caps;
  int attempts = 0;
  while (static_cast<int>(caps.size()) < want) {
    if (++attempts > 100000) break;
    Vec u = rng.unit_vec(n + 1);
    double theta = rng.uniform(0.05, 0.45);
    Cap c(u, std::cos(theta));
    bool ok = true;
    for (const Cap& e : caps)
      if (!caps_disjoint(e, c, -1e-9)) ok = false;  // small safety gap
    if (ok) caps.push_back(std::move(c));
  }
  return make_schottky_set(std::move(caps));
}

inline double mat_inf_dist(const Mat& a, const Mat& b) {
  return (a - b).lpNorm<Eigen::Infinity>();
}

// Monte Carlo complement-measure oracle (independent of cap_area).
struct McEstimate {
  double value;
  double sigma;
};

inline McEstimate mc_measure_oracle(const SchottkySet& s, std::size_t samples,
                                    std::uint64_t seed) {
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    Vec p = rng.unit_vec(s.n + 1);
    bool inside_cap = false;
    for (const Cap& c : s.caps)
      if (c.normal().dot(p) > c.offset()) inside_cap = true;
    if (!inside_cap) ++hits;
  }
  double area = sphere_area(s.n);
  double frac = static_cast<double>(hits) / static_cast<double>(samples);
  double sigma =
      area * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
  return {area * frac, sigma};
}

// Brute-force unpruned orbit enumeration to a fixed depth (oracle for the
// pruned breadth-first search).
inline std::vector<OrbitBall> brute_force_orbit(const SchottkySet& s,
                                                int max_depth,
                                                double min_diameter) {
  std::vector<OrbitBall> out;
  struct Item {
    ReducedWord word;
    MobiusMap prefix;
  };
  std::vector<Item> frontier;
  for (int i = 1; i <= s.cap_count(); ++i) {
    ReducedWord w({i});
    Cap c = s.cap(i);
    if (c.chordal_diameter() >= min_diameter)
      out.push_back(OrbitBall{w, c, c.chordal_diameter(), -1});
    frontier.push_back(Item{w, reflection_in_cap(s.cap(i))});
  }
  for (int depth = 2; depth <= max_depth; ++depth) {
    std::vector<Item> next;
    for (const Item& it : frontier) {
      for (int i = 1; i <= s.cap_count(); ++i) {
        if (i == it.word.back()) continue;
        ReducedWord w = it.word.appended(i);
        Cap ball = apply_cap(it.prefix, s.cap(i));
        if (ball.chordal_diameter() >= min_diameter)
          out.push_back(OrbitBall{w, ball, ball.chordal_diameter(), -1});
        next.push_back(Item{w, compose(it.prefix, reflection_in_cap(s.cap(i)))});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace schottky::testing
