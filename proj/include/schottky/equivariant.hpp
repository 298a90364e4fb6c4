#pragma once

#include <functional>

#include "schottky/group.hpp"

namespace schottky {

// Boundary correspondence f : S -> S' with matched cap indexing
// (f maps each peripheral sphere of `source` onto the same-index peripheral
// sphere of `target`). The evaluator is a black box so Moebius restrictions
// and constructed bi-Lipschitz maps plug in uniformly.
struct BoundaryMap {
  SchottkySet source;
  SchottkySet target;
  std::function<SpherePoint(const SpherePoint&)> f;
};

BoundaryMap mobius_boundary_map(const SchottkySet& source, const MobiusMap& m);

// Index-wise isomorphism word: same indices read in the target group.
// Validates reduction; length-preserving by construction.
ReducedWord phi(const ReducedWord& w);

// Value of the equivariant extension at U_w(x): returns U'_w(f(x)).
// NotInSet unless x is in the source set (or on a peripheral sphere).
SpherePoint f_infinity(const BoundaryMap& bm, const ReducedWord& w,
                       const SpherePoint& x);

struct WellDefinednessReport {
  double max_discrepancy = 0.0;
  std::size_t comparisons = 0;
  int worst_generator = 0;
  ReducedWord worst_prefix;
};

// Consistency of f_infinity across double representations U(x) = V(y):
// points on peripheral spheres evaluated through w and w*[i], plus tangency
// points shared by touching peripheral spheres.
WellDefinednessReport well_definedness_check(const BoundaryMap& bm,
                                             std::size_t samples_per_generator,
                                             int max_prefix_len, Rng& rng);

struct DoubledSet {
  SchottkySet base;
  int mirror_index;
  SchottkySet result;
  std::vector<ReducedWord> labels;  // generating word per result cap
};

// T u R_i(T): caps {B_j : j != i} u {R_i(B_j) : j != i}.
DoubledSet double_along(const SchottkySet& s, int index);

struct DoublingStep {
  SchottkySet set;
  std::vector<ReducedWord> labels;
  double max_peripheral_diameter;
  ReducedWord doubled_word;  // word of the sphere doubled to produce this set
};

DoublingStep doubling_start(const SchottkySet& s);
// One doubling along the largest peripheral sphere (ties: lexicographically
// least generating word). BudgetExceeded if the cap count would pass budget.
DoublingStep doubling_advance(const DoublingStep& current, std::size_t cap_budget);

// S_0..S_k with per-step max peripheral diameters (non-increasing).
std::vector<DoublingStep> doubling_sequence(const SchottkySet& s, int steps,
                                            std::size_t cap_budget = 1u << 21);

}  // namespace schottky
