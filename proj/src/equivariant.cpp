#include "schottky/equivariant.hpp"

#include <algorithm>
#include <cmath>

namespace schottky {

BoundaryMap mobius_boundary_map(const SchottkySet& source, const MobiusMap& m) {
  BoundaryMap bm;
  bm.source = source;
  SchottkySet target = source;
  for (Cap& c : target.caps) c = apply_cap(m, c);
  bm.target = std::move(target);
  bm.f = [m](const SpherePoint& p) { return apply_point(m, p); };
  return bm;
}

ReducedWord phi(const ReducedWord& w) {
  return ReducedWord(w.indices());  // revalidates; target-side interpretation
}

SpherePoint f_infinity(const BoundaryMap& bm, const ReducedWord& w,
                       const SpherePoint& x) {
  Classification c = contains(bm.source, x);
  if (c.kind == Membership::InCap)
    raise(ErrorKind::NotInSet,
          "argument lies in cap " + std::to_string(c.index) + " of the source set");
  MobiusMap uprime = word_to_mobius(bm.target, phi(w));
  return apply_point(uprime, bm.f(x));
}

WellDefinednessReport well_definedness_check(const BoundaryMap& bm,
                                             std::size_t samples_per_generator,
                                             int max_prefix_len, Rng& rng) {
  WellDefinednessReport rep;
  int m = bm.source.cap_count();

  auto record = [&](double d, int gen, const ReducedWord& prefix) {
    ++rep.comparisons;
    if (d > rep.max_discrepancy) {
      rep.max_discrepancy = d;
      rep.worst_generator = gen;
      rep.worst_prefix = prefix;
    }
  };

  for (int i = 1; i <= m; ++i) {
    const Cap& ci = bm.source.cap(i);
    for (std::size_t k = 0; k < samples_per_generator; ++k) {
      SpherePoint x = ci.boundary_point(rng.unit_vec(bm.source.n + 1));
      // U(x) = (U o R_i)(x) since R_i fixes x; compare both evaluations.
      ReducedWord prefix;
      if (max_prefix_len > 0) {
        int len = static_cast<int>(rng.next_u64() %
                                   static_cast<std::uint64_t>(max_prefix_len + 1));
        do {
          prefix = random_reduced_word(m, len, rng);
        } while (!prefix.is_empty() && prefix.back() == i);
      }
      SpherePoint a = f_infinity(bm, prefix, x);
      SpherePoint b = f_infinity(bm, prefix.appended(i), x);
      record(chordal(a, b), i, prefix);
    }
  }

  // Tangency points shared by touching peripheral spheres.
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      const Cap& a = bm.source.cap(i);
      const Cap& b = bm.source.cap(j);
      if (std::fabs(cap_overlap_angle(a, b)) > 1e-9) continue;
      SpherePoint z = a.boundary_point(b.normal());
      SpherePoint via_i = f_infinity(bm, ReducedWord({i}), z);
      SpherePoint via_j = f_infinity(bm, ReducedWord({j}), z);
      SpherePoint direct = f_infinity(bm, ReducedWord::empty(), z);
      record(chordal(via_i, direct), i, ReducedWord::empty());
      record(chordal(via_j, direct), j, ReducedWord::empty());
    }
  }
  return rep;
}

DoubledSet double_along(const SchottkySet& s, int index) {
  if (index < 1 || index > s.cap_count())
    raise(ErrorKind::IndexOutOfRange, "mirror index out of range");
  MobiusMap r = reflection_in_cap(s.cap(index));
  DoubledSet d;
  d.base = s;
  d.mirror_index = index;
  std::vector<Cap> caps;
  std::vector<ReducedWord> labels;
  for (int j = 1; j <= s.cap_count(); ++j) {
    if (j == index) continue;
    caps.push_back(s.cap(j));
    labels.push_back(ReducedWord({j}));
  }
  for (int j = 1; j <= s.cap_count(); ++j) {
    if (j == index) continue;
    caps.push_back(apply_cap(r, s.cap(j)));
    labels.push_back(ReducedWord({index, j}));
  }
  d.result = make_schottky_set(std::move(caps));
  d.result.region = s.region;
  d.labels = std::move(labels);
  return d;
}

DoublingStep doubling_start(const SchottkySet& s) {
  DoublingStep step;
  step.set = s;
  step.labels.reserve(s.caps.size());
  for (int i = 1; i <= s.cap_count(); ++i) step.labels.push_back(ReducedWord({i}));
  step.max_peripheral_diameter = 0.0;
  for (const Cap& c : s.caps)
    step.max_peripheral_diameter =
        std::max(step.max_peripheral_diameter, c.chordal_diameter());
  return step;
}

DoublingStep doubling_advance(const DoublingStep& current, std::size_t cap_budget) {
  const auto& caps = current.set.caps;
  if (caps.empty())
    raise(ErrorKind::NumericalDegeneracy, "cannot double an empty configuration");
  if (2 * (caps.size() - 1) > cap_budget)
    raise(ErrorKind::BudgetExceeded, "doubling would exceed the cap budget");

  // Largest peripheral sphere; ties by lexicographically least word.
  std::size_t pick = 0;
  for (std::size_t i = 1; i < caps.size(); ++i) {
    double di = caps[i].chordal_diameter();
    double dp = caps[pick].chordal_diameter();
    if (di > dp || (di == dp && current.labels[i] < current.labels[pick]))
      pick = i;
  }

  // Reflection in the chosen sphere is the palindrome word of its label; the
  // matrix is conjugation of the base reflection, computed directly from the
  // chosen cap.
  MobiusMap r = reflection_in_cap(caps[pick]);
  ReducedWord mirror_word = current.labels[pick].palindrome();

  DoublingStep next;
  next.doubled_word = current.labels[pick];
  next.set.n = current.set.n;
  next.set.region = current.set.region;
  next.set.truncation = current.set.truncation;
  next.set.caps.reserve(2 * (caps.size() - 1));
  next.labels.reserve(2 * (caps.size() - 1));
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (i == pick) continue;
    next.set.caps.push_back(caps[i]);
    next.labels.push_back(current.labels[i]);
  }
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (i == pick) continue;
    next.set.caps.push_back(apply_cap(r, caps[i]));
    next.labels.push_back(reduce_concat(mirror_word, current.labels[i]));
  }
  next.max_peripheral_diameter = 0.0;
  for (const Cap& c : next.set.caps)
    next.max_peripheral_diameter =
        std::max(next.max_peripheral_diameter, c.chordal_diameter());
  return next;
}

std::vector<DoublingStep> doubling_sequence(const SchottkySet& s, int steps,
                                            std::size_t cap_budget) {
  std::vector<DoublingStep> seq;
  seq.push_back(doubling_start(s));
  for (int k = 0; k < steps; ++k)
    seq.push_back(doubling_advance(seq.back(), cap_budget));
  return seq;
}

}  // namespace schottky
