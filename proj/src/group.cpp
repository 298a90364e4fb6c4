#include "schottky/group.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace schottky {

ReducedWord::ReducedWord(std::vector<int> indices) : idx_(std::move(indices)) {
  for (std::size_t i = 0; i + 1 < idx_.size(); ++i)
    if (idx_[i] == idx_[i + 1])
      raise(ErrorKind::NotReduced,
            "repeated index " + std::to_string(idx_[i]) + " at position " +
                std::to_string(i + 1));
}

ReducedWord ReducedWord::appended(int index) const {
  if (!idx_.empty() && idx_.back() == index)
    raise(ErrorKind::NotReduced, "appending repeated index");
  ReducedWord w;
  w.idx_ = idx_;
  w.idx_.push_back(index);
  return w;
}

ReducedWord ReducedWord::reversed() const {
  ReducedWord w;
  w.idx_.assign(idx_.rbegin(), idx_.rend());
  return w;
}

ReducedWord ReducedWord::palindrome() const {
  ReducedWord w;
  w.idx_ = idx_;
  for (std::size_t i = idx_.size(); i-- > 1;) w.idx_.push_back(idx_[i - 1]);
  return w;
}

bool ReducedWord::operator<(const ReducedWord& o) const {
  return std::lexicographical_compare(idx_.begin(), idx_.end(), o.idx_.begin(),
                                      o.idx_.end());
}

std::string ReducedWord::str() const {
  if (idx_.empty()) return "[]";
  std::ostringstream os;
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (i) os << '.';
    os << idx_[i];
  }
  return os.str();
}

ReducedWord reduce_concat(const ReducedWord& a, const ReducedWord& b) {
  std::vector<int> out(a.indices());
  for (int i : b.indices()) {
    if (!out.empty() && out.back() == i) out.pop_back();
    else out.push_back(i);
  }
  ReducedWord w;
  for (int i : out) w = w.appended(i);
  return w;
}

MobiusMap word_to_mobius(const SchottkySet& s, const ReducedWord& w) {
  MobiusMap m = MobiusMap::identity(s.n);
  for (std::size_t i = 0; i < w.size(); ++i)
    m = compose(m, reflection_in_cap(s.cap(w[i])));
  return m;
}

std::vector<OrbitBall> orbit_balls(const SchottkySet& s, double min_diameter,
                                   std::size_t budget) {
  if (min_diameter <= 0.0)
    raise(ErrorKind::NumericalDegeneracy, "orbit diameter floor must be positive");

  struct Node {
    ReducedWord word;
    Cap cap;
    double diameter;
    MobiusMap prefix_map;  // U_word = R_{i1} ... R_{ik}
    int parent;
  };
  auto later = [](const Node& a, const Node& b) {
    if (a.diameter != b.diameter) return a.diameter < b.diameter;
    return b.word < a.word;  // larger first; ties lexicographically smallest
  };
  std::priority_queue<Node, std::vector<Node>, decltype(later)> queue(later);

  for (int i = 1; i <= s.cap_count(); ++i) {
    const Cap& c = s.cap(i);
    if (c.chordal_diameter() < min_diameter) continue;
    ReducedWord w = ReducedWord::empty().appended(i);
    queue.push(Node{w, c, c.chordal_diameter(),
                    compose(MobiusMap::identity(s.n), reflection_in_cap(c)), -1});
  }

  std::vector<OrbitBall> out;
  std::vector<MobiusMap> prefix_maps;
  while (!queue.empty()) {
    Node node = queue.top();
    queue.pop();
    int my_index = static_cast<int>(out.size());
    if (out.size() >= budget)
      raise(ErrorKind::BudgetExceeded,
            "orbit enumeration exceeded " + std::to_string(budget) +
                " balls; raise the diameter floor");
    out.push_back(OrbitBall{node.word, node.cap, node.diameter, node.parent});
    prefix_maps.push_back(node.prefix_map);

    // Children B_{w i} = U_w(B_i), i != last(w); diameters are monotone
    // along branches, so pruning below the floor is sound.
    for (int i = 1; i <= s.cap_count(); ++i) {
      if (i == node.word.back()) continue;
      Cap child = apply_cap(node.prefix_map, s.cap(i));
      double diam = child.chordal_diameter();
      if (diam < min_diameter) continue;
      queue.push(Node{node.word.appended(i), child, diam,
                      compose(node.prefix_map, reflection_in_cap(s.cap(i))),
                      my_index});
    }
  }

  // Diameter-ordered traversal guarantees parents precede children (parent
  // diameter >= child diameter; equal-diameter ties resolve lexicographically,
  // and a child is lexicographically after its parent). Re-sort by
  // (depth, word) for a stable external order, remapping parent links.
  std::vector<int> order(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (out[a].word.size() != out[b].word.size())
      return out[a].word.size() < out[b].word.size();
    return out[a].word < out[b].word;
  });
  std::vector<int> where(out.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    where[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
  std::vector<OrbitBall> sorted;
  sorted.reserve(out.size());
  for (int idx : order) {
    OrbitBall b = out[static_cast<std::size_t>(idx)];
    if (b.parent >= 0) b.parent = where[static_cast<std::size_t>(b.parent)];
    sorted.push_back(std::move(b));
  }
  return sorted;
}

CodingResult code_point(const SchottkySet& s, const SpherePoint& p,
                        int max_depth, double boundary_tol) {
  SpherePoint q = p;
  ReducedWord w;
  for (int depth = 0; depth <= max_depth; ++depth) {
    Classification c = contains(s, q, boundary_tol);
    if (c.kind != Membership::InCap)
      return CodingResult{true, w, q};
    if (depth == max_depth) break;
    w = w.appended(c.index);
    q = apply_point(reflection_in_cap(s.cap(c.index)), q);
  }
  return CodingResult{false, w, std::nullopt};
}

ReducedWord random_reduced_word(int cap_count, int length, Rng& rng) {
  ReducedWord w;
  for (int i = 0; i < length; ++i) {
    int pick;
    do {
      pick = rng.uniform_int(1, cap_count);
    } while (!w.is_empty() && pick == w.back());
    w = w.appended(pick);
  }
  return w;
}

SpherePoint sample_point_of_s(const SchottkySet& s, Rng& rng) {
  for (int tries = 0; tries < 4096; ++tries) {
    SpherePoint p(rng.unit_vec(s.n + 1));
    if (contains(s, p).kind == Membership::InSet) return p;
  }
  // Degenerate coverage: land on a peripheral sphere instead.
  const Cap& c = s.cap(1);
  return c.boundary_point(rng.unit_vec(s.n + 1));
}

DiscretenessReport discreteness_gap(const SchottkySet& s,
                                    std::size_t word_samples,
                                    std::size_t point_samples, int max_len,
                                    Rng& rng) {
  if (s.cap_count() < 3)
    raise(ErrorKind::NumericalDegeneracy, "needs at least three caps");

  DiscretenessReport rep;
  rep.min_chordal_radius = 1e300;
  rep.min_geodesic_radius = 1e300;
  for (int i = 1; i <= 3; ++i) {
    rep.min_chordal_radius = std::min(rep.min_chordal_radius, s.cap(i).chordal_radius());
    rep.min_geodesic_radius = std::min(rep.min_geodesic_radius, s.cap(i).angular_radius());
  }

  // Point batch: the three cap centers first (the proof's displaced points),
  // then uniform sphere samples.
  std::size_t total_pts = std::max<std::size_t>(point_samples, 3);
  PointBatch pts(s.n, total_pts), img(s.n, total_pts);
  for (int i = 0; i < 3; ++i) pts.set(static_cast<std::size_t>(i), s.cap(i + 1).center_point());
  for (std::size_t i = 3; i < total_pts; ++i)
    pts.set(i, SpherePoint(rng.unit_vec(s.n + 1)));

  std::vector<double> dist(total_pts);
  rep.gap = 1e300;
  rep.words_sampled = 0;
  rep.points_sampled = total_pts;

  // Deterministic sweep of short words first, then random longer ones.
  std::vector<ReducedWord> words;
  for (int i = 1; i <= s.cap_count() && words.size() < word_samples; ++i)
    words.push_back(ReducedWord({i}));
  while (words.size() < word_samples) {
    int len = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(std::max(1, max_len - 1)));
    words.push_back(random_reduced_word(s.cap_count(), len, rng));
  }

  for (const ReducedWord& w : words) {
    MobiusMap u = word_to_mobius(s, w);
    PointBatch::apply(u, pts, img);
    PointBatch::chordal_distances(pts, img, dist.data());
    double sup = 0.0;
    for (std::size_t i = 0; i < total_pts; ++i) sup = std::max(sup, dist[i]);
    if (sup < rep.gap) {
      rep.gap = sup;
      rep.argmin_word = w;
    }
    ++rep.words_sampled;
  }
  return rep;
}

SchottkyCopy copy_of_s(const SchottkySet& s, const ReducedWord& w) {
  if (w.is_empty())
    raise(ErrorKind::NotReduced, "copy_of_s needs a non-empty word");
  MobiusMap prefix = MobiusMap::identity(s.n);
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    prefix = compose(prefix, reflection_in_cap(s.cap(w[i])));
  SchottkyCopy copy{w, apply_cap(prefix, s.cap(w.back())), {}};
  MobiusMap full = compose(prefix, reflection_in_cap(s.cap(w.back())));
  for (int i = 1; i <= s.cap_count(); ++i) {
    if (i == w.back()) continue;
    copy.inner.emplace_back(i, apply_cap(full, s.cap(i)));
  }
  return copy;
}

}  // namespace schottky
