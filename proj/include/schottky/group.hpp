#pragma once

#include <optional>
#include <vector>

#include "schottky/rng.hpp"
#include "schottky/schottky_set.hpp"

namespace schottky {

// Reduced generator word: 1-based cap indices, no immediate repetition.
class ReducedWord {
 public:
  ReducedWord() = default;
  explicit ReducedWord(std::vector<int> indices);  // NotReduced on repeats

  static ReducedWord empty() { return ReducedWord(); }

  std::size_t size() const { return idx_.size(); }
  bool is_empty() const { return idx_.empty(); }
  int operator[](std::size_t i) const { return idx_[i]; }
  const std::vector<int>& indices() const { return idx_; }
  int back() const { return idx_.back(); }

  ReducedWord appended(int index) const;  // NotReduced if index == back()
  ReducedWord reversed() const;
  // i1..ik..i1 — the word of the reflection in this word's orbit sphere.
  ReducedWord palindrome() const;

  bool operator==(const ReducedWord& o) const { return idx_ == o.idx_; }
  bool operator!=(const ReducedWord& o) const { return idx_ != o.idx_; }
  bool operator<(const ReducedWord& o) const;  // lexicographic

  std::string str() const;  // "1.2.1", "[]" for empty

 private:
  std::vector<int> idx_;
};

// Free-product reduction of the concatenation a*b (order-2 generators).
ReducedWord reduce_concat(const ReducedWord& a, const ReducedWord& b);

// Product of generator reflections R_{i1} ... R_{ik}; empty word gives the
// identity. NotReduced / IndexOutOfRange.
MobiusMap word_to_mobius(const SchottkySet& s, const ReducedWord& w);

struct OrbitBall {
  ReducedWord word;
  Cap cap;
  double diameter;  // chordal
  int parent;       // index into the returned list, -1 for depth-1 balls
};

// All orbit balls of chordal diameter >= min_diameter, breadth-first by
// diameter with lexicographic tie-break; output sorted by (depth, word).
// BudgetExceeded when more than `budget` balls qualify.
std::vector<OrbitBall> orbit_balls(const SchottkySet& s, double min_diameter,
                                   std::size_t budget = 2'000'000);

struct CodingResult {
  bool terminated;
  ReducedWord word;
  std::optional<SpherePoint> landing;  // point of S with p = U_word(landing)
};

CodingResult code_point(const SchottkySet& s, const SpherePoint& p,
                        int max_depth, double boundary_tol = kBoundaryTol);

struct DiscretenessReport {
  double gap;  // min over words of (max over points of displacement)
  double min_chordal_radius;   // min chordal radius of caps 1..3
  double min_geodesic_radius;  // same in angular units
  ReducedWord argmin_word;
  std::size_t words_sampled = 0;
  std::size_t points_sampled = 0;
};

// Sampled discreteness gap. Point samples always include the first three cap
// centers, which pins the contract gap >= min chordal radius - 1e-9.
DiscretenessReport discreteness_gap(const SchottkySet& s,
                                    std::size_t word_samples,
                                    std::size_t point_samples, int max_len,
                                    Rng& rng);

// Fact-(iii) description of U_w(S): the outer orbit ball and the inner
// next-generation balls, a relative Schottky set inside the outer ball.
struct SchottkyCopy {
  ReducedWord word;
  Cap outer;
  std::vector<std::pair<int, Cap>> inner;  // generator index i != last(w)
};

SchottkyCopy copy_of_s(const SchottkySet& s, const ReducedWord& w);

// Uniform-ish random reduced word of the given length.
ReducedWord random_reduced_word(int cap_count, int length, Rng& rng);

// Deterministic sample of a point of S: rejection from the sphere, falling
// back to peripheral boundary points if rejection keeps landing in caps.
SpherePoint sample_point_of_s(const SchottkySet& s, Rng& rng);

}  // namespace schottky
