#pragma once

#include <cstdint>
#include <random>

#include "schottky/types.hpp"

namespace schottky {

// Deterministic random stream. The engine is the standard-mandated
// mt19937_64; the uniform/gaussian mappings are spelled out here instead of
// using std::*_distribution so that sequences are identical across standard
// library implementations (golden files depend on this).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Marsaglia polar method, no spare caching (keeps streams splittable).
  double gaussian() {
    for (;;) {
      double u = uniform(-1.0, 1.0);
      double v = uniform(-1.0, 1.0);
      double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  Vec gaussian_vec(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = gaussian();
    return v;
  }

  // Uniform point on the unit sphere of R^{ambient_dim}.
  Vec unit_vec(int ambient_dim) {
    for (;;) {
      Vec v = gaussian_vec(ambient_dim);
      double n = v.norm();
      if (n > 1e-8) return v / n;
    }
  }

  // Derived substream with decorrelated seed (splitmix64 step).
  Rng split(std::uint64_t stream) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace schottky
