#pragma once

#include <complex>
#include <functional>
#include <iosfwd>

#include "schottky/group.hpp"

namespace schottky {

using cplx = std::complex<double>;

// Chart-side action of a group word on C u {inf}: z -> m(z) or m(conj(z))
// for a complex 2x2 matrix m. Generator reflections are circle inversions.
struct ChartMobius {
  Eigen::Matrix2cd m;
  bool conjugating;  // acts on conj(z) first

  static ChartMobius identity();
  static ChartMobius inversion(cplx center, double radius);

  cplx apply(cplx z) const;  // PoleEncountered near the denominator zero
  ChartMobius compose(const ChartMobius& inner) const;  // this after inner

  struct Deriv {
    cplx value;
    bool antiholomorphic;  // value is d/dzbar instead of d/dz
  };
  Deriv derivative(cplx z) const;
};

// Chart form (circle inversion) of a generator reflection; PoleEncountered
// when the cap touches or contains the chart pole.
ChartMobius chart_reflection(const SchottkySet& s, int index);
ChartMobius chart_word_map(const SchottkySet& s, const ReducedWord& w);

// Derivative data of U_w at z: U_z for even words, U_zbar for odd words.
ChartMobius::Deriv word_derivative(const SchottkySet& s, const ReducedWord& w,
                                   cplx z);

struct BeltramiField {
  std::function<cplx(cplx)> nu;  // base dilatation on S
  double sup_norm;               // must stay < 1

  static BeltramiField constant(cplx value);
};

struct TileLocation {
  bool resolved;
  ReducedWord word;  // z in U_word(S) when resolved
};

// Word peeling in the chart (n = 2 only).
TileLocation tile_locate(const SchottkySet& s, cplx z, int max_depth);

struct MuValue {
  bool resolved;
  cplx mu;  // 0 when unresolved (flagged)
  ReducedWord word;
};

// Invariant extension of nu: locate the tile word w with z in U_w(S) and
// pull nu back along the inverse word map (Moebius pullback with mu_U = 0).
MuValue invariant_mu(const BeltramiField& field, const SchottkySet& s, cplx z,
                     int max_depth);

// max |LHS - RHS| of the invariance identity for gamma = R_i over resolved
// samples drawn from the chart window.
double invariance_residual(const BeltramiField& field, const SchottkySet& s,
                           int generator, std::size_t samples, int max_depth,
                           double window_halfwidth, Rng& rng);

// CSV rows: z_re,z_im,depth,mu_re,mu_im,resolved
void dump_field_csv(std::ostream& os, const BeltramiField& field,
                    const SchottkySet& s, double window_halfwidth,
                    int grid_per_axis, int max_depth);

}  // namespace schottky
