#pragma once

#include <cstddef>

namespace schottky::kern {

// Data-parallel inner loops over column batches stored SoA: row r of an
// n-column batch lives at X + r*n. All variants of one kernel must produce
// bit-identical results per element; reductions are left to callers so that
// summation order never depends on the selected instruction set.
struct Ops {
  const char* name;

  // Y = M * X, M row-major dim x dim, X and Y dim rows by n columns.
  void (*matvec_soa)(const double* M, int dim, const double* X, double* Y,
                     std::size_t n);

  // out[i] = sum_r X[r*n+i] * u[r] - t   (signed cap margin per column)
  void (*affine_margin)(const double* X, int dim, std::size_t n,
                        const double* u, double t, double* out);

  // Scale every column to unit Euclidean length.
  void (*normalize_columns)(double* X, int dim, std::size_t n);

  // out[i] = sum_r (A[r*n+i] - B[r*n+i])^2
  void (*dist2_columns)(const double* A, const double* B, int dim,
                        std::size_t n, double* out);

  // Divide rows 0..dim-2 by the last row (projective rescale of lifted
  // points); last row is left untouched. Writes per-column |last| into
  // scale_out when non-null.
  void (*dehomogenize)(double* X, int dim, std::size_t n, double* scale_out);
};

enum class Isa { scalar, avx2, neon };

const Ops& scalar_ops();
const Ops* simd_ops();  // best SIMD variant compiled in, null if none
bool simd_available();  // compiled in and supported by this CPU

// Active selection. Default: best supported, overridable by the
// SCHOTTKY_SIMD env var ("scalar", "avx2", "neon", "auto") or set_isa().
const Ops& active();
Isa isa();
void set_isa(Isa isa);  // throws std::invalid_argument if unsupported
void set_isa_auto();

}  // namespace schottky::kern
