#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "schottky/kern/kernels.hpp"

// AVX2 variants, vectorized across columns (4 doubles per lane group).
// Per-element operation order matches the scalar kernels exactly and no FMA
// is issued, so results are bit-identical to the reference path.

namespace schottky::kern {
namespace {

inline std::size_t vec_end(std::size_t n) { return n - (n % 4); }

void matvec_soa(const double* M, int dim, const double* X, double* Y,
                std::size_t n) {
  const std::size_t nv = vec_end(n);
  for (int r = 0; r < dim; ++r) {
    double* yr = Y + static_cast<std::size_t>(r) * n;
    for (std::size_t i = 0; i < nv; i += 4) {
      __m256d acc = _mm256_mul_pd(_mm256_set1_pd(M[r * dim]),
                                  _mm256_loadu_pd(X + i));
      for (int q = 1; q < dim; ++q) {
        __m256d xq = _mm256_loadu_pd(X + static_cast<std::size_t>(q) * n + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(M[r * dim + q]), xq));
      }
      _mm256_storeu_pd(yr + i, acc);
    }
    for (std::size_t i = nv; i < n; ++i) {
      double acc = M[r * dim] * X[i];
      for (int q = 1; q < dim; ++q)
        acc += M[r * dim + q] * X[static_cast<std::size_t>(q) * n + i];
      yr[i] = acc;
    }
  }
}

void affine_margin(const double* X, int dim, std::size_t n, const double* u,
                   double t, double* out) {
  const std::size_t nv = vec_end(n);
  const __m256d vt = _mm256_set1_pd(t);
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(u[0]), _mm256_loadu_pd(X + i));
    for (int r = 1; r < dim; ++r) {
      __m256d xr = _mm256_loadu_pd(X + static_cast<std::size_t>(r) * n + i);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(u[r]), xr));
    }
    _mm256_storeu_pd(out + i, _mm256_sub_pd(acc, vt));
  }
  for (std::size_t i = nv; i < n; ++i) {
    double acc = u[0] * X[i];
    for (int r = 1; r < dim; ++r)
      acc += u[r] * X[static_cast<std::size_t>(r) * n + i];
    out[i] = acc - t;
  }
}

void normalize_columns(double* X, int dim, std::size_t n) {
  const std::size_t nv = vec_end(n);
  const __m256d ones = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256d x0 = _mm256_loadu_pd(X + i);
    __m256d acc = _mm256_mul_pd(x0, x0);
    for (int r = 1; r < dim; ++r) {
      __m256d v = _mm256_loadu_pd(X + static_cast<std::size_t>(r) * n + i);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    __m256d inv = _mm256_div_pd(ones, _mm256_sqrt_pd(acc));
    for (int r = 0; r < dim; ++r) {
      double* p = X + static_cast<std::size_t>(r) * n + i;
      _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), inv));
    }
  }
  for (std::size_t i = nv; i < n; ++i) {
    double acc = X[i] * X[i];
    for (int r = 1; r < dim; ++r) {
      double v = X[static_cast<std::size_t>(r) * n + i];
      acc += v * v;
    }
    double inv = 1.0 / std::sqrt(acc);
    for (int r = 0; r < dim; ++r) X[static_cast<std::size_t>(r) * n + i] *= inv;
  }
}

void dist2_columns(const double* A, const double* B, int dim, std::size_t n,
                   double* out) {
  const std::size_t nv = vec_end(n);
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(A + i), _mm256_loadu_pd(B + i));
    __m256d acc = _mm256_mul_pd(d0, d0);
    for (int r = 1; r < dim; ++r) {
      __m256d d = _mm256_sub_pd(
          _mm256_loadu_pd(A + static_cast<std::size_t>(r) * n + i),
          _mm256_loadu_pd(B + static_cast<std::size_t>(r) * n + i));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (std::size_t i = nv; i < n; ++i) {
    double d0 = A[i] - B[i];
    double acc = d0 * d0;
    for (int r = 1; r < dim; ++r) {
      double d = A[static_cast<std::size_t>(r) * n + i] -
                 B[static_cast<std::size_t>(r) * n + i];
      acc += d * d;
    }
    out[i] = acc;
  }
}

void dehomogenize(double* X, int dim, std::size_t n, double* scale_out) {
  const std::size_t nv = vec_end(n);
  const double* last = X + static_cast<std::size_t>(dim - 1) * n;
  const __m256d ones = _mm256_set1_pd(1.0);
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256d w = _mm256_loadu_pd(last + i);
    if (scale_out) _mm256_storeu_pd(scale_out + i, _mm256_and_pd(w, absmask));
    __m256d inv = _mm256_div_pd(ones, w);
    for (int r = 0; r < dim - 1; ++r) {
      double* p = X + static_cast<std::size_t>(r) * n + i;
      _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), inv));
    }
  }
  for (std::size_t i = nv; i < n; ++i) {
    double w = last[i];
    if (scale_out) scale_out[i] = std::fabs(w);
    double inv = 1.0 / w;
    for (int r = 0; r < dim - 1; ++r) X[static_cast<std::size_t>(r) * n + i] *= inv;
  }
}

}  // namespace

const Ops* simd_ops() {
  static const Ops ops{"avx2",          matvec_soa,    affine_margin,
                       normalize_columns, dist2_columns, dehomogenize};
  return &ops;
}

bool simd_cpu_ok() { return __builtin_cpu_supports("avx2"); }

Isa simd_isa_tag() { return Isa::avx2; }

}  // namespace schottky::kern
