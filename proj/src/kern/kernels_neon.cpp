#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "schottky/kern/kernels.hpp"

// NEON variants (aarch64, 2 doubles per lane group). Same per-element
// operation order as the scalar kernels, explicit mul+add (no vfma), so
// results are bit-identical to the reference path.

namespace schottky::kern {
namespace {

inline std::size_t vec_end(std::size_t n) { return n - (n % 2); }

void matvec_soa(const double* M, int dim, const double* X, double* Y,
                std::size_t n) {
  const std::size_t nv = vec_end(n);
  for (int r = 0; r < dim; ++r) {
    double* yr = Y + static_cast<std::size_t>(r) * n;
    for (std::size_t i = 0; i < nv; i += 2) {
      float64x2_t acc = vmulq_f64(vdupq_n_f64(M[r * dim]), vld1q_f64(X + i));
      for (int q = 1; q < dim; ++q) {
        float64x2_t xq = vld1q_f64(X + static_cast<std::size_t>(q) * n + i);
        acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(M[r * dim + q]), xq));
      }
      vst1q_f64(yr + i, acc);
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
  const float64x2_t vt = vdupq_n_f64(t);
  for (std::size_t i = 0; i < nv; i += 2) {
    float64x2_t acc = vmulq_f64(vdupq_n_f64(u[0]), vld1q_f64(X + i));
    for (int r = 1; r < dim; ++r) {
      float64x2_t xr = vld1q_f64(X + static_cast<std::size_t>(r) * n + i);
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(u[r]), xr));
    }
    vst1q_f64(out + i, vsubq_f64(acc, vt));
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
  const float64x2_t ones = vdupq_n_f64(1.0);
  for (std::size_t i = 0; i < nv; i += 2) {
    float64x2_t x0 = vld1q_f64(X + i);
    float64x2_t acc = vmulq_f64(x0, x0);
    for (int r = 1; r < dim; ++r) {
      float64x2_t v = vld1q_f64(X + static_cast<std::size_t>(r) * n + i);
      acc = vaddq_f64(acc, vmulq_f64(v, v));
    }
    float64x2_t inv = vdivq_f64(ones, vsqrtq_f64(acc));
    for (int r = 0; r < dim; ++r) {
      double* p = X + static_cast<std::size_t>(r) * n + i;
      vst1q_f64(p, vmulq_f64(vld1q_f64(p), inv));
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
  for (std::size_t i = 0; i < nv; i += 2) {
    float64x2_t d0 = vsubq_f64(vld1q_f64(A + i), vld1q_f64(B + i));
    float64x2_t acc = vmulq_f64(d0, d0);
    for (int r = 1; r < dim; ++r) {
      float64x2_t d =
          vsubq_f64(vld1q_f64(A + static_cast<std::size_t>(r) * n + i),
                    vld1q_f64(B + static_cast<std::size_t>(r) * n + i));
      acc = vaddq_f64(acc, vmulq_f64(d, d));
    }
    vst1q_f64(out + i, acc);
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
  const float64x2_t ones = vdupq_n_f64(1.0);
  for (std::size_t i = 0; i < nv; i += 2) {
    float64x2_t w = vld1q_f64(last + i);
    if (scale_out) vst1q_f64(scale_out + i, vabsq_f64(w));
    float64x2_t inv = vdivq_f64(ones, w);
    for (int r = 0; r < dim - 1; ++r) {
      double* p = X + static_cast<std::size_t>(r) * n + i;
      vst1q_f64(p, vmulq_f64(vld1q_f64(p), inv));
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
  static const Ops ops{"neon",          matvec_soa,    affine_margin,
                       normalize_columns, dist2_columns, dehomogenize};
  return &ops;
}

bool simd_cpu_ok() { return true; }  // NEON is baseline on aarch64

Isa simd_isa_tag() { return Isa::neon; }

}  // namespace schottky::kern
