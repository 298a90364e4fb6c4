#include <cmath>
#include <cstddef>

#include "schottky/kern/kernels.hpp"

// Reference kernels. These define the semantics; the SIMD variants must
// reproduce them bit-for-bit (same per-element operation order, no FMA).

namespace schottky::kern {
namespace {

void matvec_soa(const double* M, int dim, const double* X, double* Y,
                std::size_t n) {
  for (int r = 0; r < dim; ++r) {
    double* yr = Y + static_cast<std::size_t>(r) * n;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = M[r * dim] * X[i];
      for (int q = 1; q < dim; ++q)
        acc += M[r * dim + q] * X[static_cast<std::size_t>(q) * n + i];
      yr[i] = acc;
    }
  }
}

void affine_margin(const double* X, int dim, std::size_t n, const double* u,
                   double t, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = u[0] * X[i];
    for (int r = 1; r < dim; ++r)
      acc += u[r] * X[static_cast<std::size_t>(r) * n + i];
    out[i] = acc - t;
  }
}

void normalize_columns(double* X, int dim, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
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
  for (std::size_t i = 0; i < n; ++i) {
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
  const double* last = X + static_cast<std::size_t>(dim - 1) * n;
  for (std::size_t i = 0; i < n; ++i) {
    double w = last[i];
    if (scale_out) scale_out[i] = std::fabs(w);
    double inv = 1.0 / w;
    for (int r = 0; r < dim - 1; ++r) X[static_cast<std::size_t>(r) * n + i] *= inv;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar",        matvec_soa,    affine_margin,
                       normalize_columns, dist2_columns, dehomogenize};
  return ops;
}

}  // namespace schottky::kern
