#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace schottky {

// Regularized incomplete beta function I_x(a, b), Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Adaptive Simpson quadrature to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

// Exact rational arithmetic on int64 (used by the Cantor-set bookkeeping
// where truncation measures must be exact). Overflow checked via __int128.
struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n, long long d);
  static Fraction of(long long n) { return Fraction(n, 1); }

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator/(const Fraction& o) const;
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
  bool operator<(const Fraction& o) const;
  bool operator<=(const Fraction& o) const { return *this < o || *this == o; }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

}  // namespace schottky
