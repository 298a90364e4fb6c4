#include "schottky/numerics.hpp"

#include <cmath>
#include <limits>

namespace schottky {

namespace {

// Continued fraction for the incomplete beta (Numerical Recipes style
// modified Lentz iteration).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = 1e-300;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

long long llgcd(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a == 0 ? 1 : a;
}

long long narrow(__int128 v) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min())
    throw std::overflow_error("Fraction overflow");
  return static_cast<long long>(v);
}

Fraction make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("Fraction: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long nn = narrow(n), dd = narrow(d);
  long long g = llgcd(nn, dd);
  return Fraction(nn / g, dd / g);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double lnfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                   a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(lnfront);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson(a, fa, b, fb, fm);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

Fraction::Fraction(long long n, long long d) {
  if (d == 0) throw std::domain_error("Fraction: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = llgcd(n, d);
  num = n / g;
  den = d / g;
}

Fraction Fraction::operator+(const Fraction& o) const {
  return make(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
              static_cast<__int128>(den) * o.den);
}

Fraction Fraction::operator-(const Fraction& o) const {
  return make(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
              static_cast<__int128>(den) * o.den);
}

Fraction Fraction::operator*(const Fraction& o) const {
  return make(static_cast<__int128>(num) * o.num, static_cast<__int128>(den) * o.den);
}

Fraction Fraction::operator/(const Fraction& o) const {
  if (o.num == 0) throw std::domain_error("Fraction: division by zero");
  return make(static_cast<__int128>(num) * o.den, static_cast<__int128>(den) * o.num);
}

bool Fraction::operator<(const Fraction& o) const {
  return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

}  // namespace schottky
