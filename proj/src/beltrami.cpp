#include "schottky/beltrami.hpp"

#include <cmath>
#include <ostream>

namespace schottky {

ChartMobius ChartMobius::identity() {
  ChartMobius c;
  c.m << cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0);
  c.conjugating = false;
  return c;
}

ChartMobius ChartMobius::inversion(cplx center, double radius) {
  // z -> c + r^2 / conj(z - c) = (c zbar + r^2 - |c|^2) / (zbar - conj(c))
  ChartMobius inv;
  inv.m << center, cplx(radius * radius, 0) - center * std::conj(center),
      cplx(1, 0), -std::conj(center);
  inv.conjugating = true;
  return inv;
}

cplx ChartMobius::apply(cplx z) const {
  cplx w = conjugating ? std::conj(z) : z;
  cplx den = m(1, 0) * w + m(1, 1);
  if (std::abs(den) < 1e-14)
    raise(ErrorKind::PoleEncountered, "word map pole at the evaluation point");
  return (m(0, 0) * w + m(0, 1)) / den;
}

ChartMobius ChartMobius::compose(const ChartMobius& inner) const {
  // (this o inner)(z): if this conjugates, the inner matrix enters conjugated
  ChartMobius out;
  Eigen::Matrix2cd mi = inner.m;
  if (conjugating) mi = mi.conjugate();
  out.m = m * mi;
  out.conjugating = conjugating != inner.conjugating;
  return out;
}

ChartMobius::Deriv ChartMobius::derivative(cplx z) const {
  cplx w = conjugating ? std::conj(z) : z;
  cplx den = m(1, 0) * w + m(1, 1);
  if (std::abs(den) < 1e-14)
    raise(ErrorKind::PoleEncountered, "derivative pole at the evaluation point");
  cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return Deriv{det / (den * den), conjugating};
}

ChartMobius chart_reflection(const SchottkySet& s, int index) {
  if (s.n != 2)
    raise(ErrorKind::NumericalDegeneracy, "chart reflections need n = 2");
  ChartCircle cc = chart_circle_from_cap(s.cap(index));
  cplx center(cc.ball.center[0], cc.ball.center[1]);
  return ChartMobius::inversion(center, cc.ball.radius);
}

ChartMobius chart_word_map(const SchottkySet& s, const ReducedWord& w) {
  ChartMobius out = ChartMobius::identity();
  for (std::size_t i = 0; i < w.size(); ++i)
    out = out.compose(chart_reflection(s, w[i]));
  return out;
}

ChartMobius::Deriv word_derivative(const SchottkySet& s, const ReducedWord& w,
                                   cplx z) {
  return chart_word_map(s, w).derivative(z);
}

BeltramiField BeltramiField::constant(cplx value) {
  if (std::abs(value) >= 1.0)
    raise(ErrorKind::NumericalDegeneracy, "Beltrami coefficient must have |nu| < 1");
  BeltramiField f;
  f.nu = [value](cplx) { return value; };
  f.sup_norm = std::abs(value);
  return f;
}

TileLocation tile_locate(const SchottkySet& s, cplx z, int max_depth) {
  if (s.n != 2)
    raise(ErrorKind::NumericalDegeneracy, "tile location needs n = 2");
  Vec y(2);
  y << z.real(), z.imag();
  CodingResult c = code_point(s, SpherePoint::from_chart(y), max_depth);
  return TileLocation{c.terminated, c.word};
}

MuValue invariant_mu(const BeltramiField& field, const SchottkySet& s, cplx z,
                     int max_depth) {
  TileLocation loc = tile_locate(s, z, max_depth);
  if (!loc.resolved) return MuValue{false, cplx(0, 0), loc.word};
  if (loc.word.is_empty()) return MuValue{true, field.nu(z), loc.word};

  // z in U_w(S); pull nu back along V = U_w^{-1}, the reversed word
  // (generators are involutions). V is a Moebius map, so mu_V = 0 and only
  // the rotation factor of its derivative enters.
  ChartMobius v = chart_word_map(s, loc.word.reversed());
  cplx vz = v.apply(z);
  ChartMobius::Deriv dv = v.derivative(z);
  cplx nu_at = field.nu(vz);
  cplx mu;
  if (!dv.antiholomorphic) {
    mu = nu_at * std::conj(dv.value) / dv.value;
  } else {
    mu = std::conj(nu_at) * dv.value / std::conj(dv.value);
  }
  return MuValue{true, mu, loc.word};
}

double invariance_residual(const BeltramiField& field, const SchottkySet& s,
                           int generator, std::size_t samples, int max_depth,
                           double window_halfwidth, Rng& rng) {
  ChartMobius gamma = chart_reflection(s, generator);
  double worst = 0.0;
  std::size_t used = 0;
  std::size_t attempts = 0;
  while (used < samples && attempts < 64 * samples) {
    ++attempts;
    cplx z(rng.uniform(-window_halfwidth, window_halfwidth),
           rng.uniform(-window_halfwidth, window_halfwidth));
    try {
      MuValue at_z = invariant_mu(field, s, z, max_depth);
      cplx gz = gamma.apply(z);
      MuValue at_gz = invariant_mu(field, s, gz, max_depth);
      if (!at_z.resolved || !at_gz.resolved) continue;
      ChartMobius::Deriv dg = gamma.derivative(z);
      cplx rhs;
      if (!dg.antiholomorphic) {
        rhs = at_gz.mu * std::conj(dg.value) / dg.value;
      } else {
        rhs = std::conj(at_gz.mu) * dg.value / std::conj(dg.value);
      }
      worst = std::max(worst, std::abs(at_z.mu - rhs));
      ++used;
    } catch (const Error&) {
      continue;  // pole or degenerate sample
    }
  }
  return worst;
}

void dump_field_csv(std::ostream& os, const BeltramiField& field,
                    const SchottkySet& s, double window_halfwidth,
                    int grid_per_axis, int max_depth) {
  os << "z_re,z_im,depth,mu_re,mu_im,resolved\n";
  double h = 2.0 * window_halfwidth / grid_per_axis;
  char buf[256];
  for (int i = 0; i < grid_per_axis; ++i) {
    for (int j = 0; j < grid_per_axis; ++j) {
      cplx z(-window_halfwidth + (i + 0.5) * h, -window_halfwidth + (j + 0.5) * h);
      MuValue v;
      try {
        v = invariant_mu(field, s, z, max_depth);
      } catch (const Error&) {
        v = MuValue{false, cplx(0, 0), ReducedWord::empty()};
      }
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,%.17g,%.17g,%d\n", z.real(),
                    z.imag(), v.word.size(), v.mu.real(), v.mu.imag(),
                    v.resolved ? 1 : 0);
      os << buf;
    }
  }
}

}  // namespace schottky
