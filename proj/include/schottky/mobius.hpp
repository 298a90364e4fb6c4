#pragma once

#include <cstdint>
#include <vector>

#include "schottky/error.hpp"
#include "schottky/types.hpp"

namespace schottky {

// Tolerances that are part of the public contracts.
inline constexpr double kUnitTol = 1e-12;
inline constexpr double kLorentzTol = 1e-9;
inline constexpr double kBoundaryTol = 1e-10;
inline constexpr double kPeripheralMatchTol = 1e-9;
inline constexpr double kRescaleFloor = 1e-14;

// Everything lives in the Lorentz model of Moebius geometry on S^n:
// ambient R^{n+2} with the quadratic form J = diag(1,...,1,-1). Points of
// S^n lift to null rays (p, 1); oriented round spheres are unit spacelike
// vectors (u, t) whose positive side {<x,u> > t} is the open cap.

Mat lorentz_j(int sphere_dim);
double lorentz_q(const Vec& a, const Vec& b);

// One Newton step toward the J-orthogonal manifold.
Mat lorentz_reproject(const Mat& m);

class SpherePoint {
 public:
  // `coords` must be unit within 1e-6; it is renormalized to full precision.
  explicit SpherePoint(Vec coords);

  static SpherePoint from_chart(const Vec& chart_point);
  static SpherePoint chart_pole(int sphere_dim);  // the point "infinity"

  const Vec& coords() const { return coords_; }
  int sphere_dim() const { return static_cast<int>(coords_.size()) - 1; }
  int ambient_dim() const { return static_cast<int>(coords_.size()); }

  bool near_chart_pole(double tol = 1e-13) const;
  Vec to_chart() const;  // NumericalDegeneracy near the pole

  Vec lift() const;  // null vector (p, 1)

 private:
  Vec coords_;
};

double chordal(const SpherePoint& a, const SpherePoint& b);
double chart_chordal(const Vec& x, const Vec& y);

class Cap {
 public:
  Cap(Vec normal, double offset);

  const Vec& normal() const { return normal_; }
  double offset() const { return offset_; }
  int sphere_dim() const { return static_cast<int>(normal_.size()) - 1; }

  double angular_radius() const;    // arccos(offset), in (0, pi)
  double chordal_radius() const;    // 2 sin(theta/2)
  double chordal_diameter() const;  // 2 sin(theta) for theta <= pi/2, else 2

  Vec lorentz_vector() const;  // (u, t), Q = 1 - t^2 > 0
  SpherePoint center_point() const;

  double margin(const SpherePoint& p) const;  // <p,u> - t
  bool strictly_contains(const SpherePoint& p) const { return margin(p) > 0; }
  bool on_boundary(const SpherePoint& p, double tol = kBoundaryTol) const;

  // Boundary point t*u + sin(theta)*v for v the normalized component of
  // `tangent_hint` orthogonal to u.
  SpherePoint boundary_point(const Vec& tangent_hint) const;
  // Deterministic orthonormal basis of the hyperplane orthogonal to u.
  std::vector<Vec> boundary_basis() const;

  Cap complement() const { return Cap(-normal_, -offset_); }

 private:
  Vec normal_;
  double offset_;
};

double angle_between(const Vec& a, const Vec& b);
// Positive value = overlap depth (radians); <= 0 means disjoint interiors.
double cap_overlap_angle(const Cap& a, const Cap& b);
bool caps_disjoint(const Cap& a, const Cap& b, double tol = 1e-12);
bool cap_contains_cap(const Cap& outer, const Cap& inner, double tol = 1e-9);
bool same_boundary_sphere(const Cap& a, const Cap& b,
                          double tol = kPeripheralMatchTol);

class MobiusMap {
 public:
  MobiusMap(Mat matrix, int parity, std::uint32_t compositions = 0);
  static MobiusMap identity(int sphere_dim);

  const Mat& matrix() const { return matrix_; }
  int parity() const { return parity_; }
  int sphere_dim() const { return static_cast<int>(matrix_.rows()) - 2; }
  std::uint32_t compositions_since_projection() const { return compositions_; }

  // max |(M^T J M - J)_{ij}|
  double lorentz_defect() const;

 private:
  Mat matrix_;
  int parity_;
  std::uint32_t compositions_;
};

MobiusMap reflection_in_cap(const Cap& c);
SpherePoint apply_point(const MobiusMap& m, const SpherePoint& p);
Cap apply_cap(const MobiusMap& m, const Cap& c);
MobiusMap compose(const MobiusMap& a, const MobiusMap& b);
MobiusMap inverse(const MobiusMap& a);

double cross_ratio(const SpherePoint& x1, const SpherePoint& x2,
                   const SpherePoint& x3, const SpherePoint& x4);

// Attracting fixed point of a loxodromic map by power iteration on the
// Lorentz matrix.
SpherePoint attracting_fixed_point(const MobiusMap& m, int iterations = 400);

// Batch of sphere points held as lifted null vectors, SoA layout
// (n+2 rows by count columns), processed through the kernel dispatch.
class PointBatch {
 public:
  PointBatch(int sphere_dim, std::size_t count);

  int sphere_dim() const { return n_; }
  std::size_t count() const { return count_; }

  void set(std::size_t i, const SpherePoint& p);
  SpherePoint get(std::size_t i) const;

  double* data() { return buf_.data(); }
  const double* data() const { return buf_.data(); }
  int rows() const { return n_ + 2; }

  // dst = m(src) for every column; rescales and renormalizes.
  // NumericalDegeneracy if any rescale factor falls below kRescaleFloor.
  static void apply(const MobiusMap& m, const PointBatch& src, PointBatch& dst);

  // out[i] = chordal distance between column i of a and of b.
  static void chordal_distances(const PointBatch& a, const PointBatch& b,
                                double* out);

 private:
  int n_;
  std::size_t count_;
  std::vector<double> buf_;
};

}  // namespace schottky
