#include "schottky/mobius.hpp"

#include <algorithm>
#include <cmath>

#include "schottky/kern/kernels.hpp"

namespace schottky {

namespace {
constexpr std::uint32_t kReprojectEvery = 32;
}

Mat lorentz_j(int sphere_dim) {
  int d = sphere_dim + 2;
  Mat j = Mat::Identity(d, d);
  j(d - 1, d - 1) = -1.0;
  return j;
}

double lorentz_q(const Vec& a, const Vec& b) {
  int d = static_cast<int>(a.size());
  double s = 0.0;
  for (int i = 0; i < d - 1; ++i) s += a[i] * b[i];
  return s - a[d - 1] * b[d - 1];
}

Mat lorentz_reproject(const Mat& m) {
  Mat j = lorentz_j(static_cast<int>(m.rows()) - 2);
  return 0.5 * (3.0 * m - m * j * m.transpose() * j * m);
}

SpherePoint::SpherePoint(Vec coords) : coords_(std::move(coords)) {
  double n = coords_.norm();
  if (std::fabs(n - 1.0) > 1e-6)
    raise(ErrorKind::NumericalDegeneracy,
          "sphere point is not unit length (|p| = " + std::to_string(n) + ")");
  coords_ /= n;
}

SpherePoint SpherePoint::from_chart(const Vec& y) {
  int n = static_cast<int>(y.size());
  double r2 = y.squaredNorm();
  Vec x(n + 1);
  x.head(n) = 2.0 * y / (r2 + 1.0);
  x[n] = (r2 - 1.0) / (r2 + 1.0);
  return SpherePoint(std::move(x));
}

SpherePoint SpherePoint::chart_pole(int sphere_dim) {
  Vec x = Vec::Zero(sphere_dim + 1);
  x[sphere_dim] = 1.0;
  return SpherePoint(std::move(x));
}

bool SpherePoint::near_chart_pole(double tol) const {
  return 1.0 - coords_[coords_.size() - 1] < tol;
}

Vec SpherePoint::to_chart() const {
  int n = sphere_dim();
  double denom = 1.0 - coords_[n];
  if (denom < 1e-13)
    raise(ErrorKind::NumericalDegeneracy, "chart projection at the pole");
  return coords_.head(n) / denom;
}

Vec SpherePoint::lift() const {
  Vec w(coords_.size() + 1);
  w.head(coords_.size()) = coords_;
  w[coords_.size()] = 1.0;
  return w;
}

double chordal(const SpherePoint& a, const SpherePoint& b) {
  return (a.coords() - b.coords()).norm();
}

double chart_chordal(const Vec& x, const Vec& y) {
  return 2.0 * (x - y).norm() /
         std::sqrt((1.0 + x.squaredNorm()) * (1.0 + y.squaredNorm()));
}

Cap::Cap(Vec normal, double offset) : normal_(std::move(normal)), offset_(offset) {
  double n = normal_.norm();
  if (std::fabs(n - 1.0) > 1e-6)
    raise(ErrorKind::NumericalDegeneracy, "cap normal is not unit length");
  normal_ /= n;
  if (!(offset_ > -1.0 && offset_ < 1.0))
    raise(ErrorKind::NumericalDegeneracy,
          "cap offset outside (-1,1): " + std::to_string(offset_));
}

double Cap::angular_radius() const { return std::acos(offset_); }

double Cap::chordal_radius() const {
  return 2.0 * std::sin(0.5 * angular_radius());
}

double Cap::chordal_diameter() const {
  double th = angular_radius();
  return th <= M_PI_2 ? 2.0 * std::sin(th) : 2.0;
}

Vec Cap::lorentz_vector() const {
  Vec v(normal_.size() + 1);
  v.head(normal_.size()) = normal_;
  v[normal_.size()] = offset_;
  return v;
}

SpherePoint Cap::center_point() const { return SpherePoint(normal_); }

double Cap::margin(const SpherePoint& p) const {
  return normal_.dot(p.coords()) - offset_;
}

bool Cap::on_boundary(const SpherePoint& p, double tol) const {
  return std::fabs(margin(p)) <= tol;
}

SpherePoint Cap::boundary_point(const Vec& tangent_hint) const {
  Vec v = tangent_hint - tangent_hint.dot(normal_) * normal_;
  double n = v.norm();
  if (n < 1e-12)
    raise(ErrorKind::NumericalDegeneracy, "tangent hint parallel to cap normal");
  v /= n;
  double th = angular_radius();
  return SpherePoint(offset_ * normal_ + std::sin(th) * v);
}

std::vector<Vec> Cap::boundary_basis() const {
  int d = static_cast<int>(normal_.size());
  std::vector<Vec> basis;
  basis.reserve(d - 1);
  // Gram-Schmidt of the coordinate axes against u.
  std::vector<Vec> acc;
  acc.push_back(normal_);
  for (int i = 0; i < d && static_cast<int>(basis.size()) < d - 1; ++i) {
    Vec v = Vec::Unit(d, i);
    for (const Vec& b : acc) v -= v.dot(b) * b;
    double n = v.norm();
    if (n > 1e-8) {
      v /= n;
      acc.push_back(v);
      basis.push_back(v);
    }
  }
  return basis;
}

double angle_between(const Vec& a, const Vec& b) {
  double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double cap_overlap_angle(const Cap& a, const Cap& b) {
  return a.angular_radius() + b.angular_radius() -
         angle_between(a.normal(), b.normal());
}

bool caps_disjoint(const Cap& a, const Cap& b, double tol) {
  return cap_overlap_angle(a, b) <= tol;
}

bool cap_contains_cap(const Cap& outer, const Cap& inner, double tol) {
  return angle_between(outer.normal(), inner.normal()) + inner.angular_radius() <=
         outer.angular_radius() + tol;
}

bool same_boundary_sphere(const Cap& a, const Cap& b, double tol) {
  Vec va = a.lorentz_vector();
  Vec vb = b.lorentz_vector();
  return (va - vb).lpNorm<Eigen::Infinity>() <= tol ||
         (va + vb).lpNorm<Eigen::Infinity>() <= tol;
}

MobiusMap::MobiusMap(Mat matrix, int parity, std::uint32_t compositions)
    : matrix_(std::move(matrix)), parity_(parity), compositions_(compositions) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 4)
    raise(ErrorKind::NumericalDegeneracy, "Moebius matrix must be (n+2)x(n+2), n >= 2");
  if (parity_ != 1 && parity_ != -1)
    raise(ErrorKind::NumericalDegeneracy, "parity must be +1 or -1");
}

MobiusMap MobiusMap::identity(int sphere_dim) {
  return MobiusMap(Mat::Identity(sphere_dim + 2, sphere_dim + 2), 1);
}

double MobiusMap::lorentz_defect() const {
  // Scale-relative: products of reflections grow exponentially with word
  // length, and M^T J M - J scales with |M|^2.
  Mat j = lorentz_j(sphere_dim());
  double scale = std::max(1.0, matrix_.lpNorm<Eigen::Infinity>());
  return (matrix_.transpose() * j * matrix_ - j).lpNorm<Eigen::Infinity>() /
         (scale * scale);
}

MobiusMap reflection_in_cap(const Cap& c) {
  Vec v = c.lorentz_vector();
  int d = static_cast<int>(v.size());
  double q = 1.0 - c.offset() * c.offset();
  Mat j = lorentz_j(c.sphere_dim());
  Mat m = Mat::Identity(d, d) - (2.0 / q) * (v * (j * v).transpose());
  return MobiusMap(std::move(m), -1);
}

SpherePoint apply_point(const MobiusMap& m, const SpherePoint& p) {
  Vec y = m.matrix() * p.lift();
  double w = y[y.size() - 1];
  if (std::fabs(w) < kRescaleFloor)
    raise(ErrorKind::NumericalDegeneracy, "point rescale factor below floor");
  Vec x = y.head(y.size() - 1) / w;
  double n = x.norm();
  if (n < 1e-8)
    raise(ErrorKind::NumericalDegeneracy, "point image collapsed");
  return SpherePoint(x / n);
}

Cap apply_cap(const MobiusMap& m, const Cap& c) {
  Vec y = m.matrix() * c.lorentz_vector();
  int d = static_cast<int>(y.size());
  double s = y.head(d - 1).norm();
  if (s < kRescaleFloor)
    raise(ErrorKind::NumericalDegeneracy, "cap renormalization failed");
  // |a|^2 - b^2 cancels catastrophically for tiny image caps; the Lorentz
  // form is preserved exactly, so renormalize through Q(v) = (1-t)(1+t).
  double q_src = (1.0 - c.offset()) * (1.0 + c.offset());
  double b = y[d - 1];
  double t = b / std::sqrt(b * b + q_src);
  if (!(t > -1.0 && t < 1.0))
    raise(ErrorKind::NumericalDegeneracy, "cap image is not spacelike");
  return Cap(y.head(d - 1) / s, t);
}

namespace {

double raw_defect(const Mat& m) {
  Mat j = lorentz_j(static_cast<int>(m.rows()) - 2);
  double scale = std::max(1.0, m.lpNorm<Eigen::Infinity>());
  return (m.transpose() * j * m - j).lpNorm<Eigen::Infinity>() / (scale * scale);
}

}  // namespace

MobiusMap compose(const MobiusMap& a, const MobiusMap& b) {
  if (a.sphere_dim() != b.sphere_dim())
    raise(ErrorKind::NumericalDegeneracy, "composing maps of different dimension");
  Mat m = a.matrix() * b.matrix();
  std::uint32_t cnt = a.compositions_since_projection() +
                      b.compositions_since_projection() + 1;
  if (cnt >= kReprojectEvery) {
    // Newton correction helps only inside its convergence basin; keep the
    // plain product when it does not improve the defect.
    Mat projected = lorentz_reproject(m);
    if (raw_defect(projected) < raw_defect(m)) m = std::move(projected);
    cnt = 0;
  }
  return MobiusMap(std::move(m), a.parity() * b.parity(), cnt);
}

MobiusMap inverse(const MobiusMap& a) {
  Mat j = lorentz_j(a.sphere_dim());
  return MobiusMap(j * a.matrix().transpose() * j, a.parity(),
                   a.compositions_since_projection());
}

double cross_ratio(const SpherePoint& x1, const SpherePoint& x2,
                   const SpherePoint& x3, const SpherePoint& x4) {
  const SpherePoint* pts[4] = {&x1, &x2, &x3, &x4};
  for (int i = 0; i < 4; ++i)
    for (int k = i + 1; k < 4; ++k)
      if (chordal(*pts[i], *pts[k]) <= 1e-12)
        raise(ErrorKind::DegenerateQuadruple,
              "points " + std::to_string(i + 1) + " and " + std::to_string(k + 1) +
                  " coincide");
  return chordal(x1, x3) * chordal(x2, x4) /
         (chordal(x1, x4) * chordal(x2, x3));
}

SpherePoint attracting_fixed_point(const MobiusMap& m, int iterations) {
  int d = m.sphere_dim() + 2;
  // Fixed full-rank start; power iteration drifts to the dominant null ray.
  Vec w(d);
  for (int i = 0; i < d; ++i) w[i] = 0.37 + 0.11 * i;
  w[d - 1] = 1.3;
  for (int it = 0; it < iterations; ++it) {
    w = m.matrix() * w;
    double s = std::fabs(w[d - 1]);
    if (s < kRescaleFloor)
      raise(ErrorKind::NumericalDegeneracy, "power iteration collapsed");
    w /= s;
  }
  Vec x = w.head(d - 1) / w[d - 1];
  double n = x.norm();
  if (n < 1e-8)
    raise(ErrorKind::NumericalDegeneracy, "fixed point extraction failed");
  return SpherePoint(x / n);
}

PointBatch::PointBatch(int sphere_dim, std::size_t count)
    : n_(sphere_dim), count_(count),
      buf_(static_cast<std::size_t>(sphere_dim + 2) * count, 0.0) {
  // last row (lift weight) starts at 1
  double* last = buf_.data() + static_cast<std::size_t>(n_ + 1) * count_;
  std::fill(last, last + count_, 1.0);
}

void PointBatch::set(std::size_t i, const SpherePoint& p) {
  for (int r = 0; r <= n_; ++r)
    buf_[static_cast<std::size_t>(r) * count_ + i] = p.coords()[r];
  buf_[static_cast<std::size_t>(n_ + 1) * count_ + i] = 1.0;
}

SpherePoint PointBatch::get(std::size_t i) const {
  Vec x(n_ + 1);
  for (int r = 0; r <= n_; ++r)
    x[r] = buf_[static_cast<std::size_t>(r) * count_ + i];
  return SpherePoint(std::move(x));
}

void PointBatch::apply(const MobiusMap& m, const PointBatch& src, PointBatch& dst) {
  const auto& k = kern::active();
  int dim = src.rows();
  std::size_t n = src.count_;
  // Row-major copy of the matrix for the kernel.
  std::vector<double> mm(static_cast<std::size_t>(dim) * dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      mm[static_cast<std::size_t>(r) * dim + c] = m.matrix()(r, c);
  std::vector<double> scale(n);
  k.matvec_soa(mm.data(), dim, src.buf_.data(), dst.buf_.data(), n);
  k.dehomogenize(dst.buf_.data(), dim, n, scale.data());
  for (std::size_t i = 0; i < n; ++i)
    if (scale[i] < kRescaleFloor)
      raise(ErrorKind::NumericalDegeneracy, "batch rescale factor below floor");
  k.normalize_columns(dst.buf_.data(), dim - 1, n);
  double* last = dst.buf_.data() + static_cast<std::size_t>(dim - 1) * n;
  std::fill(last, last + n, 1.0);
}

void PointBatch::chordal_distances(const PointBatch& a, const PointBatch& b,
                                   double* out) {
  const auto& k = kern::active();
  k.dist2_columns(a.buf_.data(), b.buf_.data(), a.n_ + 1, a.count_, out);
  for (std::size_t i = 0; i < a.count_; ++i) out[i] = std::sqrt(out[i]);
}

}  // namespace schottky
