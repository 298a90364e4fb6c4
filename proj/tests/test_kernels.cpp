#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "schottky/kern/kernels.hpp"
#include "schottky/rng.hpp"

using namespace schottky;

namespace {

std::vector<double> random_soa(int rows, std::size_t n, Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(rows) * n);
  for (double& x : v) x = rng.uniform(-2.0, 2.0);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match naive arithmetic") {
  Rng rng(7);
  const int dim = 4;
  const std::size_t n = 37;
  auto x = random_soa(dim, n, rng);
  std::vector<double> m(dim * dim);
  for (double& v : m) v = rng.uniform(-1.0, 1.0);

  const auto& ops = kern::scalar_ops();

  std::vector<double> y(x.size());
  ops.matvec_soa(m.data(), dim, x.data(), y.data(), n);
  for (std::size_t i = 0; i < n; i += 5) {
    for (int r = 0; r < dim; ++r) {
      double acc = 0.0;
      for (int q = 0; q < dim; ++q) acc += m[r * dim + q] * x[q * n + i];
      CHECK(y[r * n + i] == doctest::Approx(acc).epsilon(1e-15));
    }
  }

  std::vector<double> u{0.3, -0.2, 0.9, 0.1};
  std::vector<double> margin(n);
  ops.affine_margin(x.data(), dim, n, u.data(), 0.25, margin.data());
  for (std::size_t i = 0; i < n; i += 7) {
    double acc = -0.25;
    for (int r = 0; r < dim; ++r) acc += u[r] * x[r * n + i];
    CHECK(margin[i] == doctest::Approx(acc).epsilon(1e-15));
  }

  auto z = x;
  ops.normalize_columns(z.data(), dim, n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int r = 0; r < dim; ++r) s += z[r * n + i] * z[r * n + i];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("SIMD kernels are bit-identical to the scalar reference") {
  if (!kern::simd_available()) {
    MESSAGE("no SIMD variant on this host; skipping equivalence check");
    return;
  }
  const auto& sc = kern::scalar_ops();
  const auto* simd = kern::simd_ops();
  REQUIRE(simd != nullptr);

  Rng rng(99);
  for (int dim : {4, 5, 6}) {
    for (std::size_t n : {1ul, 3ul, 4ul, 5ul, 17ul, 256ul, 1003ul}) {
      auto x = random_soa(dim, n, rng);
      std::vector<double> m(static_cast<std::size_t>(dim) * dim);
      for (double& v : m) v = rng.uniform(-1.0, 1.0);
      std::vector<double> u(static_cast<std::size_t>(dim));
      for (double& v : u) v = rng.uniform(-1.0, 1.0);

      std::vector<double> y1(x.size()), y2(x.size());
      sc.matvec_soa(m.data(), dim, x.data(), y1.data(), n);
      simd->matvec_soa(m.data(), dim, x.data(), y2.data(), n);
      CHECK(std::memcmp(y1.data(), y2.data(), y1.size() * sizeof(double)) == 0);

      std::vector<double> g1(n), g2(n);
      sc.affine_margin(x.data(), dim, n, u.data(), 0.37, g1.data());
      simd->affine_margin(x.data(), dim, n, u.data(), 0.37, g2.data());
      CHECK(std::memcmp(g1.data(), g2.data(), n * sizeof(double)) == 0);

      auto z1 = x, z2 = x;
      sc.normalize_columns(z1.data(), dim, n);
      simd->normalize_columns(z2.data(), dim, n);
      CHECK(std::memcmp(z1.data(), z2.data(), z1.size() * sizeof(double)) == 0);

      auto b = random_soa(dim, n, rng);
      sc.dist2_columns(x.data(), b.data(), dim, n, g1.data());
      simd->dist2_columns(x.data(), b.data(), dim, n, g2.data());
      CHECK(std::memcmp(g1.data(), g2.data(), n * sizeof(double)) == 0);

      auto h1 = x, h2 = x;
      std::vector<double> s1(n), s2(n);
      sc.dehomogenize(h1.data(), dim, n, s1.data());
      simd->dehomogenize(h2.data(), dim, n, s2.data());
      CHECK(std::memcmp(h1.data(), h2.data(), h1.size() * sizeof(double)) == 0);
      CHECK(std::memcmp(s1.data(), s2.data(), n * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("dispatch honors forced selection") {
  kern::set_isa(kern::Isa::scalar);
  CHECK(kern::isa() == kern::Isa::scalar);
  CHECK(std::string(kern::active().name) == "scalar");
  kern::set_isa_auto();
  if (kern::simd_available()) CHECK(kern::isa() != kern::Isa::scalar);
}
