#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "schottky/kern/kernels.hpp"

namespace schottky::kern {

// Provided by exactly one of kernels_{avx2,neon,nosimd}.cpp.
bool simd_cpu_ok();
Isa simd_isa_tag();

namespace {

std::atomic<const Ops*> g_active{nullptr};
std::atomic<Isa> g_isa{Isa::scalar};

void select(Isa want) {
  if (want == Isa::scalar) {
    g_active.store(&scalar_ops());
    g_isa.store(Isa::scalar);
    return;
  }
  const Ops* s = simd_ops();
  if (!s || !simd_cpu_ok() || simd_isa_tag() != want)
    throw std::invalid_argument("requested SIMD variant is not available on this host");
  g_active.store(s);
  g_isa.store(want);
}

void select_auto() {
  if (simd_available()) {
    g_active.store(simd_ops());
    g_isa.store(simd_isa_tag());
  } else {
    g_active.store(&scalar_ops());
    g_isa.store(Isa::scalar);
  }
}

void init_from_env() {
  const char* env = std::getenv("SCHOTTKY_SIMD");
  if (!env || std::strcmp(env, "auto") == 0) {
    select_auto();
  } else if (std::strcmp(env, "scalar") == 0) {
    select(Isa::scalar);
  } else if (std::strcmp(env, "avx2") == 0) {
    select(Isa::avx2);
  } else if (std::strcmp(env, "neon") == 0) {
    select(Isa::neon);
  } else {
    select_auto();
  }
}

const Ops* ensure() {
  const Ops* p = g_active.load();
  if (!p) {
    init_from_env();
    p = g_active.load();
  }
  return p;
}

}  // namespace

bool simd_available() { return simd_ops() != nullptr && simd_cpu_ok(); }

const Ops& active() { return *ensure(); }

Isa isa() {
  ensure();
  return g_isa.load();
}

void set_isa(Isa i) { select(i); }

void set_isa_auto() { select_auto(); }

}  // namespace schottky::kern
