#include "schottky/kern/kernels.hpp"

// Fallback for architectures without a SIMD kernel variant.

namespace schottky::kern {

const Ops* simd_ops() { return nullptr; }
bool simd_cpu_ok() { return false; }
Isa simd_isa_tag() { return Isa::scalar; }

}  // namespace schottky::kern
