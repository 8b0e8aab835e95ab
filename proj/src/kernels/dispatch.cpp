#include "flatkahler/kernels/dispatch.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace flatkahler::kernels {

namespace {

// -1: no override.
std::atomic<int> g_override{-1};

bool cpu_has_avx2() {
#if FLATKAHLER_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported;
#else
  return false;
#endif
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  // FLATKAHLER_ISA=scalar forces the reference path.
  static const bool env_scalar = [] {
    const char* env = std::getenv("FLATKAHLER_ISA");
    return env && std::strcmp(env, "scalar") == 0;
  }();
  if (env_scalar) return Isa::kScalar;
  return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

void set_isa_override(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa))
    throw std::invalid_argument("instruction set " + std::string(isa_name(*isa)) + " is not available");
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

}  // namespace flatkahler::kernels
