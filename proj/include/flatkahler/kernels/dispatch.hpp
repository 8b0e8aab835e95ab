// Runtime selection between the scalar reference kernels and their SIMD
// variants.

#pragma once

#include <optional>
#include <string_view>

namespace flatkahler::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);

// The ISA used by the dispatching entry points: the override if set,
// otherwise the best available.
Isa active_isa();

// Forces an ISA (tests). Throws std::invalid_argument if it is unavailable.
void set_isa_override(std::optional<Isa> isa);

}  // namespace flatkahler::kernels
