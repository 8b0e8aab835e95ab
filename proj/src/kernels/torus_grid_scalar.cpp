#include <algorithm>
#include <stdexcept>

#include "flatkahler/kernels/torus_grid.hpp"

namespace flatkahler::kernels {

namespace {

std::int32_t reduce(std::int64_t v, std::int32_t modulus) {
  const std::int64_t r = v % modulus;
  return static_cast<std::int32_t>(r < 0 ? r + modulus : r);
}

}  // namespace

std::size_t torus_grid_slab_scalar(const TorusGridProblem& p, int k0, int k1, std::int32_t threshold,
                                   std::uint32_t* index, std::int32_t* distance) {
  const std::int32_t L = p.modulus;
  std::int32_t table[4][kGridSide];
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < kGridSide; ++k) table[i][k] = reduce(std::int64_t{p.step[i][3]} * k, L);
  std::size_t count = 0;
  const auto slab = static_cast<std::uint32_t>((k0 * kGridSide + k1) * kGridSide);
  for (int k2 = 0; k2 < kGridSide; ++k2) {
    std::int32_t base[4];
    for (int i = 0; i < 4; ++i)
      base[i] = reduce(std::int64_t{p.offset[i]} + std::int64_t{p.step[i][0]} * k0 +
                           std::int64_t{p.step[i][1]} * k1 + std::int64_t{p.step[i][2]} * k2,
                       L);
    for (int k3 = 0; k3 < kGridSide; ++k3) {
      std::int32_t dist = 0;
      for (int i = 0; i < 4; ++i) {
        std::int32_t y = base[i] + table[i][k3];
        if (y >= L) y -= L;
        dist = std::max(dist, std::min(y, L - y));
      }
      if (dist <= threshold) {
        index[count] = (slab + static_cast<std::uint32_t>(k2)) * kGridSide + static_cast<std::uint32_t>(k3);
        distance[count] = dist;
        ++count;
      }
    }
  }
  return count;
}

std::size_t torus_grid_slab(const TorusGridProblem& p, int k0, int k1, std::int32_t threshold,
                            std::uint32_t* index, std::int32_t* distance) {
  return torus_grid_slab(p, k0, k1, threshold, index, distance, active_isa());
}

std::size_t torus_grid_slab(const TorusGridProblem& p, int k0, int k1, std::int32_t threshold,
                            std::uint32_t* index, std::int32_t* distance, Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return torus_grid_slab_scalar(p, k0, k1, threshold, index, distance);
    case Isa::kAvx2:
#if FLATKAHLER_HAVE_AVX2
      if (isa_available(Isa::kAvx2)) return torus_grid_slab_avx2(p, k0, k1, threshold, index, distance);
#endif
      break;
  }
  throw std::invalid_argument("torus_grid_slab: instruction set not available");
}

}  // namespace flatkahler::kernels
