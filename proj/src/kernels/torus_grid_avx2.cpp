#include <immintrin.h>

#include "flatkahler/kernels/torus_grid.hpp"

namespace flatkahler::kernels {

namespace {

std::int32_t reduce(std::int64_t v, std::int32_t modulus) {
  const std::int64_t r = v % modulus;
  return static_cast<std::int32_t>(r < 0 ? r + modulus : r);
}

}  // namespace

// Eight consecutive k3 per vector; the residue table along k3 is shared by all
// rows of the slab.
std::size_t torus_grid_slab_avx2(const TorusGridProblem& p, int k0, int k1, std::int32_t threshold,
                                 std::uint32_t* index, std::int32_t* distance) {
  const std::int32_t L = p.modulus;
  alignas(32) std::int32_t table[4][kGridSide];
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < kGridSide; ++k) table[i][k] = reduce(std::int64_t{p.step[i][3]} * k, L);
  const __m256i modulus = _mm256_set1_epi32(L);
  const __m256i below = _mm256_set1_epi32(L - 1);
  const __m256i limit = _mm256_set1_epi32(threshold);
  std::size_t count = 0;
  const auto slab = static_cast<std::uint32_t>((k0 * kGridSide + k1) * kGridSide);
  alignas(32) std::int32_t lanes[8];
  for (int k2 = 0; k2 < kGridSide; ++k2) {
    __m256i base[4];
    for (int i = 0; i < 4; ++i)
      base[i] = _mm256_set1_epi32(reduce(std::int64_t{p.offset[i]} + std::int64_t{p.step[i][0]} * k0 +
                                             std::int64_t{p.step[i][1]} * k1 + std::int64_t{p.step[i][2]} * k2,
                                         L));
    const std::uint32_t row = (slab + static_cast<std::uint32_t>(k2)) * kGridSide;
    for (int k3 = 0; k3 < kGridSide; k3 += 8) {
      __m256i dist = _mm256_setzero_si256();
      for (int i = 0; i < 4; ++i) {
        __m256i y = _mm256_add_epi32(base[i], _mm256_load_si256(reinterpret_cast<const __m256i*>(&table[i][k3])));
        y = _mm256_sub_epi32(y, _mm256_and_si256(_mm256_cmpgt_epi32(y, below), modulus));
        dist = _mm256_max_epi32(dist, _mm256_min_epi32(y, _mm256_sub_epi32(modulus, y)));
      }
      // Lanes with dist <= threshold.
      int mask = ~_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(dist, limit))) & 0xff;
      if (mask == 0) continue;
      _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), dist);
      while (mask) {
        const int lane = __builtin_ctz(static_cast<unsigned>(mask));
        mask &= mask - 1;
        index[count] = row + static_cast<std::uint32_t>(k3 + lane);
        distance[count] = lanes[lane];
        ++count;
      }
    }
  }
  return count;
}

}  // namespace flatkahler::kernels
