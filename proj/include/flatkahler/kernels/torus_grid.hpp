// Brute-force fixed-point search kernel on the 64^4 grid of R^4/Z^4.
//
// For an affine map x -> r x + t the displacement y = (r - Id) x + t is
// measured at x = k / 64 in units of 1 / modulus, modulus = 64 * den with den
// a common denominator of t. The distance of y to Z^4 is the L-infinity norm
// of the centered residues.

#pragma once

#include <cstddef>
#include <cstdint>

#include "flatkahler/kernels/dispatch.hpp"

namespace flatkahler::kernels {

inline constexpr int kGridSide = 64;
inline constexpr std::size_t kSlabSize = kGridSide * kGridSide;

struct TorusGridProblem {
  std::int32_t modulus = 1;
  // step[i][j] = den * (r - Id)_{ij} reduced into [0, modulus).
  std::int32_t step[4][4] = {};
  // offset[i] = 64 * den * t_i reduced into [0, modulus).
  std::int32_t offset[4] = {};
};

// Scans the slab of points with fixed (k0, k1). Writes the flat index
// ((k0 * 64 + k1) * 64 + k2) * 64 + k3 and distance of every point with
// distance <= threshold, in increasing index order, and returns their count.
// Both output arrays need room for kSlabSize entries.
std::size_t torus_grid_slab(const TorusGridProblem& p, int k0, int k1, std::int32_t threshold,
                            std::uint32_t* index, std::int32_t* distance);
std::size_t torus_grid_slab(const TorusGridProblem& p, int k0, int k1, std::int32_t threshold,
                            std::uint32_t* index, std::int32_t* distance, Isa isa);

std::size_t torus_grid_slab_scalar(const TorusGridProblem& p, int k0, int k1, std::int32_t threshold,
                                   std::uint32_t* index, std::int32_t* distance);
#if FLATKAHLER_HAVE_AVX2
std::size_t torus_grid_slab_avx2(const TorusGridProblem& p, int k0, int k1, std::int32_t threshold,
                                 std::uint32_t* index, std::int32_t* distance);
#endif

}  // namespace flatkahler::kernels
