// Batched evaluation of the twistor residual polynomial.
//
// For each sample q = (a, b, c) the ten monomials
//   1, a, b, c, aa, ab, ac, bb, bc, cc
// weight the rows of a 10 x m coefficient table (row-major, m entries per
// row); the residual is sqrt(2 sum_e r_e^2) * scale. Every variant evaluates
// with the same fused multiply-add sequence so results are bit-identical.

#pragma once

#include <cstddef>

#include "flatkahler/kernels/dispatch.hpp"

namespace flatkahler::kernels {

inline constexpr std::size_t kResidualMonomials = 10;

struct ResidualBatch {
  const double* coefficients = nullptr;  // kResidualMonomials * entries
  std::size_t entries = 0;
  double scale = 1.0;
  const double* a = nullptr;
  const double* b = nullptr;
  const double* c = nullptr;
  std::size_t count = 0;
  double* out = nullptr;
};

void form_residual(const ResidualBatch& batch);
void form_residual(const ResidualBatch& batch, Isa isa);

void form_residual_scalar(const ResidualBatch& batch);
#if FLATKAHLER_HAVE_AVX2
void form_residual_avx2(const ResidualBatch& batch);
#endif

}  // namespace flatkahler::kernels
