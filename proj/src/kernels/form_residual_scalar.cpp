#include <cmath>
#include <stdexcept>

#include "flatkahler/kernels/form_residual.hpp"

namespace flatkahler::kernels {

void form_residual_scalar(const ResidualBatch& batch) {
  const std::size_t m = batch.entries;
  const double* coef = batch.coefficients;
  for (std::size_t p = 0; p < batch.count; ++p) {
    const double a = batch.a[p];
    const double b = batch.b[p];
    const double c = batch.c[p];
    const double mono[kResidualMonomials] = {1.0, a, b, c, a * a, a * b, a * c, b * b, b * c, c * c};
    double acc = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      double r = 0.0;
      for (std::size_t k = 0; k < kResidualMonomials; ++k) r = std::fma(mono[k], coef[k * m + e], r);
      acc = std::fma(r, r, acc);
    }
    batch.out[p] = std::sqrt(acc * 2.0) * batch.scale;
  }
}

void form_residual(const ResidualBatch& batch) { form_residual(batch, active_isa()); }

void form_residual(const ResidualBatch& batch, Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      form_residual_scalar(batch);
      return;
    case Isa::kAvx2:
#if FLATKAHLER_HAVE_AVX2
      if (isa_available(Isa::kAvx2)) {
        form_residual_avx2(batch);
        return;
      }
#endif
      break;
  }
  throw std::invalid_argument("form_residual: instruction set not available");
}

}  // namespace flatkahler::kernels
