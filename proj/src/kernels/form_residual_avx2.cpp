#include <immintrin.h>

#include "flatkahler/kernels/form_residual.hpp"

namespace flatkahler::kernels {

// Four samples per lane group; the tail goes through the scalar kernel, which
// uses the same operation order.
void form_residual_avx2(const ResidualBatch& batch) {
  const std::size_t m = batch.entries;
  const double* coef = batch.coefficients;
  const std::size_t full = batch.count - batch.count % 4;
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d scale = _mm256_set1_pd(batch.scale);
  for (std::size_t p = 0; p < full; p += 4) {
    const __m256d a = _mm256_loadu_pd(batch.a + p);
    const __m256d b = _mm256_loadu_pd(batch.b + p);
    const __m256d c = _mm256_loadu_pd(batch.c + p);
    const __m256d mono[kResidualMonomials] = {
        _mm256_set1_pd(1.0),  a, b, c, _mm256_mul_pd(a, a), _mm256_mul_pd(a, b), _mm256_mul_pd(a, c),
        _mm256_mul_pd(b, b), _mm256_mul_pd(b, c), _mm256_mul_pd(c, c)};
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t e = 0; e < m; ++e) {
      __m256d r = _mm256_setzero_pd();
      for (std::size_t k = 0; k < kResidualMonomials; ++k)
        r = _mm256_fmadd_pd(mono[k], _mm256_broadcast_sd(coef + k * m + e), r);
      acc = _mm256_fmadd_pd(r, r, acc);
    }
    _mm256_storeu_pd(batch.out + p, _mm256_mul_pd(_mm256_sqrt_pd(_mm256_mul_pd(acc, two)), scale));
  }
  if (full < batch.count) {
    ResidualBatch tail = batch;
    tail.a += full;
    tail.b += full;
    tail.c += full;
    tail.out += full;
    tail.count = batch.count - full;
    form_residual_scalar(tail);
  }
}

}  // namespace flatkahler::kernels
