// Scalar reference kernels against their SIMD variants.

#include <random>
#include <stdexcept>

#include "doctest.h"
#include "flatkahler/kernels/dispatch.hpp"
#include "flatkahler/kernels/form_residual.hpp"
#include "flatkahler/kernels/torus_grid.hpp"

using namespace flatkahler::kernels;

namespace {

struct IsaGuard {
  ~IsaGuard() { set_isa_override(std::nullopt); }
};

std::vector<Isa> available() {
  std::vector<Isa> out = {Isa::kScalar};
  if (isa_available(Isa::kAvx2)) out.push_back(Isa::kAvx2);
  return out;
}

// Residual by the defining formula, in long double.
double residual_reference(const std::vector<double>& coef, std::size_t m, double scale, double a, double b, double c) {
  const long double mono[kResidualMonomials] = {1, a, b, c, (long double)a * a, (long double)a * b, (long double)a * c,
                                                (long double)b * b, (long double)b * c, (long double)c * c};
  long double acc = 0;
  for (std::size_t e = 0; e < m; ++e) {
    long double r = 0;
    for (std::size_t k = 0; k < kResidualMonomials; ++k) r += mono[k] * coef[k * m + e];
    acc += r * r;
  }
  return static_cast<double>(std::sqrt(2 * acc) * scale);
}

}  // namespace

TEST_CASE("dispatch") {
  IsaGuard guard;
  CHECK(isa_available(Isa::kScalar));
  CHECK(isa_name(Isa::kScalar) == "scalar");
  set_isa_override(Isa::kScalar);
  CHECK(active_isa() == Isa::kScalar);
  set_isa_override(std::nullopt);
  if (isa_available(Isa::kAvx2)) {
    CHECK(active_isa() == Isa::kAvx2);
  } else {
    CHECK_THROWS_AS(set_isa_override(Isa::kAvx2), std::invalid_argument);
  }
}

TEST_CASE("form residual variants are bit-identical and match the definition") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t m : {1u, 3u, 6u, 28u, 120u}) {
    for (std::size_t count : {1u, 3u, 4u, 5u, 17u, 1000u}) {
      std::vector<double> coef(kResidualMonomials * m), a(count), b(count), c(count);
      for (auto& x : coef) x = u(rng);
      for (std::size_t i = 0; i < count; ++i) {
        a[i] = u(rng);
        b[i] = u(rng);
        c[i] = u(rng);
      }
      std::vector<std::vector<double>> outs;
      for (Isa isa : available()) {
        std::vector<double> out(count, -1.0);
        ResidualBatch batch{coef.data(), m, 0.37, a.data(), b.data(), c.data(), count, out.data()};
        form_residual(batch, isa);
        outs.push_back(out);
      }
      for (std::size_t i = 0; i < count; ++i) {
        const double ref = residual_reference(coef, m, 0.37, a[i], b[i], c[i]);
        CHECK(outs[0][i] == doctest::Approx(ref).epsilon(1e-12));
        for (std::size_t v = 1; v < outs.size(); ++v) CHECK(outs[v][i] == outs[0][i]);
      }
    }
  }
}

TEST_CASE("torus grid variants agree and match a direct count") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    TorusGridProblem p;
    const int den = 1 + trial % 4;
    p.modulus = kGridSide * den;
    std::uniform_int_distribution<int> entry(0, p.modulus - 1);
    for (auto& row : p.step)
      for (auto& x : row) x = entry(rng);
    for (auto& x : p.offset) x = entry(rng);
    const std::int32_t threshold = 1 + trial * 3;
    for (int k0 : {0, 17, 63})
      for (int k1 : {0, 5, 62}) {
        std::vector<std::vector<std::uint32_t>> idx;
        std::vector<std::vector<std::int32_t>> dist;
        for (Isa isa : available()) {
          std::vector<std::uint32_t> i(kSlabSize);
          std::vector<std::int32_t> d(kSlabSize);
          const std::size_t n = torus_grid_slab(p, k0, k1, threshold, i.data(), d.data(), isa);
          i.resize(n);
          d.resize(n);
          idx.push_back(i);
          dist.push_back(d);
        }
        // Direct evaluation.
        std::vector<std::uint32_t> ref_idx;
        std::vector<std::int32_t> ref_dist;
        for (int k2 = 0; k2 < kGridSide; ++k2)
          for (int k3 = 0; k3 < kGridSide; ++k3) {
            const long k[4] = {k0, k1, k2, k3};
            std::int32_t worst = 0;
            for (int r = 0; r < 4; ++r) {
              long v = p.offset[r];
              for (int s = 0; s < 4; ++s) v += static_cast<long>(p.step[r][s]) * k[s];
              v %= p.modulus;
              const long centered = std::min(v, p.modulus - v);
              worst = std::max<std::int32_t>(worst, static_cast<std::int32_t>(centered));
            }
            if (worst <= threshold) {
              ref_idx.push_back(static_cast<std::uint32_t>(((k0 * 64 + k1) * 64 + k2) * 64 + k3));
              ref_dist.push_back(worst);
            }
          }
        for (std::size_t v = 0; v < idx.size(); ++v) {
          CHECK(idx[v] == ref_idx);
          CHECK(dist[v] == ref_dist);
        }
      }
  }
}
