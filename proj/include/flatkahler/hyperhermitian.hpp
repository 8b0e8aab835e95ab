// Equivariant hyper-Hermitian structures.
//
// Given an invariant holomorphic 2-form with real part sigma_1, the lattice
// space splits as V = E (+) F with E = ker sigma_1 and F its metric
// complement. On F an invariant metric g_F and a complex structure J_F
// anticommuting with I are synthesized from sigma_1 and an averaged metric
// h_1: with h_1(A x, y) = sigma_1(x, y) and S = (-A^2)^{-1/2}, J_F = A S and
// g_F = c h_1(S., .), c > 0 the mean of the square roots of the eigenvalues of
// -A^2. The twistor family is J_q = I on E and aI + bJ + cK on F.

#pragma once

#include <vector>

#include "flatkahler/cohomology.hpp"
#include "flatkahler/common.hpp"
#include "flatkahler/crystal.hpp"
#include "flatkahler/twistor_point.hpp"

namespace flatkahler::hyperhermitian {

using cohomology::TwoForm;
using crystal::FlatKahlerData;

struct SpectralReport {
  std::vector<double> eigenvalues;  // of A^2, all negative
  double conditioning = 1.0;        // max |alpha| / min |alpha|
};

struct Splitting {
  Mat e_basis;  // 2n x dim E, orthonormal columns
  Mat f_basis;  // 2n x dim F, orthonormal columns
  double min_singular_on_f = 0.0;
};

// Synthesis input restricted to F, in the coordinates of f_basis.
struct FRestriction {
  Mat complex_structure;
  Mat sigma1;
  Mat metric;
  std::vector<Mat> group;
};

struct SynthesisResiduals {
  double j_square = 0.0;      // |J^2 + Id|
  double anticommute = 0.0;   // |IJ + JI|
  double symmetry = 0.0;      // |g - g^T| / |g|
  double min_eigenvalue = 0.0;
  double j_hermitian = 0.0;   // |J^T g J - g| / |g|
  double i_hermitian = 0.0;   // |I^T g I - g| / |g|
  double group_metric = 0.0;  // max_g |r^T g r - g| / |g|
  double group_j = 0.0;       // max_g |r J - J r|

  double worst() const;
};

struct Synthesis {
  Mat metric;  // g_F
  Mat j;       // J_F
  Mat a;       // A = h_1^{-1}-dual of sigma_1
  Mat s;       // (-A^2)^{-1/2}
  SpectralReport spectrum;
  SynthesisResiduals residuals;
};

struct HyperHermitianStructure {
  Splitting splitting;
  TwoForm sigma1;
  Mat metric;         // g = g_E (+) g_F on the whole space
  Mat i;              // the complex structure of X
  Mat i_on_e;         // I on E, zero on F
  Mat i_on_f;         // I on F, zero on E
  Mat j;              // J_F on F, zero on E
  Mat k;              // K_F = I J_F on F, zero on E
  Mat j_f;            // F-block operators in f_basis coordinates
  Mat k_f;
  Mat i_f;
  SpectralReport spectrum;
  SynthesisResiduals residuals;
  std::vector<Mat> group;  // rotation parts of the group closure

  Eigen::Index dim_e() const { return splitting.e_basis.cols(); }
  Eigen::Index dim_f() const { return splitting.f_basis.cols(); }
};

// Group average of the I-Hermitian part of `base` (identity by default).
Mat average_metric(const FlatKahlerData& data);
Mat average_metric(const FlatKahlerData& data, const Mat& base);

Splitting kernel_splitting(const FlatKahlerData& data, const TwoForm& sigma1, const Mat& h1);

FRestriction restrict_to_complement(const FlatKahlerData& data, const TwoForm& sigma1, const Mat& h1,
                                    const Splitting& split);

Synthesis synthesize(const FRestriction& f);

HyperHermitianStructure assemble(const FlatKahlerData& data, const TwoForm& sigma1);
HyperHermitianStructure assemble(const FlatKahlerData& data, const TwoForm& sigma1, const Mat& h1);

// J_q = I on E, aI + bJ + cK on F. Throws InvalidData for non-unit q.
Mat twistor_structure(const HyperHermitianStructure& h, const TwistorPoint& q);

// Largest principal angle (radians) between span(a) and its best match in
// span(b); zero iff span(a) is contained in span(b).
double containment_angle(const Mat& a, const Mat& b);

// |(Id - P) op B| with P the orthogonal projector onto span(B).
double invariance_defect(const Mat& basis, const Mat& op);

// Orthonormal basis of the column span using a rank threshold relative to the
// largest singular value.
Mat orthonormal_span(const Mat& columns, double relative_tolerance);

}  // namespace flatkahler::hyperhermitian
