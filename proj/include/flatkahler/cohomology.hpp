// Cohomology of X = T/G: Betti and Hodge numbers from characters of the
// lattice representation, invariant 2-forms and holomorphic 2-forms.

#pragma once

#include <optional>
#include <vector>

#include "flatkahler/common.hpp"
#include "flatkahler/crystal.hpp"
#include "flatkahler/ratmath.hpp"

namespace flatkahler::cohomology {

using crystal::FlatKahlerData;
using ratmath::RationalMatrix;

// A translation-invariant real 2-form alpha(x, y) = x^T A y, A = -A^T.
class TwoForm {
 public:
  TwoForm() = default;
  // Exact skew-symmetry required.
  static TwoForm from_rational(RationalMatrix matrix);
  // Skew-symmetry required within tol::kNumeric (relative); the stored matrix
  // is the exact antisymmetrization.
  static TwoForm from_real(const Mat& matrix);

  const Mat& matrix() const { return matrix_; }
  const std::optional<RationalMatrix>& exact() const { return exact_; }
  bool rational() const { return exact_.has_value(); }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  bool is_zero() const { return matrix_.isZero(0.0); }

 private:
  Mat matrix_;
  std::optional<RationalMatrix> exact_;
};

struct HodgeDiamond {
  int n = 0;
  std::vector<std::vector<long>> h;  // h[p][q]
  std::vector<long> b;               // b_0 .. b_{2n}
  double max_rounding_residual = 0.0;
};

// b_k = (1/|G|) sum_g trace(Lambda^k r_g), exact.
std::vector<long> betti_numbers(const FlatKahlerData& data);

// h^{p,q} = (1/|G|) sum_g e_p(mu) e_q(conj mu), mu the eigenvalues of the
// inverse complex rotation. Checks symmetry, Serre duality and
// sum_{p+q=k} h^{p,q} = b_k.
HodgeDiamond hodge_numbers(const FlatKahlerData& data);

// Exact basis of the G-invariant skew forms; size equals b_2.
std::vector<TwoForm> invariant_two_forms(const FlatKahlerData& data);

// Orthonormal basis (in upper-triangle coordinates) of the G-invariant real
// forms that are anti-invariant under the complex structure, i.e. real parts
// of invariant (2,0)-forms. Dimension is 2 h^{2,0}.
std::vector<TwoForm> holomorphic_two_forms(const FlatKahlerData& data);

// sigma_2(x, y) = -sigma_1(J x, y): imaginary part of the (2,0)-form whose
// real part is sigma_1.
Mat imaginary_partner(const Mat& sigma1, const Mat& cplx);

// True iff h^{2,0} > 0, i.e. X admits a non-algebraic deformation.
bool obstruction_verdict(const FlatKahlerData& data);

// Matrix of A -> r^T A r on upper-triangle coordinates of skew forms.
RationalMatrix lambda2_representation(const RationalMatrix& r);
ratmath::QVector skew_coordinates(const RationalMatrix& a);
RationalMatrix skew_from_coordinates(const ratmath::QVector& c, std::size_t dim);
Vec skew_coordinates(const Mat& a);
Mat skew_from_coordinates(const Vec& c, Eigen::Index dim);

// max over the group of |r^T A r - A| (max-abs entry).
double invariance_residual(const Mat& form, const std::vector<Mat>& rotations);

}  // namespace flatkahler::cohomology
