// SU(2) action on 2-forms and Hodge loci over the twistor sphere.
//
// A real 2-form alpha has type (1,1) for J_q iff J_q^T A J_q = A. Since
// J_q = I_E + a I_F + b J + c K is linear in q, the defect is a quadratic
// polynomial in (1, a, b, c) whose coefficients are computed once per form;
// the sphere scan evaluates that polynomial on a Fibonacci grid.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "flatkahler/common.hpp"
#include "flatkahler/hyperhermitian.hpp"
#include "flatkahler/twistor_point.hpp"

namespace flatkahler::twistor {

using cohomology::TwoForm;
using hyperhermitian::HyperHermitianStructure;

// Unit quaternion u = w + x i + y j + z k.
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  Quaternion operator*(const Quaternion& o) const;
  static Quaternion from_axis_angle(const TwistorPoint& axis, double angle);
};

enum class Classification { kFull, kFinite, kEmpty };
std::string to_string(Classification c);

struct LocusSample {
  TwistorPoint q;
  double residual = 0.0;
};

struct LocusReport {
  Classification classification = Classification::kEmpty;
  std::vector<TwistorPoint> points;
  std::vector<double> point_residuals;  // refined residual of each point
  double min_residual = 0.0;
  double max_residual = 0.0;
  int grid_size = 0;
  std::size_t seeds = 0;             // grid local minima that were refined
  std::vector<LocusSample> samples;  // one per grid point, in grid order
};

struct ScanOptions {
  unsigned threads = 1;
  bool keep_samples = true;
};

// |J_q^T A J_q - A|_F / |A|_F. Throws InvalidData for the zero form.
double hodge_residual(const TwoForm& alpha, const Mat& jq);

// Full-space operator Id_E (+) (w + x I + y J + z K) on F.
Mat su2_operator(const HyperHermitianStructure& h, const Quaternion& u);

// (u . alpha)(x, y) = alpha(U^{-1} x, U^{-1} y).
TwoForm su2_apply(const HyperHermitianStructure& h, const TwoForm& alpha, const Quaternion& u);

// max over u in {I_F, J, K} of |u^T A + A u|_F / |A|_F.
double su2_invariance_defect(const HyperHermitianStructure& h, const TwoForm& alpha);
bool su2_invariance_test(const HyperHermitianStructure& h, const TwoForm& alpha);

// |I_E^T A + A I_E|_F / |A|_F: zero iff the E-block of alpha has type (1,1).
double e_block_defect(const HyperHermitianStructure& h, const TwoForm& alpha);

// alpha is J_q-invariant for every q iff it is SU(2)-invariant and its E-block
// has type (1,1); the second condition is vacuous when E = 0.
bool twistor_invariance_test(const HyperHermitianStructure& h, const TwoForm& alpha);

// Deterministic near-uniform points, ordered by decreasing c.
std::vector<TwistorPoint> fibonacci_sphere(int n);

// The residual of one form as a polynomial on R^3.
class ResidualField {
 public:
  ResidualField(const HyperHermitianStructure& h, const TwoForm& alpha);

  double evaluate(const TwistorPoint& q) const;
  // Evaluates through the dispatched batch kernel.
  void evaluate(const std::vector<TwistorPoint>& qs, std::vector<double>& out, unsigned threads = 1) const;
  // Upper-triangle entries of J_q^T A J_q - A and their (a, b, c) derivatives.
  Vec defect(const TwistorPoint& q) const;
  Mat jacobian(const TwistorPoint& q) const;

  const std::vector<double>& coefficients() const { return coefficients_; }
  std::size_t entries() const { return entries_; }
  double scale() const { return scale_; }

 private:
  std::vector<double> coefficients_;  // kResidualMonomials x entries, row-major
  std::size_t entries_ = 0;
  double scale_ = 1.0;  // 1 / |A|_F
};

LocusReport scan_locus(const HyperHermitianStructure& h, const TwoForm& alpha, int grid_size = kDefaultGridSize,
                       const ScanOptions& options = {});

}  // namespace flatkahler::twistor
