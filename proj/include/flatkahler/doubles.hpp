// Quaternionic and co-quaternionic doubles of X = T/G.
//
// X_+ = (T x H_1(T, R)/H_1(T, Z))/G with the diagonal action; X^+ uses the
// dual lattice. Both are flat Kaehler with block complex structures
//   I = (I_X 0; 0 -I_X), J = (0 -1; 1 0), K = I J
// on the quaternionic double.

#pragma once

#include "flatkahler/cohomology.hpp"
#include "flatkahler/crystal.hpp"

namespace flatkahler::doubles {

using cohomology::TwoForm;
using crystal::FlatKahlerData;

struct DoubleResult {
  FlatKahlerData data;
  Mat i;
  Mat j;
  Mat k;
  TwoForm canonical_sigma1;
};

// Throws InvalidData unless `data` validates.
DoubleResult quaternionic_double(const FlatKahlerData& data);
DoubleResult coquaternionic_double(const FlatKahlerData& data);

// max of |I^2 + Id|, |J^2 + Id|, |K^2 + Id|, |IJK + Id| (max-abs entry).
double quaternion_relation_residual(const Mat& i, const Mat& j, const Mat& k);

}  // namespace flatkahler::doubles
