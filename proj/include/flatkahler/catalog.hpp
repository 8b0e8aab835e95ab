// Built-in examples: complex tori, bielliptic surfaces, Bagnera-de Franchis
// manifolds and the dihedral D4 quotients with b_1 = 0.

#pragma once

#include <string>
#include <vector>

#include "flatkahler/crystal.hpp"

namespace flatkahler::catalog {

using crystal::FlatKahlerData;
using ratmath::QVector;
using ratmath::RationalMatrix;

// Period matrix: n x 2n complex, columns are the lattice generators in C^n.
using PeriodMatrix = Eigen::MatrixXcd;

// Complex structure of C^n / Pi Z^{2n} in lattice coordinates. Throws
// InvalidData when the columns are R-linearly dependent.
Mat complex_structure_from_periods(const PeriodMatrix& period);

FlatKahlerData torus(const std::string& label, const PeriodMatrix& period);

// Curves C / (Z + tau Z).
PeriodMatrix curve_periods(Complex tau);
PeriodMatrix square_curve();
PeriodMatrix hexagonal_curve();
// Block period matrix of a product.
PeriodMatrix product_periods(const PeriodMatrix& a, const PeriodMatrix& b);
// (Id | Z) with irrational Z; generic, in particular not algebraic.
PeriodMatrix generic_periods(int n);

// (E1 x E2) / (Z/d) with [m](x, y) = ([m] x, y + m tau). E1 is chosen with an
// automorphism of order d (d = 2: square, d = 4: square, d = 6: hexagonal).
// tau is given in lattice coordinates of E2 and defaults to (1/d, 0).
FlatKahlerData bielliptic(int d, const QVector& tau = {}, Complex e2_tau = Complex(0.0, 1.0));

// (T1 x T2) / (Z/d), acting by `automorphism` on T1 and by translation by
// `tau` on T2. Throws InvalidData unless the automorphism has order exactly d
// and commutes with the complex structure of T1, and d tau = 0 mod the
// lattice.
FlatKahlerData bagnera_de_franchis(const FlatKahlerData& t1, const FlatKahlerData& t2, int d,
                                   const RationalMatrix& automorphism, const QVector& tau);

// The D4 quotient of E x E x S: S an elliptic curve when algebraic_S, a
// generic 2-dimensional torus otherwise.
FlatKahlerData d4_threefold(bool algebraic_S);

// Columns: basis of the enlarged lattice of T in coordinates of E x E x S.
RationalMatrix d4_lattice_basis(bool algebraic_S);

struct CatalogEntry {
  std::string name;
  int n = 0;
  std::string description;
};

std::vector<CatalogEntry> list_catalog();

// Throws InvalidData for unknown names.
FlatKahlerData build(const std::string& name);

}  // namespace flatkahler::catalog
