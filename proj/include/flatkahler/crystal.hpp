// Complex crystallographic quotient data X = T/G and its validation.
//
// The torus T is R^{2n}/Z^{2n} in a fixed lattice basis, carrying a real
// complex structure matrix. G is given by generators (r, t): an integral
// rotation on the lattice and a rational translation reduced into [0, 1).
// Group data is exact; the complex structure is floating point.

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "flatkahler/common.hpp"
#include "flatkahler/ratmath.hpp"

namespace flatkahler::crystal {

using ratmath::QVector;
using ratmath::RationalMatrix;

// x -> rotation * x + translation (mod Z^{2n}).
class AffineIsometry {
 public:
  AffineIsometry() = default;
  // Throws InvalidData unless rotation is square, integral, |det| = 1 and the
  // translation has matching length. The translation is reduced mod 1.
  AffineIsometry(RationalMatrix rotation, QVector translation);

  static AffineIsometry identity(std::size_t dim);

  const RationalMatrix& rotation() const { return rotation_; }
  const QVector& translation() const { return translation_; }
  std::size_t dim() const { return rotation_.rows(); }
  bool is_identity() const;

  std::strong_ordering operator<=>(const AffineIsometry& rhs) const;
  bool operator==(const AffineIsometry& rhs) const { return (*this <=> rhs) == 0; }

 private:
  RationalMatrix rotation_;
  QVector translation_;
};

// (a o b)(x) = a(b(x)).
AffineIsometry compose_affine(const AffineIsometry& a, const AffineIsometry& b);

class FlatKahlerData {
 public:
  FlatKahlerData() = default;
  // Checks shapes only; semantic checks live in validate().
  FlatKahlerData(std::string label, int n, Mat cplx, std::vector<AffineIsometry> generators);

  const std::string& label() const { return label_; }
  int n() const { return n_; }
  std::size_t rank() const { return static_cast<std::size_t>(2 * n_); }
  const Mat& cplx() const { return cplx_; }
  const std::vector<AffineIsometry>& generators() const { return generators_; }

 private:
  std::string label_;
  int n_ = 0;
  Mat cplx_;
  std::vector<AffineIsometry> generators_;
};

struct FreenessResult {
  bool free = true;
  std::optional<AffineIsometry> witness;
  std::optional<QVector> fixed_point;
};

struct HolomorphyResult {
  bool holomorphic = true;
  double max_residual = 0.0;
  std::optional<AffineIsometry> witness;
};

struct ValidationReport {
  std::size_t group_order = 0;
  bool closed = false;
  bool free = false;
  std::optional<AffineIsometry> free_witness;
  std::optional<QVector> fixed_point;
  bool holomorphic = false;
  double holomorphic_residual = 0.0;
  std::optional<AffineIsometry> holomorphic_witness;
  bool complex_structure_ok = false;
  double complex_structure_residual = 0.0;

  bool valid() const { return closed && free && holomorphic && complex_structure_ok; }
};

// Sorted list of all elements generated; throws ClosureCapExceeded once more
// than `cap` distinct elements appear.
std::vector<AffineIsometry> group_closure(const std::vector<AffineIsometry>& generators,
                                          std::size_t dim, int cap = kDefaultClosureCap);

// Exact fixed point of g on the torus, reduced to [0,1), if one exists.
std::optional<QVector> fixed_point(const AffineIsometry& g);

FreenessResult is_free(const FlatKahlerData& data, int cap = kDefaultClosureCap);
HolomorphyResult is_holomorphic(const FlatKahlerData& data, int cap = kDefaultClosureCap);

// Max-abs-entry norm of J^2 + Id.
double complex_structure_residual(const Mat& cplx);

ValidationReport validate(const FlatKahlerData& data, int cap = kDefaultClosureCap);

// Orthonormal basis (columns) of the +i eigenspace of J in C^{2n}. The same
// deterministic basis is produced for the same J.
CMat holomorphic_frame(const Mat& cplx);

// Matrix of r_g on the +i eigenspace of the complex structure. Throws
// InvalidData if r_g does not commute with it.
CMat complex_rotation(const FlatKahlerData& data, const AffineIsometry& g);
CMat complex_rotation(const CMat& frame, const Mat& cplx, const AffineIsometry& g);

// Rotation parts of the group closure as floating matrices.
std::vector<Mat> rotation_matrices(const std::vector<AffineIsometry>& group);

std::string describe(const AffineIsometry& g);

}  // namespace flatkahler::crystal
