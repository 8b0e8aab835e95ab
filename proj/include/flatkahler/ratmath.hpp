// Exact rational and integer linear algebra.
//
// Everything here is arbitrary precision (GMP); no floating point enters
// rank, kernel, Smith form or character computations.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "flatkahler/common.hpp"

namespace flatkahler::ratmath {

using Rational = mpq_class;
using Integer = mpz_class;
using QVector = std::vector<Rational>;

// Parses "p/q", "p" or "-p/q". Throws ParseError on malformed input or q = 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

// Fractional part in [0, 1).
Rational frac(const Rational& value);
Integer floor(const Rational& value);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static RationalMatrix diagonal(const QVector& entries);
  // Block diagonal concatenation.
  static RationalMatrix block_diagonal(const RationalMatrix& a, const RationalMatrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  bool is_integral() const;
  bool is_zero() const;
  Rational trace() const;

  QVector row(std::size_t i) const;
  QVector column(std::size_t j) const;

  Mat to_double() const;

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  QVector operator*(const QVector& rhs) const;
  RationalMatrix operator+(const RationalMatrix& rhs) const;
  RationalMatrix operator-(const RationalMatrix& rhs) const;
  RationalMatrix operator-() const;
  RationalMatrix& operator+=(const RationalMatrix& rhs);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& m);

  bool operator==(const RationalMatrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct SmithDecomposition {
  RationalMatrix u;  // rows x rows, unimodular
  RationalMatrix v;  // cols x cols, unimodular
  RationalMatrix d;  // rows x cols, diagonal with d_i | d_{i+1}
  std::size_t rank = 0;
};

std::size_t rank_rational(const RationalMatrix& m);

// Basis of {v : m v = 0}. Each vector is primitive integral with a positive
// leading entry.
std::vector<QVector> kernel_rational(const RationalMatrix& m);

// Exact solution of m x = b if one exists (free variables set to zero).
std::optional<QVector> solve_rational(const RationalMatrix& m, const QVector& b);

// Exact determinant, square input only.
Rational determinant(const RationalMatrix& m);

// Inverse of an invertible square matrix; throws InvalidData if singular.
RationalMatrix inverse(const RationalMatrix& m);

SmithDecomposition smith_normal_form(const RationalMatrix& m);

// Coefficients c_0..c_N of det(Id + x m); c_k = trace of the k-th exterior
// power of m.
QVector char_poly_exterior(const RationalMatrix& m);

// (1/|G|) sum of the representation matrices.
RationalMatrix reynolds_projector(const std::vector<RationalMatrix>& rep);

// Smallest common denominator of the entries.
Integer common_denominator(const QVector& v);

}  // namespace flatkahler::ratmath
