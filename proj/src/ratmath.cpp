#include "flatkahler/ratmath.hpp"

#include <algorithm>
#include <utility>

namespace flatkahler::ratmath {

namespace {

using IntRow = std::vector<Integer>;
using IntMatrix = std::vector<IntRow>;

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Rows scaled to integers; row spaces (and hence rank and kernel) unchanged.
IntMatrix integer_rows(const RationalMatrix& m) {
  IntMatrix out(m.rows(), IntRow(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer den = common_denominator(m.row(i));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational scaled = m(i, j) * Rational(den);
      out[i][j] = scaled.get_num();
    }
  }
  return out;
}

struct Echelon {
  IntMatrix rows;
  std::vector<std::size_t> pivot_cols;
  int swap_sign = 1;
};

// Fraction-free (Bareiss) forward elimination. Entries below each pivot are
// cleared; every division is exact.
Echelon bareiss(IntMatrix a) {
  Echelon out;
  const std::size_t nrows = a.size();
  const std::size_t ncols = nrows ? a[0].size() : 0;
  Integer prev = 1;
  std::size_t r = 0;
  Integer rem;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && a[p][c] == 0) ++p;
    if (p == nrows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      out.swap_sign = -out.swap_sign;
    }
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        Integer num = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_tdiv_qr(a[i][j].get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        if (rem != 0) throw ConsistencyError("Bareiss elimination produced an inexact division");
      }
      a[i][c] = 0;
    }
    // Rows above the pivot row keep their scale; rows below were updated.
    prev = a[r][c];
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rows = std::move(a);
  return out;
}

// Echelon form for kernels and solves: rows below the pivot are eliminated
// only where needed and kept primitive, which stays small on sparse input.
Echelon primitive_echelon(IntMatrix a) {
  Echelon out;
  const std::size_t nrows = a.size();
  const std::size_t ncols = nrows ? a[0].size() : 0;
  std::size_t r = 0;
  Integer g;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    // Smallest nonzero pivot keeps growth down.
    std::size_t p = nrows;
    for (std::size_t i = r; i < nrows; ++i)
      if (a[i][c] != 0 && (p == nrows || abs(a[i][c]) < abs(a[p][c]))) p = i;
    if (p == nrows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      out.swap_sign = -out.swap_sign;
    }
    const auto& piv = a[r];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      if (a[i][c] == 0) continue;
      const Integer f = a[i][c];
      g = 0;
      for (std::size_t j = c + 1; j < ncols; ++j) {
        if (piv[j] != 0 || a[i][j] != 0) {
          a[i][j] = piv[c] * a[i][j] - f * piv[j];
          if (a[i][j] != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[i][j].get_mpz_t());
        }
      }
      a[i][c] = 0;
      if (g > 1)
        for (std::size_t j = c + 1; j < ncols; ++j)
          if (a[i][j] != 0) mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), g.get_mpz_t());
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rows = std::move(a);
  return out;
}

// Back substitution on an echelon form for a given assignment of the free
// variables. Pivot variables are solved from the bottom pivot row upward.
QVector back_substitute(const Echelon& e, std::size_t ncols, QVector x) {
  for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
    const std::size_t pc = e.pivot_cols[k];
    Rational acc = 0;
    for (std::size_t j = pc + 1; j < ncols; ++j) {
      if (e.rows[k][j] != 0 && x[j] != 0) acc += Rational(e.rows[k][j]) * x[j];
    }
    x[pc] = -acc / Rational(e.rows[k][pc]);
  }
  return x;
}

void make_primitive(QVector& v) {
  Integer den = common_denominator(v);
  Integer g = 0;
  for (auto& x : v) {
    x *= den;
    g = gcd(g, x.get_num());
  }
  bool negate = false;
  for (const auto& x : v) {
    if (x != 0) {
      negate = x < 0;
      break;
    }
  }
  if (g == 0) return;
  for (auto& x : v) {
    x /= Rational(g);
    if (negate) x = -x;
  }
}

// Integer matrix helpers for Smith normal form.
void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) { std::swap(m[a], m[b]); }

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// row[dst] -= q * row[src]
void axpy_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] -= q * m[src][j];
}

void axpy_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (auto& row : m) row[dst] -= q * row[src];
}

IntMatrix int_identity(std::size_t n) {
  IntMatrix out(n, IntRow(n, 0));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

RationalMatrix from_int(const IntMatrix& m, std::size_t rows, std::size_t cols) {
  RationalMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = Rational(m[i][j]);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& str) {
    while (!str.empty() && (str.front() == ' ' || str.front() == '\t')) str.erase(str.begin());
    while (!str.empty() && (str.back() == ' ' || str.back() == '\t')) str.pop_back();
  };
  trim(s);
  if (s.empty()) throw ParseError("empty rational");
  auto valid_int = [](const std::string& str, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !str.empty() && (str[0] == '-' || str[0] == '+')) i = 1;
    if (i >= str.size()) return false;
    for (; i < str.size(); ++i)
      if (str[i] < '0' || str[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational out(Integer(num), d);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

Integer floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Rational frac(const Rational& value) { return value - Rational(floor(value)); }

Integer common_denominator(const QVector& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  return den;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidData("ragged matrix literal");
    for (const auto& x : row) {
      Rational v = x;
      v.canonicalize();
      data_.push_back(v);
    }
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RationalMatrix RationalMatrix::diagonal(const QVector& entries) {
  RationalMatrix out(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) out(i, i) = entries[i];
  return out;
}

RationalMatrix RationalMatrix::block_diagonal(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool RationalMatrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.get_den() == 1; });
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

Rational RationalMatrix::trace() const {
  Rational out = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) out += (*this)(i, i);
  return out;
}

QVector RationalMatrix::row(std::size_t i) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QVector RationalMatrix::column(std::size_t j) const {
  QVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Mat RationalMatrix::to_double() const {
  Mat out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).get_d();
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidData("matrix product dimension mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        if (rhs(k, j) != 0) out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

QVector RationalMatrix::operator*(const QVector& rhs) const {
  if (cols_ != rhs.size()) throw InvalidData("matrix-vector dimension mismatch");
  QVector out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if ((*this)(i, k) != 0 && rhs[k] != 0) out[i] += (*this)(i, k) * rhs[k];
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& rhs) const {
  RationalMatrix out = *this;
  out += rhs;
  return out;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidData("matrix sum dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidData("matrix difference dimension mismatch");
  RationalMatrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] -= rhs.data_[k];
  return out;
}

RationalMatrix RationalMatrix::operator-() const {
  RationalMatrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& m) {
  RationalMatrix out = m;
  for (auto& x : out.data_) x *= s;
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

std::size_t rank_rational(const RationalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return primitive_echelon(integer_rows(m)).pivot_cols.size();
}

std::vector<QVector> kernel_rational(const RationalMatrix& m) {
  const std::size_t ncols = m.cols();
  std::vector<QVector> basis;
  if (ncols == 0) return basis;
  Echelon e = m.rows() ? primitive_echelon(integer_rows(m)) : Echelon{};
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVector x(ncols, Rational(0));
    x[f] = 1;
    x = back_substitute(e, ncols, std::move(x));
    make_primitive(x);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<QVector> solve_rational(const RationalMatrix& m, const QVector& b) {
  if (b.size() != m.rows()) throw InvalidData("solve: right-hand side dimension mismatch");
  const std::size_t ncols = m.cols();
  RationalMatrix aug(m.rows(), ncols + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < ncols; ++j) aug(i, j) = m(i, j);
    aug(i, ncols) = b[i];
  }
  Echelon e = m.rows() ? primitive_echelon(integer_rows(aug)) : Echelon{};
  for (auto c : e.pivot_cols)
    if (c == ncols) return std::nullopt;
  // Treat the augmented column as the constant term: solve with x_{ncols} = -1.
  QVector x(ncols + 1, Rational(0));
  x[ncols] = -1;
  x = back_substitute(e, ncols + 1, std::move(x));
  x.pop_back();
  return x;
}

Rational determinant(const RationalMatrix& m) {
  if (!m.square()) throw InvalidData("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Rational scale = 1;
  for (std::size_t i = 0; i < n; ++i) scale *= Rational(common_denominator(m.row(i)));
  Echelon e = bareiss(integer_rows(m));
  if (e.pivot_cols.size() < n) return 0;
  Rational det(e.rows[n - 1][n - 1]);
  return det * e.swap_sign / scale;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.square()) throw InvalidData("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw InvalidData("matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

SmithDecomposition smith_normal_form(const RationalMatrix& m) {
  if (!m.is_integral()) throw InvalidData("Smith normal form requires an integral matrix");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix d(rows, IntRow(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) d[i][j] = m(i, j).get_num();
  IntMatrix u = int_identity(rows);
  IntMatrix v = int_identity(cols);

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto move_min_to_pivot = [&]() {
      bool found = false;
      std::size_t bi = t, bj = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (d[i][j] == 0) continue;
          Integer a = abs(d[i][j]);
          if (!found || a < best) {
            found = true;
            best = a;
            bi = i;
            bj = j;
          }
        }
      if (!found) return false;
      if (bi != t) {
        swap_rows(d, bi, t);
        swap_rows(u, bi, t);
      }
      if (bj != t) {
        swap_cols(d, bj, t);
        swap_cols(v, bj, t);
      }
      return true;
    };
    if (!move_min_to_pivot()) break;

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
        axpy_row(d, i, t, q);
        axpy_row(u, i, t, q);
        if (d[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
        axpy_col(d, j, t, q);
        axpy_col(v, j, t, q);
        if (d[t][j] != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; bring it to the pivot.
        bool swapped = false;
        for (std::size_t i = t + 1; i < rows && !swapped; ++i)
          if (d[i][t] != 0 && abs(d[i][t]) < abs(d[t][t])) {
            swap_rows(d, i, t);
            swap_rows(u, i, t);
            swapped = true;
          }
        for (std::size_t j = t + 1; j < cols && !swapped; ++j)
          if (d[t][j] != 0 && abs(d[t][j]) < abs(d[t][t])) {
            swap_cols(d, j, t);
            swap_cols(v, j, t);
            swapped = true;
          }
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!mpz_divisible_p(d[i][j].get_mpz_t(), d[t][t].get_mpz_t())) {
            for (std::size_t k = 0; k < cols; ++k) d[t][k] += d[i][k];
            for (std::size_t k = 0; k < rows; ++k) u[t][k] += u[i][k];
            divisible = false;
            break;
          }
        }
      if (divisible) break;
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }

  SmithDecomposition out;
  // The loop stops at the first all-zero trailing block.
  out.rank = t;
  out.u = from_int(u, rows, rows);
  out.v = from_int(v, cols, cols);
  out.d = from_int(d, rows, cols);
  return out;
}

QVector char_poly_exterior(const RationalMatrix& m) {
  if (!m.square()) throw InvalidData("char_poly_exterior needs a square matrix");
  const std::size_t n = m.rows();
  // Faddeev-LeVerrier: det(t Id - m) = sum_k c_k t^{n-k}; the exterior
  // traces are e_k = (-1)^k c_k.
  QVector c(n + 1, Rational(0));
  c[0] = 1;
  RationalMatrix mk(n, n);
  const RationalMatrix id = RationalMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[k - 1] * id;
    c[k] = -(m * mk).trace() / Rational(static_cast<long>(k));
  }
  QVector e(n + 1);
  for (std::size_t k = 0; k <= n; ++k) e[k] = (k % 2 == 0) ? c[k] : Rational(-c[k]);
  return e;
}

RationalMatrix reynolds_projector(const std::vector<RationalMatrix>& rep) {
  if (rep.empty()) throw InvalidData("Reynolds projector of an empty representation");
  RationalMatrix sum(rep.front().rows(), rep.front().cols());
  for (const auto& g : rep) sum += g;
  return Rational(1, static_cast<long>(rep.size())) * sum;
}

}  // namespace flatkahler::ratmath
