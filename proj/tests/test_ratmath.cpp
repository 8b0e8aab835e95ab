#include <random>

#include "doctest.h"
#include "flatkahler/ratmath.hpp"
#include "oracles.hpp"

using namespace flatkahler;
using namespace flatkahler::ratmath;

namespace {

RationalMatrix random_integer_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

RationalMatrix random_rational_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = Rational(num(rng), den(rng));
      m(i, j).canonicalize();
    }
  return m;
}

void check_smith(const RationalMatrix& m) {
  const auto s = smith_normal_form(m);
  CHECK(s.u * m * s.v == s.d);
  CHECK(abs(determinant(s.u)) == 1);
  CHECK(abs(determinant(s.v)) == 1);
  CHECK(s.u.is_integral());
  CHECK(s.v.is_integral());
  CHECK(s.rank == rank_rational(m));
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j) CHECK(s.d(i, j) == 0);
  const std::size_t diag = std::min(s.d.rows(), s.d.cols());
  for (std::size_t i = 0; i < diag; ++i) {
    if (i < s.rank) {
      CHECK(s.d(i, i) > 0);
    } else {
      CHECK(s.d(i, i) == 0);
    }
    if (i + 1 < s.rank) CHECK(Integer(s.d(i + 1, i + 1).get_num() % s.d(i, i).get_num()) == 0);
  }
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(to_string(parse_rational("-3/9")) == "-1/3");
  CHECK(to_string(Rational(4)) == "4");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
}

TEST_CASE("fractional part and floor") {
  CHECK(frac(Rational(7, 4)) == Rational(3, 4));
  CHECK(frac(Rational(-1, 4)) == Rational(3, 4));
  CHECK(frac(Rational(2)) == 0);
  CHECK(floor(Rational(-1, 4)) == -1);
  CHECK(floor(Rational(9, 4)) == 2);
}

TEST_CASE("rank of small matrices") {
  CHECK(rank_rational(RationalMatrix::identity(3)) == 3);
  CHECK(rank_rational({{1, 2}, {2, 4}}) == 1);
  CHECK(rank_rational(RationalMatrix::zero(2, 3)) == 0);
  CHECK(rank_rational({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 2);
}

TEST_CASE("kernel of a rank-deficient matrix") {
  const RationalMatrix m = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const auto ker = kernel_rational(m);
  REQUIRE(ker.size() == 1);
  const QVector expected = {1, -2, 1};
  CHECK(ker[0] == expected);
  CHECK(kernel_rational(RationalMatrix::identity(4)).empty());
  CHECK(kernel_rational(RationalMatrix::zero(2, 3)).size() == 3);
}

TEST_CASE("kernel vectors annihilate every row (property)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + trial % 4, cols = 2 + trial % 5;
    RationalMatrix m = random_integer_matrix(rng, rows, cols, 3);
    if (trial % 3 == 0 && rows > 1)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * 2 - m(1 % rows, j);
    const auto ker = kernel_rational(m);
    CHECK(ker.size() == cols - rank_rational(m));
    for (const auto& v : ker) {
      const QVector mv = m * v;
      for (const auto& x : mv) CHECK(x == 0);
    }
    if (!ker.empty()) {
      RationalMatrix basis(cols, ker.size());
      for (std::size_t c = 0; c < ker.size(); ++c)
        for (std::size_t r = 0; r < cols; ++r) basis(r, c) = ker[c][r];
      CHECK(rank_rational(basis) == ker.size());
    }
  }
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const RationalMatrix m = random_rational_matrix(rng, 1 + trial % 5);
    CHECK(determinant(m) == oracle::leibniz_det(m));
  }
}

TEST_CASE("inverse and solve") {
  const RationalMatrix m = {{2, 1}, {1, 1}};
  CHECK(inverse(m) * m == RationalMatrix::identity(2));
  CHECK_THROWS_AS(inverse(RationalMatrix{{1, 2}, {2, 4}}), InvalidData);
  const auto x = solve_rational(m, {3, 2});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 1);
  CHECK_FALSE(solve_rational(RationalMatrix{{1, 1}, {1, 1}}, {1, 2}).has_value());
}

TEST_CASE("Smith normal form of a known matrix") {
  const RationalMatrix m = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const auto s = smith_normal_form(m);
  CHECK(s.d(0, 0) == 2);
  CHECK(s.d(1, 1) == 6);
  CHECK(s.d(2, 2) == 12);
  check_smith(m);
}

TEST_CASE("Smith decomposition invariants (property)") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 80; ++trial) check_smith(random_integer_matrix(rng, 1 + trial % 5, 1 + (trial / 5) % 5, 6));
  check_smith(RationalMatrix::zero(3, 2));
  check_smith({{0, 0, 5}});
}

TEST_CASE("exterior characteristic polynomial") {
  SUBCASE("identity gives binomials") {
    const QVector c = char_poly_exterior(RationalMatrix::identity(4));
    const QVector expected = {1, 4, 6, 4, 1};
    CHECK(c == expected);
  }
  SUBCASE("minus identity") {
    const QVector c = char_poly_exterior(-RationalMatrix::identity(2));
    const QVector expected = {1, -2, 1};
    CHECK(c == expected);
  }
  SUBCASE("matches principal minor sums") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
      const RationalMatrix m = random_rational_matrix(rng, 1 + trial % 6);
      CHECK(char_poly_exterior(m) == oracle::principal_minor_sums(m));
    }
  }
  SUBCASE("sum of coefficients is det(Id + M)") {
    std::mt19937_64 rng(78);
    for (int trial = 0; trial < 30; ++trial) {
      const RationalMatrix m = random_rational_matrix(rng, 1 + trial % 6);
      const QVector c = char_poly_exterior(m);
      Rational sum(0);
      for (const auto& x : c) sum += x;
      CHECK(sum == determinant(RationalMatrix::identity(m.rows()) + m));
      CHECK(c.front() == 1);
      CHECK(c.back() == determinant(m));
    }
  }
}

TEST_CASE("Reynolds projector") {
  const RationalMatrix rot = {{0, -1}, {1, 0}};
  std::vector<RationalMatrix> group = {RationalMatrix::identity(2), rot, rot * rot, rot * rot * rot};
  const RationalMatrix p = reynolds_projector(group);
  CHECK(p.is_zero());

  const RationalMatrix swap = {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  const RationalMatrix q = reynolds_projector({RationalMatrix::identity(3), swap});
  CHECK(q * q == q);
  CHECK(rank_rational(q) == 2);
  CHECK(q * swap == swap * q);
  for (const auto& v : kernel_rational(q - RationalMatrix::identity(3))) CHECK(swap * v == v);
}
