#include <algorithm>

#include "doctest.h"
#include "flatkahler/catalog.hpp"
#include "flatkahler/cohomology.hpp"
#include "oracles.hpp"

using namespace flatkahler;
using namespace flatkahler::catalog;
using ratmath::Rational;
using ratmath::RationalMatrix;

TEST_CASE("tori from period matrices") {
  const auto e = torus("e", square_curve());
  const Mat expected = (Mat(2, 2) << 0, -1, 1, 0).finished();
  CHECK((e.cplx() - expected).norm() <= 1e-15);
  CHECK(e.generators().empty());

  const auto g = build("torus2_generic");
  CHECK(crystal::validate(g).valid());
  CHECK(cohomology::hodge_numbers(g).h[2][0] == 1);

  const auto p = torus("p", product_periods(square_curve(), hexagonal_curve()));
  CHECK(p.cplx().topRightCorner(2, 2).norm() == 0.0);
  CHECK(p.cplx().bottomLeftCorner(2, 2).norm() == 0.0);
  CHECK((p.cplx().topLeftCorner(2, 2) - expected).norm() <= 1e-15);

  PeriodMatrix degenerate(1, 2);
  degenerate << Complex(1, 0), Complex(2, 0);
  CHECK_THROWS_AS(torus("bad", degenerate), InvalidData);
  CHECK_THROWS_AS(curve_periods(Complex(3.0, 0.0)), InvalidData);
}

TEST_CASE("hexagonal curve admits the order-6 automorphism") {
  const Mat j = torus("h", hexagonal_curve()).cplx();
  const Mat rho = RationalMatrix{{1, -1}, {1, 0}}.to_double();
  CHECK((rho * j - j * rho).norm() <= 1e-12);
}

TEST_CASE("bielliptic surfaces") {
  for (int d : {2, 4, 6}) {
    INFO(d);
    const auto x = bielliptic(d);
    const auto report = crystal::validate(x);
    CHECK(report.valid());
    CHECK(report.group_order == static_cast<std::size_t>(d));
    CHECK(cohomology::betti_numbers(x)[1] == 2);
    CHECK(cohomology::hodge_numbers(x).h[2][0] == 0);
    CHECK_FALSE(cohomology::obstruction_verdict(x));
  }
  const auto two_torsion_on_d4 = bielliptic(4, {Rational(1, 2), 0});
  const auto r = crystal::validate(two_torsion_on_d4);
  CHECK_FALSE(r.free);
  CHECK(r.free_witness.has_value());
  CHECK_THROWS_AS(bielliptic(3), InvalidData);
  CHECK_THROWS_AS(bielliptic(2, {Rational(1, 2)}), InvalidData);
}

TEST_CASE("Bagnera-de Franchis manifolds") {
  const auto t1 = torus("t1", generic_periods(2));
  const auto t2 = torus("t2", square_curve());
  const auto minus = -RationalMatrix::identity(4);
  SUBCASE("d = 2 is free with b1 = 2 dim T2") {
    const auto x = bagnera_de_franchis(t1, t2, 2, minus, {Rational(1, 2), 0});
    CHECK(crystal::validate(x).valid());
    CHECK(cohomology::betti_numbers(x)[1] == 2);
  }
  SUBCASE("d = 2 with tau = 0 has a fixed point") {
    const auto x = bagnera_de_franchis(t1, t2, 2, minus, {0, 0});
    CHECK_FALSE(crystal::is_free(x).free);
  }
  SUBCASE("d = 4 on a square-lattice factor validates") {
    const auto x = build("bdf_d4");
    CHECK(crystal::validate(x).valid());
    CHECK(crystal::validate(x).group_order == 4);
  }
  SUBCASE("order and holomorphy mismatches") {
    CHECK_THROWS_AS(bagnera_de_franchis(t1, t2, 4, minus, {Rational(1, 4), 0}), InvalidData);
    const RationalMatrix swap = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    CHECK_THROWS_AS(bagnera_de_franchis(t1, t2, 2, swap, {Rational(1, 2), 0}), InvalidData);
    CHECK_THROWS_AS(bagnera_de_franchis(t1, t2, 2, minus, {Rational(1, 3), 0}), InvalidData);
    CHECK_THROWS_AS(bagnera_de_franchis(t1, t2, 2, minus, {Rational(1, 2)}), InvalidData);
  }
}

TEST_CASE("D4 threefold") {
  for (bool algebraic : {true, false}) {
    INFO(algebraic);
    const auto x = d4_threefold(algebraic);
    const auto report = crystal::validate(x);
    CHECK(report.valid());
    CHECK(report.group_order == 8);
    CHECK(cohomology::betti_numbers(x)[1] == 0);

    // H_1(T, Q)^G = 0: no nonzero vector is fixed by every rotation.
    const auto group = crystal::group_closure(x.generators(), x.rank());
    const std::size_t dim = x.rank();
    RationalMatrix stacked(dim * group.size(), dim);
    for (std::size_t g = 0; g < group.size(); ++g)
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
          stacked(g * dim + a, b) = group[g].rotation()(a, b) - (a == b ? 1 : 0);
    CHECK(ratmath::kernel_rational(stacked).empty());

    // Lifted back to E x E x S, s acts by ((0,1,0),(1,0,0),(0,0,-1)).
    const RationalMatrix b = d4_lattice_basis(algebraic);
    const RationalMatrix s_cover = b * x.generators()[0].rotation() * ratmath::inverse(b);
    RationalMatrix expected(dim, dim);
    expected(0, 2) = expected(1, 3) = expected(2, 0) = expected(3, 1) = 1;
    for (std::size_t i = 4; i < dim; ++i) expected(i, i) = -1;
    CHECK(s_cover == expected);
    const RationalMatrix r_cover = b * x.generators()[1].rotation() * ratmath::inverse(b);
    RationalMatrix r_expected(dim, dim);
    r_expected(0, 2) = r_expected(1, 3) = 1;
    r_expected(2, 0) = r_expected(3, 1) = -1;
    for (std::size_t i = 4; i < dim; ++i) r_expected(i, i) = 1;
    CHECK(r_cover == r_expected);
  }
  CHECK(d4_threefold(true).n() == 3);
  CHECK(d4_threefold(false).n() == 4);
  CHECK(cohomology::hodge_numbers(d4_threefold(false)).h[2][0] == 1);
}

TEST_CASE("catalog listing") {
  const auto list = list_catalog();
  auto find = [&](const std::string& name) {
    return std::find_if(list.begin(), list.end(), [&](const CatalogEntry& e) { return e.name == name; });
  };
  REQUIRE(find("d4_threefold") != list.end());
  REQUIRE(find("d4_threefold_qdouble") != list.end());
  CHECK(find("d4_threefold_qdouble")->n == 6);
  const auto again = list_catalog();
  REQUIRE(again.size() == list.size());
  for (std::size_t i = 0; i < list.size(); ++i) CHECK(again[i].name == list[i].name);
  for (const auto& e : list) {
    INFO(e.name);
    const auto x = build(e.name);
    CHECK(x.n() == e.n);
    CHECK(crystal::validate(x).valid());
    CHECK(x.label() == e.name);
  }
  CHECK_THROWS_AS(build("no_such_entry"), InvalidData);
}

TEST_CASE("doubling law across the catalog") {
  for (const auto& e : list_catalog()) {
    if (e.name.find("_qdouble") == std::string::npos) continue;
    const std::string base = e.name.substr(0, e.name.size() - 8);
    CHECK_MESSAGE(cohomology::betti_numbers(build(e.name))[1] == 2 * cohomology::betti_numbers(build(base))[1], e.name);
  }
}
