#include "doctest.h"
#include "flatkahler/catalog.hpp"
#include "flatkahler/cohomology.hpp"
#include "flatkahler/doubles.hpp"
#include "flatkahler/hyperhermitian.hpp"
#include "oracles.hpp"

using namespace flatkahler;
using namespace flatkahler::doubles;
using ratmath::RationalMatrix;

namespace {

std::vector<std::string> base_entries() {
  std::vector<std::string> out;
  for (const auto& e : catalog::list_catalog())
    if (e.name.find("_qdouble") == std::string::npos) out.push_back(e.name);
  return out;
}

}  // namespace

TEST_CASE("double of a 1-torus reproduces the literal block matrices") {
  const auto x = catalog::build("torus1_square");
  const Mat ix = x.cplx();
  const auto d = quaternionic_double(x);
  CHECK(d.data.n() == 2);
  CHECK(d.data.generators().empty());
  Mat i(4, 4), j(4, 4), k(4, 4);
  const Mat z = Mat::Zero(2, 2), id = Mat::Identity(2, 2);
  i << ix, z, z, -ix;
  j << z, -id, id, z;
  k << z, -ix, -ix, z;
  CHECK((d.i - i).norm() == 0.0);
  CHECK((d.j - j).norm() == 0.0);
  CHECK((d.k - k).norm() <= 1e-15);
  CHECK((d.data.cplx() - i).norm() == 0.0);
}

TEST_CASE("co-double of a 1-torus carries the tautological pairing") {
  const auto d = coquaternionic_double(catalog::build("torus1_square"));
  REQUIRE(d.canonical_sigma1.rational());
  const RationalMatrix expected = {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
  CHECK(*d.canonical_sigma1.exact() == expected);
}

TEST_CASE("quaternion relations for both doubles of every entry") {
  for (const auto& name : base_entries()) {
    INFO(name);
    const auto x = catalog::build(name);
    for (const auto& d : {quaternionic_double(x), coquaternionic_double(x)}) {
      CHECK(quaternion_relation_residual(d.i, d.j, d.k) <= 1e-9);
      const Mat id = Mat::Identity(d.i.rows(), d.i.cols());
      CHECK((d.i * d.i + id).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK((d.i * d.j * d.k + id).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("doubling law for b1 and freeness inheritance") {
  for (const auto& name : base_entries()) {
    INFO(name);
    const auto x = catalog::build(name);
    const long b1 = cohomology::betti_numbers(x)[1];
    for (const auto& d : {quaternionic_double(x), coquaternionic_double(x)}) {
      CHECK(cohomology::betti_numbers(d.data)[1] == 2 * b1);
      CHECK(crystal::is_free(d.data).free);
      CHECK(crystal::validate(d.data).valid());
    }
  }
  CHECK(cohomology::betti_numbers(quaternionic_double(catalog::bielliptic(2)).data)[1] == 4);
  CHECK(cohomology::betti_numbers(coquaternionic_double(catalog::bielliptic(2)).data)[1] == 4);
}

TEST_CASE("D4 doubles") {
  const auto x = catalog::d4_threefold(true);
  for (const auto& d : {quaternionic_double(x), coquaternionic_double(x)}) {
    CHECK(cohomology::betti_numbers(d.data)[1] == 0);
    CHECK(cohomology::hodge_numbers(d.data).h[2][0] >= 1);
    CHECK(cohomology::obstruction_verdict(d.data));
  }
}

TEST_CASE("canonical forms are invariant, nondegenerate and fibre-isotropic") {
  for (const auto& name : base_entries()) {
    INFO(name);
    const auto x = catalog::build(name);
    const std::size_t m = x.rank();
    for (bool co : {false, true}) {
      const auto d = co ? coquaternionic_double(x) : quaternionic_double(x);
      const auto group = crystal::group_closure(d.data.generators(), d.data.rank());
      const Mat& s = d.canonical_sigma1.matrix();
      if (co) {
        REQUIRE(d.canonical_sigma1.rational());
        for (const auto& g : group)
          CHECK(g.rotation().transpose() * *d.canonical_sigma1.exact() * g.rotation() == *d.canonical_sigma1.exact());
      } else {
        CHECK(cohomology::invariance_residual(s, crystal::rotation_matrices(group)) <= tol::kNumeric);
      }
      // (2,0) for I.
      CHECK((d.i.transpose() * s * d.i + s).cwiseAbs().maxCoeff() <= tol::kNumeric);
      const auto split = hyperhermitian::kernel_splitting(d.data, d.canonical_sigma1, hyperhermitian::average_metric(d.data));
      CHECK(split.e_basis.cols() == 0);
      const auto mm = static_cast<Eigen::Index>(m);
      CHECK(s.bottomRightCorner(mm, mm).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("co-double rotation blocks have reciprocal determinants") {
  for (const auto& name : base_entries()) {
    const auto x = catalog::build(name);
    const auto d = coquaternionic_double(x);
    const std::size_t m = x.rank();
    for (std::size_t g = 0; g < x.generators().size(); ++g) {
      const RationalMatrix& r = x.generators()[g].rotation();
      const RationalMatrix& big = d.data.generators()[g].rotation();
      RationalMatrix lower(m, m);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) lower(a, b) = big(m + a, m + b);
      CHECK(lower * r.transpose() == RationalMatrix::identity(m));
      CHECK(ratmath::determinant(big) == ratmath::determinant(r) / ratmath::determinant(r));
      CHECK(lower.is_integral());
    }
  }
}

TEST_CASE("doubling rejects invalid input") {
  const auto curve = catalog::torus("e", catalog::curve_periods(Complex(0.3, 1.1)));
  const FlatKahlerData bad("swap", 1, curve.cplx(), {crystal::AffineIsometry({{0, 1}, {1, 0}}, {ratmath::Rational(1, 2), 0})});
  CHECK_THROWS_AS(quaternionic_double(bad), InvalidData);
  CHECK_THROWS_AS(coquaternionic_double(bad), InvalidData);
}
