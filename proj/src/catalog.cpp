#include "flatkahler/catalog.hpp"

#include <cmath>

#include "flatkahler/doubles.hpp"

namespace flatkahler::catalog {

using crystal::AffineIsometry;
using ratmath::Rational;

namespace {

constexpr const char* kDoubleSuffix = "_qdouble";

RationalMatrix rotation_quarter() { return {{0, -1}, {1, 0}}; }
RationalMatrix rotation_sixth() { return {{1, -1}, {1, 0}}; }

RationalMatrix power(const RationalMatrix& m, int k) {
  RationalMatrix out = RationalMatrix::identity(m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

QVector zeros(std::size_t n) { return QVector(n, Rational(0)); }

QVector concat(const QVector& a, const QVector& b) {
  QVector out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Mat block_diagonal(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

PeriodMatrix s_periods(bool algebraic_S) { return algebraic_S ? square_curve() : generic_periods(2); }

}  // namespace

Mat complex_structure_from_periods(const PeriodMatrix& period) {
  const Eigen::Index n = period.rows();
  if (n == 0 || period.cols() != 2 * n) throw InvalidData("period matrix must be n x 2n");
  Mat real(2 * n, 2 * n);
  real << period.real(), period.imag();
  const Vec s = Eigen::JacobiSVD<Mat>(real).singularValues();
  if (s(2 * n - 1) <= 1e-12 * s(0)) throw InvalidData("period matrix columns are linearly dependent over R");
  Mat j0 = Mat::Zero(2 * n, 2 * n);
  j0.topRightCorner(n, n) = -Mat::Identity(n, n);
  j0.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return real.partialPivLu().solve(j0 * real);
}

FlatKahlerData torus(const std::string& label, const PeriodMatrix& period) {
  return FlatKahlerData(label, static_cast<int>(period.rows()), complex_structure_from_periods(period), {});
}

PeriodMatrix curve_periods(Complex tau) {
  if (tau.imag() == 0.0) throw InvalidData("curve period must not be real");
  PeriodMatrix p(1, 2);
  p << Complex(1.0, 0.0), tau;
  return p;
}

PeriodMatrix square_curve() { return curve_periods(Complex(0.0, 1.0)); }

PeriodMatrix hexagonal_curve() { return curve_periods(Complex(-0.5, std::sqrt(3.0) / 2)); }

PeriodMatrix product_periods(const PeriodMatrix& a, const PeriodMatrix& b) {
  PeriodMatrix out = PeriodMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

PeriodMatrix generic_periods(int n) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                               73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};
  if (n < 1 || 2 * n * n > static_cast<int>(std::size(primes))) throw InvalidData("unsupported generic dimension");
  PeriodMatrix p = PeriodMatrix::Zero(n, 2 * n);
  p.leftCols(n) = PeriodMatrix::Identity(n, n);
  int next = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double re = std::sqrt(static_cast<double>(primes[next++])) / 3.0;
      double im = std::sqrt(static_cast<double>(primes[next++])) / 7.0;
      if (j == k) im += 1.0;
      p(j, n + k) = Complex(re, im);
    }
  return p;
}

FlatKahlerData bielliptic(int d, const QVector& tau, Complex e2_tau) {
  PeriodMatrix e1;
  RationalMatrix rho;
  switch (d) {
    case 2:
      e1 = square_curve();
      rho = -RationalMatrix::identity(2);
      break;
    case 4:
      e1 = square_curve();
      rho = rotation_quarter();
      break;
    case 6:
      e1 = hexagonal_curve();
      rho = rotation_sixth();
      break;
    default:
      throw InvalidData("bielliptic surfaces here have d in {2, 4, 6}, got " + std::to_string(d));
  }
  QVector shift = tau;
  if (shift.empty()) shift = {Rational(1, d), Rational(0)};
  if (shift.size() != 2) throw InvalidData("torsion point on E2 needs two coordinates");
  const Mat cplx = complex_structure_from_periods(product_periods(e1, curve_periods(e2_tau)));
  AffineIsometry g(RationalMatrix::block_diagonal(rho, RationalMatrix::identity(2)), concat(zeros(2), shift));
  return FlatKahlerData("bielliptic_d" + std::to_string(d), 2, cplx, {g});
}

FlatKahlerData bagnera_de_franchis(const FlatKahlerData& t1, const FlatKahlerData& t2, int d,
                                   const RationalMatrix& automorphism, const QVector& tau) {
  if (!t1.generators().empty() || !t2.generators().empty()) throw InvalidData("factors must be complex tori");
  if (d < 2) throw InvalidData("group order must be at least 2");
  const std::size_t m1 = t1.rank();
  if (automorphism.rows() != m1 || automorphism.cols() != m1)
    throw InvalidData("automorphism does not match the first factor");
  const RationalMatrix id = RationalMatrix::identity(m1);
  for (int k = 1; k < d; ++k)
    if (power(automorphism, k) == id)
      throw InvalidData("automorphism has order " + std::to_string(k) + ", expected " + std::to_string(d));
  if (!(power(automorphism, d) == id)) throw InvalidData("automorphism does not have order " + std::to_string(d));
  const Mat a = automorphism.to_double();
  if ((a * t1.cplx() - t1.cplx() * a).cwiseAbs().maxCoeff() > tol::kNumeric)
    throw InvalidData("automorphism is not holomorphic on the first factor");
  if (tau.size() != t2.rank()) throw InvalidData("translation does not match the second factor");
  for (const auto& x : tau)
    if (Rational(Rational(d) * x).get_den() != 1) throw InvalidData("translation is not d-torsion");

  AffineIsometry g(RationalMatrix::block_diagonal(automorphism, RationalMatrix::identity(t2.rank())),
                   concat(zeros(m1), tau));
  return FlatKahlerData("bdf_d" + std::to_string(d), t1.n() + t2.n(), block_diagonal(t1.cplx(), t2.cplx()), {g});
}

RationalMatrix d4_lattice_basis(bool algebraic_S) {
  const std::size_t dim = 4 + 2 * static_cast<std::size_t>(s_periods(algebraic_S).rows());
  // Columns t0 = tau_1 + tau_2 on both curve factors, then e_1, e_2, ...
  RationalMatrix b = RationalMatrix::identity(dim);
  for (std::size_t i = 0; i < 4; ++i) b(i, 0) = Rational(1, 2);
  return b;
}

FlatKahlerData d4_threefold(bool algebraic_S) {
  const PeriodMatrix s_period = s_periods(algebraic_S);
  const std::size_t ds = 2 * static_cast<std::size_t>(s_period.rows());
  const std::size_t dim = 4 + ds;
  const PeriodMatrix cover = product_periods(product_periods(square_curve(), square_curve()), s_period);
  const Mat cplx_cover = complex_structure_from_periods(cover);

  // s: (x1, x2, y) -> (x2 + tau_1, x1 + tau_2, -y)
  RationalMatrix s(dim, dim);
  s(0, 2) = s(1, 3) = s(2, 0) = s(3, 1) = 1;
  for (std::size_t i = 4; i < dim; ++i) s(i, i) = -1;
  QVector s_shift = zeros(dim);
  s_shift[0] = Rational(1, 2);  // tau_1 = 1/2
  s_shift[3] = Rational(1, 2);  // tau_2 = i/2
  // r: (x1, x2, y) -> (x2, -x1, y + sigma)
  RationalMatrix r(dim, dim);
  r(0, 2) = r(1, 3) = 1;
  r(2, 0) = r(3, 1) = -1;
  for (std::size_t i = 4; i < dim; ++i) r(i, i) = 1;
  QVector r_shift = zeros(dim);
  r_shift[4] = Rational(1, 4);

  const RationalMatrix b = d4_lattice_basis(algebraic_S);
  const RationalMatrix b_inv = ratmath::inverse(b);
  auto descend = [&](const RationalMatrix& rot, const QVector& shift) {
    return AffineIsometry(b_inv * rot * b, b_inv * shift);
  };
  const Mat cplx = b_inv.to_double() * cplx_cover * b.to_double();
  return FlatKahlerData(algebraic_S ? "d4_threefold" : "d4_nonalgebraic", static_cast<int>(dim / 2), cplx,
                        {descend(s, s_shift), descend(r, r_shift)});
}

std::vector<CatalogEntry> list_catalog() {
  std::vector<CatalogEntry> base = {
      {"torus1_square", 1, "elliptic curve C/Z[i]"},
      {"torus2_square", 2, "product of two square elliptic curves"},
      {"torus2_generic", 2, "generic (non-algebraic) 2-dimensional complex torus"},
      {"bielliptic_d2", 2, "bielliptic surface, group Z/2"},
      {"bielliptic_d4", 2, "bielliptic surface, group Z/4 on the square curve"},
      {"bielliptic_d6", 2, "bielliptic surface, group Z/6 on the hexagonal curve"},
      {"bdf_d2", 3, "Bagnera-de Franchis threefold, -1 on a generic 2-torus"},
      {"bdf_d4", 3, "Bagnera-de Franchis threefold, multiplication by i on E_i x E_i"},
      {"d4_threefold", 3, "D4 quotient of E x E x S, S an elliptic curve, b_1 = 0"},
      {"d4_nonalgebraic", 4, "D4 quotient of E x E x S, S a generic 2-torus, b_1 = 0"},
  };
  std::vector<CatalogEntry> out = base;
  for (const auto& e : base)
    out.push_back({e.name + kDoubleSuffix, 2 * e.n, "quaternionic double of " + e.name});
  return out;
}

FlatKahlerData build(const std::string& name) {
  const std::string suffix = kDoubleSuffix;
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return doubles::quaternionic_double(build(name.substr(0, name.size() - suffix.size()))).data;
  if (name == "torus1_square") return torus(name, square_curve());
  if (name == "torus2_square") return torus(name, product_periods(square_curve(), square_curve()));
  if (name == "torus2_generic") return torus(name, generic_periods(2));
  if (name == "bielliptic_d2") return bielliptic(2);
  if (name == "bielliptic_d4") return bielliptic(4);
  if (name == "bielliptic_d6") return bielliptic(6);
  if (name == "bdf_d2")
    return bagnera_de_franchis(torus("t1", generic_periods(2)), torus("t2", square_curve()), 2,
                               -RationalMatrix::identity(4), {Rational(1, 2), Rational(0)});
  if (name == "bdf_d4")
    return bagnera_de_franchis(torus("t1", product_periods(square_curve(), square_curve())),
                               torus("t2", square_curve()), 4,
                               RationalMatrix::block_diagonal(rotation_quarter(), rotation_quarter()),
                               {Rational(1, 4), Rational(0)});
  if (name == "d4_threefold") return d4_threefold(true);
  if (name == "d4_nonalgebraic") return d4_threefold(false);
  throw InvalidData("unknown catalog entry '" + name + "'");
}

}  // namespace flatkahler::catalog
