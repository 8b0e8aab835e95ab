#include "flatkahler/cohomology.hpp"

#include <cmath>

namespace flatkahler::cohomology {

using ratmath::QVector;
using ratmath::Rational;

namespace {

long exact_integer(const Rational& value, const char* what) {
  if (value.get_den() != 1 || !value.get_num().fits_slong_p())
    throw NonIntegralInvariant(std::string(what) + " is not an integer: " + ratmath::to_string(value));
  return value.get_num().get_si();
}

// Coefficients of prod_i (1 + mu_i x).
std::vector<Complex> elementary_symmetric(const CVec& mu) {
  std::vector<Complex> e(static_cast<std::size_t>(mu.size()) + 1, Complex(0.0));
  e[0] = 1.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    for (auto k = static_cast<std::size_t>(i) + 1; k > 0; --k) e[k] += mu(i) * e[k - 1];
  return e;
}

}  // namespace

TwoForm TwoForm::from_rational(RationalMatrix matrix) {
  if (!matrix.square()) throw InvalidData("2-form matrix must be square");
  if (!(matrix.transpose() == -matrix)) throw InvalidData("2-form matrix must be skew-symmetric");
  TwoForm out;
  out.matrix_ = matrix.to_double();
  out.exact_ = std::move(matrix);
  return out;
}

TwoForm TwoForm::from_real(const Mat& matrix) {
  if (matrix.rows() != matrix.cols()) throw InvalidData("2-form matrix must be square");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix + matrix.transpose()).cwiseAbs().maxCoeff() > tol::kNumeric * scale)
    throw InvalidData("2-form matrix must be skew-symmetric");
  TwoForm out;
  out.matrix_ = 0.5 * (matrix - matrix.transpose());
  return out;
}

RationalMatrix lambda2_representation(const RationalMatrix& r) {
  const std::size_t dim = r.rows();
  const std::size_t m = dim * (dim - 1) / 2;
  RationalMatrix out(m, m);
  std::size_t col = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j, ++col) {
      std::size_t row = 0;
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t l = k + 1; l < dim; ++l, ++row) out(row, col) = r(i, k) * r(j, l) - r(j, k) * r(i, l);
    }
  return out;
}

QVector skew_coordinates(const RationalMatrix& a) {
  QVector out;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) out.push_back(a(i, j));
  return out;
}

RationalMatrix skew_from_coordinates(const QVector& c, std::size_t dim) {
  RationalMatrix out(dim, dim);
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j, ++k) {
      out(i, j) = c.at(k);
      out(j, i) = -c.at(k);
    }
  return out;
}

Vec skew_coordinates(const Mat& a) {
  const Eigen::Index dim = a.rows();
  Vec out(dim * (dim - 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i + 1; j < dim; ++j) out(k++) = a(i, j);
  return out;
}

Mat skew_from_coordinates(const Vec& c, Eigen::Index dim) {
  Mat out = Mat::Zero(dim, dim);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i + 1; j < dim; ++j, ++k) {
      out(i, j) = c(k);
      out(j, i) = -c(k);
    }
  return out;
}

double invariance_residual(const Mat& form, const std::vector<Mat>& rotations) {
  double worst = 0.0;
  for (const auto& r : rotations) worst = std::max(worst, (r.transpose() * form * r - form).cwiseAbs().maxCoeff());
  return worst;
}

std::vector<long> betti_numbers(const FlatKahlerData& data) {
  const auto group = crystal::group_closure(data.generators(), data.rank());
  const std::size_t dim = data.rank();
  QVector sum(dim + 1, Rational(0));
  for (const auto& g : group) {
    const QVector e = ratmath::char_poly_exterior(g.rotation());
    for (std::size_t k = 0; k <= dim; ++k) sum[k] += e[k];
  }
  std::vector<long> b(dim + 1);
  const Rational order(static_cast<long>(group.size()));
  for (std::size_t k = 0; k <= dim; ++k) b[k] = exact_integer(sum[k] / order, "Betti number");
  return b;
}

HodgeDiamond hodge_numbers(const FlatKahlerData& data) {
  const auto group = crystal::group_closure(data.generators(), data.rank());
  const int n = data.n();
  const auto un = static_cast<std::size_t>(n);
  const CMat frame = crystal::holomorphic_frame(data.cplx());
  std::vector<std::vector<Complex>> acc(un + 1, std::vector<Complex>(un + 1, Complex(0.0)));
  for (const auto& g : group) {
    const CMat r = crystal::complex_rotation(frame, data.cplx(), g);
    Eigen::ComplexEigenSolver<CMat> es(r.inverse(), false);
    const auto e = elementary_symmetric(es.eigenvalues());
    for (std::size_t p = 0; p <= un; ++p)
      for (std::size_t q = 0; q <= un; ++q) acc[p][q] += e[p] * std::conj(e[q]);
  }
  HodgeDiamond out;
  out.n = n;
  out.h.assign(un + 1, std::vector<long>(un + 1, 0));
  const double order = static_cast<double>(group.size());
  for (std::size_t p = 0; p <= un; ++p)
    for (std::size_t q = 0; q <= un; ++q) {
      const Complex v = acc[p][q] / order;
      const double rounded = std::round(v.real());
      const double residual = std::max(std::abs(v.real() - rounded), std::abs(v.imag()));
      out.max_rounding_residual = std::max(out.max_rounding_residual, residual);
      if (residual > tol::kRound || rounded < 0)
        throw RoundingFailure("h^{" + std::to_string(p) + "," + std::to_string(q) + "} = " +
                              std::to_string(v.real()) + " is not within rounding tolerance of an integer");
      out.h[p][q] = static_cast<long>(rounded);
    }
  out.b = betti_numbers(data);

  for (std::size_t p = 0; p <= un; ++p)
    for (std::size_t q = 0; q <= un; ++q)
      if (out.h[p][q] != out.h[q][p]) throw ConsistencyError("Hodge symmetry h^{p,q} = h^{q,p} fails");
  const std::size_t top = 2 * un;
  for (std::size_t k = 0; k <= top; ++k) {
    if (out.b[k] != out.b[top - k]) throw ConsistencyError("Poincare duality b_k = b_{2n-k} fails");
    long sum = 0;
    for (std::size_t p = 0; p <= std::min(k, un); ++p)
      if (k - p <= un) sum += out.h[p][k - p];
    if (sum != out.b[k])
      throw ConsistencyError("sum of h^{p,q} with p+q=" + std::to_string(k) + " is " + std::to_string(sum) +
                             " but b_" + std::to_string(k) + " = " + std::to_string(out.b[k]));
  }
  return out;
}

std::vector<TwoForm> invariant_two_forms(const FlatKahlerData& data) {
  // Fixed by the generators is fixed by the group; the stacked integer
  // system is much cheaper than the dense Reynolds projector.
  const std::size_t dim = data.rank();
  const std::size_t m = dim * (dim - 1) / 2;
  const auto& gens = data.generators();
  RationalMatrix stacked(std::max<std::size_t>(gens.size(), 1) * m, m);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const RationalMatrix rep = lambda2_representation(gens[g].rotation());
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) stacked(g * m + a, b) = rep(a, b) - (a == b ? 1 : 0);
  }
  const auto basis = ratmath::kernel_rational(stacked);
  std::vector<TwoForm> out;
  out.reserve(basis.size());
  for (const auto& c : basis) out.push_back(TwoForm::from_rational(skew_from_coordinates(c, dim)));
  const auto b = betti_numbers(data);
  if (out.size() != static_cast<std::size_t>(b[2]))
    throw ConsistencyError("invariant 2-form count differs from b_2");
  return out;
}

Mat imaginary_partner(const Mat& sigma1, const Mat& cplx) { return -cplx.transpose() * sigma1; }

std::vector<TwoForm> holomorphic_two_forms(const FlatKahlerData& data) {
  const auto invariant = invariant_two_forms(data);
  std::vector<TwoForm> out;
  if (invariant.empty()) return out;
  const Mat& j = data.cplx();
  const Eigen::Index dim = static_cast<Eigen::Index>(data.rank());
  Mat columns(dim * (dim - 1) / 2, static_cast<Eigen::Index>(invariant.size()));
  for (std::size_t k = 0; k < invariant.size(); ++k) {
    const Mat& beta = invariant[k].matrix();
    const Mat anti = 0.5 * (beta - j.transpose() * beta * j);
    Vec c = skew_coordinates(anti);
    const double norm = skew_coordinates(beta).norm();
    columns.col(static_cast<Eigen::Index>(k)) = c / norm;
  }
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  Eigen::Index keep = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol::kNumeric * std::max(1.0, s(0))) ++keep;
  if (keep % 2 != 0) throw ConsistencyError("holomorphic 2-form space has odd real dimension");
  const auto rotations = crystal::rotation_matrices(crystal::group_closure(data.generators(), data.rank()));
  for (Eigen::Index i = 0; i < keep; ++i) {
    Vec c = svd.matrixU().col(i);
    // Fix the sign so the largest entry is positive.
    Eigen::Index arg = 0;
    c.cwiseAbs().maxCoeff(&arg);
    if (c(arg) < 0) c = -c;
    Mat sigma = skew_from_coordinates(c, dim);
    const double anti = (j.transpose() * sigma * j + sigma).cwiseAbs().maxCoeff();
    const double inv = invariance_residual(sigma, rotations);
    const Mat sigma2 = imaginary_partner(sigma, j);
    const double partner = (j.transpose() * sigma2 - sigma).cwiseAbs().maxCoeff();
    if (anti > tol::kNumeric || inv > tol::kNumeric || partner > tol::kNumeric)
      throw ConsistencyError("holomorphic 2-form basis element fails its residual checks");
    out.push_back(TwoForm::from_real(sigma));
  }
  return out;
}

bool obstruction_verdict(const FlatKahlerData& data) { return !holomorphic_two_forms(data).empty(); }

}  // namespace flatkahler::cohomology
