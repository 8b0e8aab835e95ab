#include "flatkahler/doubles.hpp"

#include <algorithm>

#include "flatkahler/hyperhermitian.hpp"

namespace flatkahler::doubles {

using crystal::AffineIsometry;
using ratmath::QVector;
using ratmath::Rational;
using ratmath::RationalMatrix;

namespace {

void require_valid(const FlatKahlerData& data) {
  const auto report = crystal::validate(data);
  if (!report.valid()) throw InvalidData("cannot double '" + data.label() + "': input does not validate");
}

Mat blocks(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
  Mat out(a.rows() + c.rows(), a.cols() + b.cols());
  out << a, b, c, d;
  return out;
}

QVector padded(const QVector& t) {
  QVector out = t;
  out.resize(2 * t.size(), Rational(0));
  return out;
}

template <typename SecondBlock>
std::vector<AffineIsometry> doubled_generators(const FlatKahlerData& data, SecondBlock second) {
  std::vector<AffineIsometry> out;
  for (const auto& g : data.generators())
    out.emplace_back(RationalMatrix::block_diagonal(g.rotation(), second(g.rotation())), padded(g.translation()));
  return out;
}

}  // namespace

double quaternion_relation_residual(const Mat& i, const Mat& j, const Mat& k) {
  const Mat id = Mat::Identity(i.rows(), i.cols());
  return std::max({(i * i + id).cwiseAbs().maxCoeff(), (j * j + id).cwiseAbs().maxCoeff(),
                   (k * k + id).cwiseAbs().maxCoeff(), (i * j * k + id).cwiseAbs().maxCoeff()});
}

DoubleResult quaternionic_double(const FlatKahlerData& data) {
  require_valid(data);
  const Eigen::Index m = static_cast<Eigen::Index>(data.rank());
  const Mat& ix = data.cplx();
  const Mat id = Mat::Identity(m, m);
  const Mat zero = Mat::Zero(m, m);

  DoubleResult out;
  out.i = blocks(ix, zero, zero, -ix);
  out.j = blocks(zero, -id, id, zero);
  out.k = out.i * out.j;
  out.data = FlatKahlerData(data.label() + "_qdouble", 2 * data.n(), out.i,
                            doubled_generators(data, [](const RationalMatrix& r) { return r; }));

  // omega_J for the metric diag(h, h), h the averaged metric of X.
  const Mat h = hyperhermitian::average_metric(data);
  out.canonical_sigma1 = TwoForm::from_real(blocks(zero, h, -h, zero));
  return out;
}

DoubleResult coquaternionic_double(const FlatKahlerData& data) {
  require_valid(data);
  const Eigen::Index m = static_cast<Eigen::Index>(data.rank());
  const Mat& ix = data.cplx();
  const Mat zero = Mat::Zero(m, m);
  const Mat h = hyperhermitian::average_metric(data);

  DoubleResult out;
  out.i = blocks(ix, zero, zero, ix.transpose());
  out.j = blocks(zero, -h.inverse(), h, zero);
  out.k = out.i * out.j;
  out.data = FlatKahlerData(data.label() + "_codouble", 2 * data.n(), out.i,
                            doubled_generators(data, [](const RationalMatrix& r) {
                              return ratmath::inverse(r).transpose();
                            }));

  // Tautological pairing between the lattice and its dual.
  const std::size_t mm = data.rank();
  RationalMatrix pairing(2 * mm, 2 * mm);
  for (std::size_t a = 0; a < mm; ++a) {
    pairing(a, mm + a) = 1;
    pairing(mm + a, a) = -1;
  }
  out.canonical_sigma1 = TwoForm::from_rational(pairing);
  return out;
}

}  // namespace flatkahler::doubles
