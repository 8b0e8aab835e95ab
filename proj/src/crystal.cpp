#include "flatkahler/crystal.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace flatkahler::crystal {

using ratmath::Integer;
using ratmath::Rational;

namespace {

QVector reduce_mod_one(QVector t) {
  for (auto& x : t) {
    x.canonicalize();
    x = ratmath::frac(x);
  }
  return t;
}

std::strong_ordering compare_rational(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

AffineIsometry::AffineIsometry(RationalMatrix rotation, QVector translation)
    : rotation_(std::move(rotation)), translation_(reduce_mod_one(std::move(translation))) {
  if (!rotation_.square()) throw InvalidData("rotation must be square");
  if (translation_.size() != rotation_.rows()) throw InvalidData("translation length does not match rotation");
  if (!rotation_.is_integral()) throw InvalidData("rotation must be integral on the lattice");
  const Rational det = ratmath::determinant(rotation_);
  if (det != 1 && det != -1) throw InvalidData("rotation must be unimodular (|det| = 1)");
}

AffineIsometry AffineIsometry::identity(std::size_t dim) {
  return AffineIsometry(RationalMatrix::identity(dim), QVector(dim, Rational(0)));
}

bool AffineIsometry::is_identity() const {
  if (!(rotation_ == RationalMatrix::identity(dim()))) return false;
  for (const auto& x : translation_)
    if (x != 0) return false;
  return true;
}

std::strong_ordering AffineIsometry::operator<=>(const AffineIsometry& rhs) const {
  if (auto c = dim() <=> rhs.dim(); c != 0) return c;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (auto c = compare_rational(rotation_(i, j), rhs.rotation_(i, j)); c != 0) return c;
  for (std::size_t i = 0; i < dim(); ++i)
    if (auto c = compare_rational(translation_[i], rhs.translation_[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

AffineIsometry compose_affine(const AffineIsometry& a, const AffineIsometry& b) {
  if (a.dim() != b.dim()) throw InvalidData("compose_affine: dimension mismatch");
  QVector t = a.rotation() * b.translation();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += a.translation()[i];
  return AffineIsometry(a.rotation() * b.rotation(), std::move(t));
}

FlatKahlerData::FlatKahlerData(std::string label, int n, Mat cplx, std::vector<AffineIsometry> generators)
    : label_(std::move(label)), n_(n), cplx_(std::move(cplx)), generators_(std::move(generators)) {
  if (n_ < 1) throw InvalidData("complex dimension must be positive");
  const auto dim = static_cast<Eigen::Index>(2 * n_);
  if (cplx_.rows() != dim || cplx_.cols() != dim) throw InvalidData("complex structure must be 2n x 2n");
  if (!cplx_.allFinite()) throw InvalidData("complex structure has non-finite entries");
  for (const auto& g : generators_)
    if (g.dim() != rank()) throw InvalidData("generator dimension does not match 2n");
}

std::vector<AffineIsometry> group_closure(const std::vector<AffineIsometry>& generators, std::size_t dim,
                                          int cap) {
  if (cap < 1) throw InvalidData("closure cap must be at least 1");
  for (const auto& g : generators)
    if (g.dim() != dim) throw InvalidData("group_closure: generator dimension mismatch");
  std::set<AffineIsometry> seen;
  std::deque<AffineIsometry> queue;
  auto add = [&](const AffineIsometry& g) {
    if (seen.insert(g).second) {
      if (seen.size() > static_cast<std::size_t>(cap))
        throw ClosureCapExceeded("group closure exceeded " + std::to_string(cap) +
                                 " elements; generators do not span a finite group");
      queue.push_back(g);
    }
  };
  add(AffineIsometry::identity(dim));
  for (const auto& g : generators) add(g);
  while (!queue.empty()) {
    AffineIsometry g = queue.front();
    queue.pop_front();
    for (const auto& s : generators) add(compose_affine(g, s));
  }
  return {seen.begin(), seen.end()};
}

std::optional<QVector> fixed_point(const AffineIsometry& g) {
  const std::size_t dim = g.dim();
  const RationalMatrix shifted = g.rotation() - RationalMatrix::identity(dim);
  // Fixed points solve (r - Id) x = lambda - t for some lattice vector lambda;
  // lambda - t must be annihilated by the left kernel of (r - Id).
  const auto left_kernel = ratmath::kernel_rational(shifted.transpose());
  QVector lambda(dim, Rational(0));
  if (!left_kernel.empty()) {
    RationalMatrix n(left_kernel.size(), dim);
    for (std::size_t i = 0; i < left_kernel.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) n(i, j) = left_kernel[i][j];
    const QVector c = n * g.translation();
    const auto snf = ratmath::smith_normal_form(n);
    const QVector uc = snf.u * c;
    QVector mu(dim, Rational(0));
    for (std::size_t i = 0; i < uc.size(); ++i) {
      if (i < snf.rank) {
        const Rational q = uc[i] / snf.d(i, i);
        if (q.get_den() != 1) return std::nullopt;
        mu[i] = q;
      } else if (uc[i] != 0) {
        return std::nullopt;
      }
    }
    lambda = snf.v * mu;
  }
  QVector rhs(dim);
  for (std::size_t i = 0; i < dim; ++i) rhs[i] = lambda[i] - g.translation()[i];
  auto x = ratmath::solve_rational(shifted, rhs);
  if (!x) throw ConsistencyError("fixed-point system inconsistent after lattice solvability check");
  for (auto& v : *x) v = ratmath::frac(v);
  return x;
}

FreenessResult is_free(const FlatKahlerData& data, int cap) {
  const auto group = group_closure(data.generators(), data.rank(), cap);
  for (const auto& g : group) {
    if (g.is_identity()) continue;
    if (auto x = fixed_point(g)) return FreenessResult{false, g, std::move(x)};
  }
  return {};
}

HolomorphyResult is_holomorphic(const FlatKahlerData& data, int cap) {
  const auto group = group_closure(data.generators(), data.rank(), cap);
  HolomorphyResult out;
  const Mat& j = data.cplx();
  for (const auto& g : group) {
    const Mat r = g.rotation().to_double();
    const double res = (r * j - j * r).cwiseAbs().maxCoeff();
    if (res > out.max_residual) {
      out.max_residual = res;
      if (res > tol::kNumeric) out.witness = g;
    }
  }
  out.holomorphic = out.max_residual <= tol::kNumeric;
  if (out.holomorphic) out.witness.reset();
  return out;
}

double complex_structure_residual(const Mat& cplx) {
  return (cplx * cplx + Mat::Identity(cplx.rows(), cplx.cols())).cwiseAbs().maxCoeff();
}

ValidationReport validate(const FlatKahlerData& data, int cap) {
  ValidationReport report;
  const auto group = group_closure(data.generators(), data.rank(), cap);
  report.group_order = group.size();

  const std::set<AffineIsometry> members(group.begin(), group.end());
  report.closed = true;
  for (const auto& a : group) {
    for (const auto& b : group)
      if (!members.contains(compose_affine(a, b))) {
        report.closed = false;
        break;
      }
    if (!report.closed) break;
  }

  report.complex_structure_residual = complex_structure_residual(data.cplx());
  report.complex_structure_ok = report.complex_structure_residual <= tol::kNumeric;

  const auto freeness = is_free(data, cap);
  report.free = freeness.free;
  report.free_witness = freeness.witness;
  report.fixed_point = freeness.fixed_point;

  const auto holo = is_holomorphic(data, cap);
  report.holomorphic = holo.holomorphic;
  report.holomorphic_residual = holo.max_residual;
  report.holomorphic_witness = holo.witness;
  return report;
}

CMat holomorphic_frame(const Mat& cplx) {
  const auto dim = cplx.rows();
  const Complex i(0.0, 1.0);
  const CMat projector = 0.5 * (CMat::Identity(dim, dim) - i * cplx.cast<Complex>());
  Eigen::ColPivHouseholderQR<CMat> qr(projector);
  if (qr.rank() != dim / 2)
    throw InvalidData("complex structure has no half-dimensional +i eigenspace");
  const CMat q = qr.householderQ();
  return q.leftCols(dim / 2);
}

CMat complex_rotation(const CMat& frame, const Mat& cplx, const AffineIsometry& g) {
  const Mat r = g.rotation().to_double();
  if ((r * cplx - cplx * r).cwiseAbs().maxCoeff() > tol::kNumeric)
    throw InvalidData("element does not commute with the complex structure: " + describe(g));
  return frame.adjoint() * r.cast<Complex>() * frame;
}

CMat complex_rotation(const FlatKahlerData& data, const AffineIsometry& g) {
  return complex_rotation(holomorphic_frame(data.cplx()), data.cplx(), g);
}

std::vector<Mat> rotation_matrices(const std::vector<AffineIsometry>& group) {
  std::vector<Mat> out;
  out.reserve(group.size());
  for (const auto& g : group) out.push_back(g.rotation().to_double());
  return out;
}

std::string describe(const AffineIsometry& g) {
  std::ostringstream os;
  os << "rotation [";
  for (std::size_t i = 0; i < g.dim(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < g.dim(); ++j) os << (j ? " " : "") << ratmath::to_string(g.rotation()(i, j));
  }
  os << "] translation (";
  for (std::size_t i = 0; i < g.dim(); ++i) os << (i ? ", " : "") << ratmath::to_string(g.translation()[i]);
  os << ")";
  return os.str();
}

}  // namespace flatkahler::crystal
