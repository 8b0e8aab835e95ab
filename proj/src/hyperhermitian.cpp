#include "flatkahler/hyperhermitian.hpp"

#include <algorithm>
#include <cmath>

namespace flatkahler::hyperhermitian {

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Columns spanning {x : m x = 0}, orthonormal.
Mat null_space(const Mat& m, double relative_tolerance) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > relative_tolerance * std::max(top, 1e-300)) ++rank;
  if (top == 0.0) rank = 0;
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace

double SynthesisResiduals::worst() const {
  return std::max({j_square, anticommute, symmetry, j_hermitian, i_hermitian, group_metric, group_j});
}

Mat orthonormal_span(const Mat& columns, double relative_tolerance) {
  if (columns.cols() == 0) return Mat(columns.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > relative_tolerance * s(0)) ++rank;
  if (s.size() == 0 || s(0) == 0.0) rank = 0;
  return svd.matrixU().leftCols(rank);
}

Mat average_metric(const FlatKahlerData& data) {
  const auto dim = static_cast<Eigen::Index>(data.rank());
  return average_metric(data, Mat::Identity(dim, dim));
}

Mat average_metric(const FlatKahlerData& data, const Mat& base) {
  const Mat& j = data.cplx();
  const Mat hermitian = 0.5 * (base + j.transpose() * base * j);
  const auto group = crystal::group_closure(data.generators(), data.rank());
  Mat h = Mat::Zero(base.rows(), base.cols());
  for (const auto& r : crystal::rotation_matrices(group)) h += r.transpose() * hermitian * r;
  h /= static_cast<double>(group.size());
  return 0.5 * (h + h.transpose());
}

Splitting kernel_splitting(const FlatKahlerData& data, const TwoForm& sigma1, const Mat& h1) {
  const Mat& s = sigma1.matrix();
  const Mat& j = data.cplx();
  const Eigen::Index dim = s.rows();
  if (dim != static_cast<Eigen::Index>(data.rank())) throw InvalidData("2-form dimension does not match the torus");
  const double scale = max_abs(s);
  if (scale == 0.0) throw InvalidData("the zero form has no complement to synthesize on");
  const auto rotations = crystal::rotation_matrices(crystal::group_closure(data.generators(), data.rank()));
  if (cohomology::invariance_residual(s, rotations) > tol::kNumeric * scale)
    throw InvalidData("2-form is not invariant under the group");
  if (max_abs(j.transpose() * s * j + s) > tol::kNumeric * scale)
    throw NotAntiCommuting("2-form is not the real part of a (2,0)-form");

  // E = ker sigma_1 intersected with J(ker sigma_1).
  const Mat kernel = null_space(s, tol::kNumeric);
  Mat e_basis(dim, 0);
  if (kernel.cols() > 0) {
    Mat stacked(dim, 2 * kernel.cols());
    stacked << kernel, -(j * kernel);
    const Mat coeffs = null_space(stacked, tol::kNumeric);
    e_basis = orthonormal_span(kernel * coeffs.topRows(kernel.cols()), tol::kNumeric);
  }

  Splitting out;
  out.e_basis = e_basis;
  if (e_basis.cols() == 0) {
    out.f_basis = Mat::Identity(dim, dim);
  } else {
    out.f_basis = null_space(e_basis.transpose() * h1, tol::kNumeric);
    if (out.f_basis.cols() + e_basis.cols() != dim) throw ConsistencyError("E and its complement do not span V");
  }
  if (out.f_basis.cols() == 0) throw DegenerateOnComplement("complement of the kernel is zero");

  const Mat restricted = out.f_basis.transpose() * s * out.f_basis;
  Eigen::JacobiSVD<Mat> svd(restricted);
  out.min_singular_on_f = svd.singularValues().minCoeff();
  const double top = Eigen::JacobiSVD<Mat>(s).singularValues()(0);
  if (out.min_singular_on_f <= tol::kDegenerate * std::max(1.0, top))
    throw DegenerateOnComplement("2-form is degenerate on the complement of its kernel (smallest singular value " +
                                 std::to_string(out.min_singular_on_f) + ")");

  // Both summands must be J- and G-stable.
  double defect = std::max(invariance_defect(out.f_basis, j), e_basis.cols() ? invariance_defect(e_basis, j) : 0.0);
  for (const auto& r : rotations) {
    defect = std::max(defect, invariance_defect(out.f_basis, r));
    if (e_basis.cols()) defect = std::max(defect, invariance_defect(e_basis, r));
  }
  if (defect > tol::kNumeric * std::max(1.0, max_abs(j)))
    throw ConsistencyError("kernel splitting is not stable under J and the group");
  return out;
}

FRestriction restrict_to_complement(const FlatKahlerData& data, const TwoForm& sigma1, const Mat& h1,
                                    const Splitting& split) {
  const Eigen::Index dim = h1.rows();
  const Eigen::Index de = split.e_basis.cols();
  const Eigen::Index df = split.f_basis.cols();
  Mat p(dim, dim);
  p << split.e_basis, split.f_basis;
  const Mat pinv = p.inverse();
  auto f_block = [&](const Mat& op) -> Mat { return (pinv * op * p).bottomRightCorner(df, df); };
  (void)de;

  FRestriction out;
  out.complex_structure = f_block(data.cplx());
  out.sigma1 = split.f_basis.transpose() * sigma1.matrix() * split.f_basis;
  out.metric = split.f_basis.transpose() * h1 * split.f_basis;
  out.metric = 0.5 * (out.metric + out.metric.transpose());
  for (const auto& r : crystal::rotation_matrices(crystal::group_closure(data.generators(), data.rank())))
    out.group.push_back(f_block(r));
  return out;
}

Synthesis synthesize(const FRestriction& f) {
  const Mat& h = f.metric;
  const Mat& sigma = f.sigma1;
  const Mat& i = f.complex_structure;
  const Eigen::Index dim = h.rows();
  const Mat id = Mat::Identity(dim, dim);

  Eigen::LLT<Mat> llt(h);
  if (llt.info() != Eigen::Success) throw NonNegativeSpectrum("metric on F is not positive definite");

  // h(A x, y) = sigma(x, y)  <=>  A^T h = sigma  <=>  A = -h^{-1} sigma.
  const Mat a = -llt.solve(sigma);
  const double a_scale = std::max(max_abs(a), 1e-300);
  if (max_abs(a * i + i * a) > tol::kNumeric * a_scale)
    throw NotAntiCommuting("h^{-1} sigma does not anticommute with I; sigma is not of type (2,0)+(0,2)");

  // -A^2 is h-self-adjoint and positive; diagonalize it in an h-orthonormal
  // frame, h = L L^T.
  const Mat l = llt.matrixL();
  const Mat c = -(sigma * llt.solve(sigma));  // h (-A^2), symmetric
  const Mat lc = l.triangularView<Eigen::Lower>().solve(0.5 * (c + c.transpose()));
  Mat msym = l.triangularView<Eigen::Lower>().solve(lc.transpose()).transpose();
  msym = 0.5 * (msym + msym.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(msym);
  const Vec& lambda = es.eigenvalues();
  if (lambda.size() == 0 || lambda.minCoeff() <= 1e-14 * std::max(lambda.maxCoeff(), 0.0))
    throw NonNegativeSpectrum("A^2 is not negative definite");

  Synthesis out;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) out.spectrum.eigenvalues.push_back(-lambda(k));
  out.spectrum.conditioning = lambda.maxCoeff() / lambda.minCoeff();

  const Mat& q = es.eigenvectors();
  const Mat inner = q * lambda.cwiseInverse().cwiseSqrt().asDiagonal() * q.transpose();
  // S = L^{-T} inner L^T.
  const Mat lt = l.transpose();
  const Mat s = l.transpose().triangularView<Eigen::Upper>().solve(inner * lt);

  out.a = a;
  out.s = s;
  out.j = a * s;
  // h(S., .) scales like 1/|sigma|; the factor mean(sqrt(-alpha_i)) makes the
  // metric independent of that scale and equal to h when -A^2 = Id.
  const double normalization = lambda.cwiseSqrt().mean();
  const Mat g_raw = normalization * (s.transpose() * h);
  const double g_scale = max_abs(g_raw);
  out.metric = 0.5 * (g_raw + g_raw.transpose());

  const Mat& g = out.metric;
  const Mat& jf = out.j;
  auto& res = out.residuals;
  res.j_square = max_abs(jf * jf + id);
  res.anticommute = max_abs(i * jf + jf * i);
  res.symmetry = max_abs(g_raw - g_raw.transpose()) / g_scale;
  res.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Mat>(g, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  res.j_hermitian = max_abs(jf.transpose() * g * jf - g) / g_scale;
  res.i_hermitian = max_abs(i.transpose() * g * i - g) / g_scale;
  for (const auto& r : f.group) {
    res.group_metric = std::max(res.group_metric, max_abs(r.transpose() * g * r - g) / g_scale);
    res.group_j = std::max(res.group_j, max_abs(r * jf - jf * r));
  }
  if (res.worst() > tol::kNumeric || res.min_eigenvalue <= 0.0)
    throw ConsistencyError("hyper-Hermitian synthesis violates its postconditions (worst residual " +
                           std::to_string(res.worst()) + ")");
  return out;
}

HyperHermitianStructure assemble(const FlatKahlerData& data, const TwoForm& sigma1) {
  return assemble(data, sigma1, average_metric(data));
}

HyperHermitianStructure assemble(const FlatKahlerData& data, const TwoForm& sigma1, const Mat& h1) {
  HyperHermitianStructure out;
  out.splitting = kernel_splitting(data, sigma1, h1);
  const FRestriction f = restrict_to_complement(data, sigma1, h1, out.splitting);
  const Synthesis syn = synthesize(f);

  const Mat& e = out.splitting.e_basis;
  const Mat& fb = out.splitting.f_basis;
  const Eigen::Index dim = h1.rows();
  const Eigen::Index de = e.cols();
  const Eigen::Index df = fb.cols();
  Mat p(dim, dim);
  p << e, fb;
  const Mat pinv = p.inverse();
  const Mat pinv_e = pinv.topRows(de);
  const Mat pinv_f = pinv.bottomRows(df);

  out.sigma1 = sigma1;
  out.i = data.cplx();
  out.i_f = f.complex_structure;
  out.j_f = syn.j;
  out.k_f = f.complex_structure * syn.j;
  const Mat i_e = (pinv * data.cplx() * p).topLeftCorner(de, de);
  out.i_on_e = e * i_e * pinv_e;
  out.i_on_f = fb * out.i_f * pinv_f;
  out.j = fb * out.j_f * pinv_f;
  out.k = fb * out.k_f * pinv_f;

  Mat blocks = Mat::Zero(dim, dim);
  blocks.topLeftCorner(de, de) = e.transpose() * h1 * e;
  blocks.bottomRightCorner(df, df) = syn.metric;
  out.metric = pinv.transpose() * blocks * pinv;
  out.metric = 0.5 * (out.metric + out.metric.transpose());
  out.spectrum = syn.spectrum;
  out.residuals = syn.residuals;
  out.group = crystal::rotation_matrices(crystal::group_closure(data.generators(), data.rank()));

  // Global invariants: g(E, F) = 0 and G-equivariance of g, J, K.
  const double g_scale = max_abs(out.metric);
  double worst = de ? max_abs(e.transpose() * out.metric * fb) / g_scale : 0.0;
  for (const auto& r : out.group) {
    worst = std::max(worst, max_abs(r.transpose() * out.metric * r - out.metric) / g_scale);
    worst = std::max(worst, max_abs(r * out.j - out.j * r));
    worst = std::max(worst, max_abs(r * out.k - out.k * r));
  }
  if (worst > tol::kNumeric) throw ConsistencyError("assembled hyper-Hermitian structure is not G-equivariant");
  return out;
}

Mat twistor_structure(const HyperHermitianStructure& h, const TwistorPoint& q) {
  if (!q.is_unit()) throw InvalidData("twistor parameter must be a unit vector");
  // Written so that q = (1, 0, 0) reproduces I exactly.
  return h.i + (q.a - 1.0) * h.i_on_f + q.b * h.j + q.c * h.k;
}

double containment_angle(const Mat& a, const Mat& b) {
  const Mat qa = orthonormal_span(a, 1e-12);
  const Mat qb = orthonormal_span(b, 1e-12);
  if (qa.cols() == 0) return 0.0;
  if (qb.cols() == 0) return M_PI / 2;
  Eigen::JacobiSVD<Mat> svd(qb.transpose() * qa);
  const Vec& s = svd.singularValues();
  double smallest = 1.0;
  for (Eigen::Index k = 0; k < qa.cols(); ++k) smallest = std::min(smallest, k < s.size() ? s(k) : 0.0);
  return std::acos(std::clamp(smallest, -1.0, 1.0));
}

double invariance_defect(const Mat& basis, const Mat& op) {
  if (basis.cols() == 0) return 0.0;
  const Mat q = orthonormal_span(basis, 1e-12);
  const Mat image = op * q;
  return max_abs(image - q * (q.transpose() * image));
}

}  // namespace flatkahler::hyperhermitian
