#include "flatkahler/twistor.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "flatkahler/kernels/form_residual.hpp"

namespace flatkahler::twistor {

using kernels::kResidualMonomials;

namespace {

// Largest number of grid minima handed to the refinement.
constexpr std::size_t kMaxSeeds = 256;
constexpr int kMaxIterations = 200;

double frobenius_or_throw(const TwoForm& alpha) {
  const double norm = alpha.matrix().norm();
  if (norm == 0.0) throw InvalidData("the zero form has no Hodge locus");
  return norm;
}

std::array<double, kResidualMonomials> monomials(const TwistorPoint& q) {
  return {1.0, q.a, q.b, q.c, q.a * q.a, q.a * q.b, q.a * q.c, q.b * q.b, q.b * q.c, q.c * q.c};
}

Eigen::Vector3d as_vector(const TwistorPoint& q) { return {q.a, q.b, q.c}; }

TwistorPoint normalized(const Eigen::Vector3d& v) {
  const Eigen::Vector3d u = v.normalized();
  return {u(0), u(1), u(2)};
}

// Orthonormal basis of the tangent plane at q.
Eigen::Matrix<double, 3, 2> tangent_basis(const TwistorPoint& q) {
  const Eigen::Vector3d n = as_vector(q);
  Eigen::Index axis = 0;
  n.cwiseAbs().minCoeff(&axis);
  const Eigen::Vector3d t1 = n.cross(Eigen::Vector3d::Unit(axis)).normalized();
  Eigen::Matrix<double, 3, 2> t;
  t.col(0) = t1;
  t.col(1) = n.cross(t1);
  return t;
}

// Levenberg-Marquardt on the sphere for the defect vector.
TwistorPoint refine(const ResidualField& field, TwistorPoint q) {
  Vec f = field.defect(q);
  double cost = f.squaredNorm();
  double mu = 1e-12;
  for (int it = 0; it < kMaxIterations && cost > 0.0; ++it) {
    const auto t = tangent_basis(q);
    const Mat jt = field.jacobian(q) * t;
    Eigen::Matrix2d normal = jt.transpose() * jt;
    const Eigen::Vector2d grad = jt.transpose() * f;
    const double damping_scale = std::max(normal.trace() / 2, 1e-300);
    bool improved = false;
    while (mu < 1e12) {
      const Eigen::Matrix2d damped = normal + mu * damping_scale * Eigen::Matrix2d::Identity();
      const Eigen::Vector2d step = -damped.ldlt().solve(grad);
      const TwistorPoint next = normalized(as_vector(q) + t * step);
      const Vec f_next = field.defect(next);
      const double next_cost = f_next.squaredNorm();
      if (next_cost < cost) {
        q = next;
        f = f_next;
        cost = next_cost;
        mu = std::max(mu / 10, 1e-15);
        improved = step.norm() > 1e-16;
        break;
      }
      mu *= 10;
    }
    if (!improved) break;
  }
  return q;
}

}  // namespace

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quaternion Quaternion::operator*(const Quaternion& o) const {
  return {w * o.w - x * o.x - y * o.y - z * o.z, w * o.x + x * o.w + y * o.z - z * o.y,
          w * o.y - x * o.z + y * o.w + z * o.x, w * o.z + x * o.y - y * o.x + z * o.w};
}

Quaternion Quaternion::from_axis_angle(const TwistorPoint& axis, double angle) {
  const double n = axis.norm();
  const double s = std::sin(angle / 2) / n;
  return {std::cos(angle / 2), s * axis.a, s * axis.b, s * axis.c};
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kFull:
      return "FULL";
    case Classification::kFinite:
      return "FINITE";
    case Classification::kEmpty:
      return "EMPTY";
  }
  return "UNKNOWN";
}

double hodge_residual(const TwoForm& alpha, const Mat& jq) {
  const double norm = frobenius_or_throw(alpha);
  const Mat& a = alpha.matrix();
  if (jq.rows() != a.rows() || jq.cols() != a.cols()) throw InvalidData("complex structure and form differ in size");
  return (jq.transpose() * a * jq - a).norm() / norm;
}

Mat su2_operator(const HyperHermitianStructure& h, const Quaternion& u) {
  if (std::abs(u.norm() - 1.0) > tol::kNumeric) throw InvalidData("SU(2) element must be a unit quaternion");
  const Eigen::Index dim = h.i.rows();
  const Mat p_f = -(h.i_on_f * h.i_on_f);
  const Mat p_e = Mat::Identity(dim, dim) - p_f;
  return p_e + u.w * p_f + u.x * h.i_on_f + u.y * h.j + u.z * h.k;
}

TwoForm su2_apply(const HyperHermitianStructure& h, const TwoForm& alpha, const Quaternion& u) {
  const Quaternion inverse{u.w, -u.x, -u.y, -u.z};
  const Mat v = su2_operator(h, inverse);
  return TwoForm::from_real(v.transpose() * alpha.matrix() * v);
}

double su2_invariance_defect(const HyperHermitianStructure& h, const TwoForm& alpha) {
  const double norm = frobenius_or_throw(alpha);
  const Mat& a = alpha.matrix();
  double worst = 0.0;
  for (const Mat* op : {&h.i_on_f, &h.j, &h.k})
    worst = std::max(worst, (op->transpose() * a + a * *op).norm() / norm);
  return worst;
}

bool su2_invariance_test(const HyperHermitianStructure& h, const TwoForm& alpha) {
  return su2_invariance_defect(h, alpha) <= tol::kFull;
}

double e_block_defect(const HyperHermitianStructure& h, const TwoForm& alpha) {
  const double norm = frobenius_or_throw(alpha);
  const Mat& a = alpha.matrix();
  return (h.i_on_e.transpose() * a + a * h.i_on_e).norm() / norm;
}

bool twistor_invariance_test(const HyperHermitianStructure& h, const TwoForm& alpha) {
  return su2_invariance_test(h, alpha) && e_block_defect(h, alpha) <= tol::kFull;
}

std::vector<TwistorPoint> fibonacci_sphere(int n) {
  if (n <= 0) throw InvalidData("grid size must be positive");
  std::vector<TwistorPoint> out(static_cast<std::size_t>(n));
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double c = 1.0 - (2.0 * i + 1.0) / n;
    const double radius = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double phi = golden * i;
    out[static_cast<std::size_t>(i)] = {radius * std::cos(phi), radius * std::sin(phi), c};
  }
  return out;
}

ResidualField::ResidualField(const HyperHermitianStructure& h, const TwoForm& alpha) {
  const double norm = frobenius_or_throw(alpha);
  const Mat& a = alpha.matrix();
  const Eigen::Index dim = a.rows();
  if (h.i.rows() != dim) throw InvalidData("form and hyper-Hermitian structure differ in dimension");
  scale_ = 1.0 / norm;
  entries_ = static_cast<std::size_t>(dim * (dim - 1) / 2);
  coefficients_.assign(kResidualMonomials * entries_, 0.0);
  const std::array<const Mat*, 4> basis = {&h.i_on_e, &h.i_on_f, &h.j, &h.k};
  std::size_t row = 0;
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t t = s; t < 4; ++t, ++row) {
      Mat c = basis[s]->transpose() * a * *basis[t];
      if (s != t) c += basis[t]->transpose() * a * *basis[s];
      if (s == 0 && t == 0) c -= a;
      std::size_t e = 0;
      for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = i + 1; j < dim; ++j, ++e) coefficients_[row * entries_ + e] = c(i, j);
    }
}

Vec ResidualField::defect(const TwistorPoint& q) const {
  const auto mono = monomials(q);
  Vec out = Vec::Zero(static_cast<Eigen::Index>(entries_));
  for (std::size_t k = 0; k < kResidualMonomials; ++k)
    out += mono[k] * Eigen::Map<const Vec>(coefficients_.data() + k * entries_, static_cast<Eigen::Index>(entries_));
  return out;
}

Mat ResidualField::jacobian(const TwistorPoint& q) const {
  const double a = q.a, b = q.b, c = q.c;
  const double d[3][kResidualMonomials] = {{0, 1, 0, 0, 2 * a, b, c, 0, 0, 0},
                                           {0, 0, 1, 0, 0, a, 0, 2 * b, c, 0},
                                           {0, 0, 0, 1, 0, 0, a, 0, b, 2 * c}};
  const auto m = static_cast<Eigen::Index>(entries_);
  Mat out = Mat::Zero(m, 3);
  for (int col = 0; col < 3; ++col)
    for (std::size_t k = 0; k < kResidualMonomials; ++k)
      if (d[col][k] != 0.0) out.col(col) += d[col][k] * Eigen::Map<const Vec>(coefficients_.data() + k * entries_, m);
  return out;
}

double ResidualField::evaluate(const TwistorPoint& q) const { return std::sqrt(2.0) * defect(q).norm() * scale_; }

void ResidualField::evaluate(const std::vector<TwistorPoint>& qs, std::vector<double>& out, unsigned threads) const {
  const std::size_t n = qs.size();
  std::vector<double> a(n), b(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = qs[i].a;
    b[i] = qs[i].b;
    c[i] = qs[i].c;
  }
  out.assign(n, 0.0);
  auto run = [&](std::size_t begin, std::size_t end) {
    kernels::ResidualBatch batch;
    batch.coefficients = coefficients_.data();
    batch.entries = entries_;
    batch.scale = scale_;
    batch.a = a.data() + begin;
    batch.b = b.data() + begin;
    batch.c = c.data() + begin;
    batch.count = end - begin;
    batch.out = out.data() + begin;
    kernels::form_residual(batch);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n / 256, 1))));
  if (threads == 1) {
    run(0, n);
    return;
  }
  // Chunk boundaries are multiples of 4 so every sample takes the same path
  // through the kernel regardless of the thread count.
  const std::size_t chunk = ((n + threads - 1) / threads + 3) / 4 * 4;
  std::vector<std::thread> pool;
  for (std::size_t begin = 0; begin < n; begin += chunk) pool.emplace_back(run, begin, std::min(n, begin + chunk));
  for (auto& t : pool) t.join();
}

LocusReport scan_locus(const HyperHermitianStructure& h, const TwoForm& alpha, int grid_size,
                       const ScanOptions& options) {
  if (grid_size < 100) throw InvalidData("grid size must be at least 100");
  frobenius_or_throw(alpha);
  const ResidualField field(h, alpha);
  const auto grid = fibonacci_sphere(grid_size);
  std::vector<double> residual;
  field.evaluate(grid, residual, options.threads);

  LocusReport report;
  report.grid_size = grid_size;
  report.min_residual = *std::min_element(residual.begin(), residual.end());
  report.max_residual = *std::max_element(residual.begin(), residual.end());
  if (options.keep_samples) {
    report.samples.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) report.samples.push_back({grid[i], residual[i]});
  }
  if (report.max_residual <= tol::kFull) {
    report.classification = Classification::kFull;
    return report;
  }

  // Grid local minima: no neighbor within two grid spacings is smaller under
  // the (residual, index) order. Grid points are sorted by c, so neighbors
  // lie in a contiguous index window.
  const auto n = static_cast<std::size_t>(grid_size);
  const double radius = 2.0 * std::sqrt(4.0 * M_PI / grid_size);
  const auto window = static_cast<std::size_t>(std::ceil(radius * grid_size / 2.0)) + 1;
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    bool minimal = true;
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(n, i + window + 1);
    for (std::size_t j = lo; j < hi && minimal; ++j) {
      if (j == i || grid[i].distance(grid[j]) > radius) continue;
      if (residual[j] < residual[i] || (residual[j] == residual[i] && j < i)) minimal = false;
    }
    if (minimal) seeds.push_back(i);
  }
  std::sort(seeds.begin(), seeds.end(), [&](std::size_t x, std::size_t y) {
    return residual[x] != residual[y] ? residual[x] < residual[y] : x < y;
  });
  if (seeds.size() > kMaxSeeds) seeds.resize(kMaxSeeds);
  report.seeds = seeds.size();

  std::vector<std::pair<TwistorPoint, double>> roots;
  for (std::size_t s : seeds) {
    const TwistorPoint q = refine(field, grid[s]);
    const double value = hodge_residual(alpha, hyperhermitian::twistor_structure(h, q));
    if (value > tol::kRoot) continue;
    const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const auto& r) {
      return r.first.distance(q) < tol::kSeparation;
    });
    if (!duplicate) roots.emplace_back(q, value);
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    if (x.first.a != y.first.a) return x.first.a > y.first.a;
    if (x.first.b != y.first.b) return x.first.b > y.first.b;
    return x.first.c > y.first.c;
  });
  for (const auto& [q, value] : roots) {
    report.points.push_back(q);
    report.point_residuals.push_back(value);
  }
  report.classification = roots.empty() ? Classification::kEmpty : Classification::kFinite;
  return report;
}

}  // namespace flatkahler::twistor
