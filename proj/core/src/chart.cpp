#include "cpsys/chart.hpp"

#include <cmath>
#include <stdexcept>

#include "cpsys/michelsohn.hpp"

namespace cpsys {

ChartPoint::ChartPoint(Eigen::VectorXcd coords) : m(static_cast<int>(coords.size())), z(std::move(coords)) {
  if (m < 1) throw std::invalid_argument("ChartPoint: empty coordinate vector");
  if (!z.allFinite()) throw std::invalid_argument("ChartPoint: non-finite coordinates");
  if (z.norm() > chart_radius) throw std::invalid_argument("ChartPoint: outside chart radius");
}

ChartPoint ChartPoint::shifted(int a, double h) const {
  if (a < 1 || a > 2 * m) throw std::out_of_range("ChartPoint::shifted: bad coordinate index");
  Eigen::VectorXcd w = z;
  int j = (a - 1) / 2;
  w(j) += (a % 2 == 1) ? Complex(h, 0.0) : Complex(0.0, h);
  return ChartPoint(std::move(w));
}

Eigen::VectorXd ChartPoint::real_coords() const {
  Eigen::VectorXd x(2 * m);
  for (int j = 0; j < m; ++j) {
    x(2 * j) = z(j).real();
    x(2 * j + 1) = z(j).imag();
  }
  return x;
}

Eigen::MatrixXd canonical_j_matrix(int m) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    j(2 * i + 1, 2 * i) = 1.0;
    j(2 * i, 2 * i + 1) = -1.0;
  }
  return j;
}

Eigen::MatrixXd omega_matrix_of(const GradedForm& form) {
  const int d = form.dim();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  for (const auto& [idx, c] : form.terms()) {
    if (idx.size() != 2) throw std::invalid_argument("omega_matrix_of: not a 2-form");
    if (std::abs(c.imag()) > 1e-12 * (1.0 + std::abs(c.real())))
      throw std::invalid_argument("omega_matrix_of: complex coefficient");
    w(idx[0] - 1, idx[1] - 1) = c.real();
    w(idx[1] - 1, idx[0] - 1) = -c.real();
  }
  return w;
}

GradedForm form_from_omega_matrix(const Eigen::MatrixXd& w) {
  const int d = static_cast<int>(w.rows());
  GradedForm form = GradedForm::scalar(d, 0.0);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      if (w(a, b) != 0.0) form.add({a + 1, b + 1}, w(a, b));
  return form.pruned();
}

Eigen::MatrixXd gram_from_omega_matrix(const Eigen::MatrixXd& w, const Eigen::MatrixXd& j) {
  // g(X, Y) = omega(-JX, Y) for omega(., .) = g(J., .)
  Eigen::MatrixXd g = -j.transpose() * w;
  return 0.5 * (g + g.transpose());
}

Eigen::MatrixXcd fs_hessian_at(const ChartPoint& p) {
  const double r = 1.0 + p.z.squaredNorm();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(p.m, p.m) / r;
  h -= (p.z.conjugate() * p.z.transpose()) / (r * r);
  return h;
}

GradedForm fs_form_at(const ChartPoint& p) {
  // Omega = (1/2pi) i ddbar log(1+|z|^2)
  return form_from_hermitian_11(HermitianMatrixRep{fs_hessian_at(p) / M_PI});
}

Eigen::MatrixXd fs_gram_at(const ChartPoint& p) {
  return gram_from_omega_matrix(omega_matrix_of(fs_form_at(p)), canonical_j_matrix(p.m));
}

Eigen::VectorXcd vertical_direction_at(const ChartPoint& p) {
  if (p.m % 2 != 1) throw std::invalid_argument("vertical_direction_at: complex dimension must be odd");
  const int nq = (p.m + 1) / 2;  // number of quaternionic coordinates
  // homogeneous representative Z = (1, z), then V = jZ acting pairwise by
  // (z, w) -> (-conj w, conj z) on each quaternionic coordinate
  Eigen::VectorXcd big(p.m + 1);
  big(0) = 1.0;
  big.tail(p.m) = p.z;
  Eigen::VectorXcd v(p.m + 1);
  for (int a = 0; a < nq; ++a) {
    v(2 * a) = -std::conj(big(2 * a + 1));
    v(2 * a + 1) = std::conj(big(2 * a));
  }
  // push to the chart: d/ds (Z_k + s V_k)/(Z_0 + s V_0) at s = 0, Z_0 = 1
  return v.tail(p.m) - v(0) * p.z;
}

namespace {

Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
  Eigen::VectorXd x(2 * v.size());
  for (int j = 0; j < v.size(); ++j) {
    x(2 * j) = v(j).real();
    x(2 * j + 1) = v(j).imag();
  }
  return x;
}

}  // namespace

PenroseSplit penrose_split_at(const ChartPoint& p) {
  const Eigen::VectorXcd v = vertical_direction_at(p);
  Eigen::MatrixXd b(2 * p.m, 2);
  b.col(0) = realify(v);
  b.col(1) = realify(Complex(0.0, 1.0) * v);
  const Eigen::MatrixXd g = fs_gram_at(p);
  Eigen::Matrix2d gram = b.transpose() * g * b;
  PenroseSplit split;
  split.pi0 = b * gram.ldlt().solve(b.transpose() * g);
  split.pi1 = Eigen::MatrixXd::Identity(2 * p.m, 2 * p.m) - split.pi0;
  return split;
}

ChartPoint random_chart_point(int m, std::mt19937_64& rng, double max_norm) {
  std::normal_distribution<double> gauss;
  while (true) {
    Complex z0(gauss(rng), gauss(rng));
    Eigen::VectorXcd z(m);
    for (int j = 0; j < m; ++j) z(j) = Complex(gauss(rng), gauss(rng)) / z0;
    if (z.allFinite() && z.norm() <= max_norm) return ChartPoint(std::move(z));
  }
}

Eigen::MatrixXd gt_gram_at(const ChartPoint& p, double t) {
  if (t <= 0.0) throw std::invalid_argument("gt_gram_at: t must be positive");
  const PenroseSplit s = penrose_split_at(p);
  const Eigen::MatrixXd g = fs_gram_at(p);
  Eigen::MatrixXd gt = t * s.pi0.transpose() * g * s.pi0 + s.pi1.transpose() * g * s.pi1;
  return 0.5 * (gt + gt.transpose());
}

GradedForm omega_t_at(const ChartPoint& p, double t) {
  if (t <= 0.0) throw std::invalid_argument("omega_t_at: t must be positive");
  const PenroseSplit s = penrose_split_at(p);
  const Eigen::MatrixXd w = omega_matrix_of(fs_form_at(p));
  return form_from_omega_matrix(t * s.pi0.transpose() * w * s.pi0 + s.pi1.transpose() * w * s.pi1);
}

GradedForm omega0_at(const ChartPoint& p) {
  const PenroseSplit s = penrose_split_at(p);
  const Eigen::MatrixXd w = omega_matrix_of(fs_form_at(p));
  return form_from_omega_matrix(s.pi0.transpose() * w * s.pi0);
}

GradedForm omega1_at(const ChartPoint& p) {
  const PenroseSplit s = penrose_split_at(p);
  const Eigen::MatrixXd w = omega_matrix_of(fs_form_at(p));
  return form_from_omega_matrix(s.pi1.transpose() * w * s.pi1);
}

}  // namespace cpsys
