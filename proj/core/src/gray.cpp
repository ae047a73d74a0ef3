#include "cpsys/gray.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cpsys/complex_structure.hpp"

namespace cpsys {

namespace {

// central difference of the Gram field along real coordinate a (1-based)
Eigen::MatrixXd gram_partial(const MetricField& g, const ChartPoint& p, int a, double h) {
  return (g(p.shifted(a, h)) - g(p.shifted(a, -h))) / (2.0 * h);
}

}  // namespace

std::vector<Eigen::MatrixXd> christoffels_at(const MetricField& g, const ChartPoint& p, double h) {
  const int d = 2 * p.m;
  std::vector<Eigen::MatrixXd> dg(d);
  for (int a = 0; a < d; ++a) dg[a] = gram_partial(g, p, a + 1, h);
  const Eigen::MatrixXd ginv = g(p).inverse();
  std::vector<Eigen::MatrixXd> gamma(d, Eigen::MatrixXd::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Eigen::VectorXd lower(d);
      for (int l = 0; l < d; ++l) lower(l) = 0.5 * (dg[a](b, l) + dg[b](a, l) - dg[l](a, b));
      const Eigen::VectorXd upper = ginv * lower;
      for (int c = 0; c < d; ++c) gamma[a](c, b) = upper(c);
    }
  return gamma;
}

std::vector<Eigen::MatrixXd> nabla_j_at(const MetricField& g, const ChartPoint& p, double h) {
  const Eigen::MatrixXd j = canonical_j_matrix(p.m);
  std::vector<Eigen::MatrixXd> gamma = christoffels_at(g, p, h);
  std::vector<Eigen::MatrixXd> nj(gamma.size());
  for (size_t a = 0; a < gamma.size(); ++a) nj[a] = gamma[a] * j - j * gamma[a];
  return nj;
}

namespace {

// (nabla_X J) Y from the precomputed per-coordinate matrices
Eigen::VectorXd apply_nabla_j(const std::vector<Eigen::MatrixXd>& nj, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (int a = 0; a < x.size(); ++a)
    if (x(a) != 0.0) out += x(a) * (nj[a] * y);
  return out;
}

Eigen::VectorXd nijenhuis_from_nabla_j(const std::vector<Eigen::MatrixXd>& nj,
                                       const Eigen::MatrixXd& j, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& y) {
  // N_J(X,Y) via the Levi-Civita connection:
  // (nabla_JY J)X - (nabla_JX J)Y + (nabla_Y J)JX - (nabla_X J)JY
  return apply_nabla_j(nj, j * y, x) - apply_nabla_j(nj, j * x, y) + apply_nabla_j(nj, y, j * x) -
         apply_nabla_j(nj, x, j * y);
}

}  // namespace

GrayTensors gray_tensors_at(const MetricField& g, const ChartPoint& p, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, double h) {
  const Eigen::MatrixXd j = canonical_j_matrix(p.m);
  const std::vector<Eigen::MatrixXd> nj = nabla_j_at(g, p, h);
  const Eigen::VectorXd a = apply_nabla_j(nj, x, y);        // (nabla_X J)Y
  const Eigen::VectorXd b = apply_nabla_j(nj, j * x, j * y);  // (nabla_JX J)JY
  GrayTensors t;
  t.k = a + b;
  t.h = a - b;
  t.s = a - apply_nabla_j(nj, y, x);
  t.nijenhuis = nijenhuis_from_nabla_j(nj, j, x, y);
  return t;
}

double IdentityReport::max_basic() const {
  return std::max({nabla_omega_vs_j, antisymmetry, j_exchange, degenerate_pair, nijenhuis_twist,
                   four_tensor_relation});
}

double IdentityReport::max_all() const {
  return std::max({max_basic(), k_antisymmetric, torsion_a, torsion_b});
}

IdentityReport check_basic_identities_at(const MetricField& g, const ChartPoint& p,
                                         const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                         const Eigen::VectorXd& z, double h) {
  const int d = 2 * p.m;
  const Eigen::MatrixXd j = canonical_j_matrix(p.m);
  const Eigen::MatrixXd gram = g(p);
  const std::vector<Eigen::MatrixXd> gamma = christoffels_at(g, p, h);
  std::vector<Eigen::MatrixXd> nj(gamma.size());
  for (size_t a = 0; a < gamma.size(); ++a) nj[a] = gamma[a] * j - j * gamma[a];

  // (nabla_X omega)(Y, Z) with constant coordinate extensions:
  // X(omega(Y,Z)) - omega(Gamma_X Y, Z) - omega(Y, Gamma_X Z), W = J^T G
  Eigen::MatrixXd gamma_x = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a)
    if (x(a) != 0.0) gamma_x += x(a) * gamma[a];
  Eigen::MatrixXd dw_x = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a)
    if (x(a) != 0.0) dw_x += x(a) * (j.transpose() * gram_partial(g, p, a + 1, h));
  auto omega_of = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return u.dot(j.transpose() * gram * v);
  };
  auto nabla_omega = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return u.dot(dw_x * v) - omega_of(gamma_x * u, v) - omega_of(u, gamma_x * v);
  };

  const Eigen::VectorXd njy = apply_nabla_j(nj, x, y);
  const Eigen::VectorXd n_xy = nijenhuis_from_nabla_j(nj, j, x, y);
  const Eigen::VectorXd n_jxy = nijenhuis_from_nabla_j(nj, j, j * x, y);

  IdentityReport r{};
  r.nabla_omega_vs_j = std::abs(nabla_omega(y, z) - (njy.dot(gram * z)));
  r.antisymmetry = std::abs(nabla_omega(y, z) + nabla_omega(z, y));
  r.j_exchange = std::abs(nabla_omega(j * y, z) - nabla_omega(y, j * z));
  r.degenerate_pair = std::abs(nabla_omega(j * y, y));
  r.nijenhuis_twist = (n_jxy + j * n_xy).cwiseAbs().maxCoeff();

  const GrayTensors txy = gray_tensors_at(g, p, x, y, h);
  const GrayTensors tyx = gray_tensors_at(g, p, y, x, h);
  r.k_antisymmetric = (txy.k + tyx.k).cwiseAbs().maxCoeff();
  r.torsion_a = (apply_nabla_j(nj, j * x, y) - apply_nabla_j(nj, y, j * x) + 0.5 * n_xy)
                    .cwiseAbs()
                    .maxCoeff();
  r.torsion_b =
      (apply_nabla_j(nj, x, y) - apply_nabla_j(nj, y, x) + 0.5 * (j * n_xy)).cwiseAbs().maxCoeff();
  const GrayTensors tjxy = gray_tensors_at(g, p, j * x, y, h);
  r.four_tensor_relation =
      (txy.k + tyx.k + 2.0 * (j * tjxy.s) + j * n_xy).cwiseAbs().maxCoeff();
  return r;
}

namespace {

// J-adapted g-orthonormal basis of the column span of `basis`; returns the
// n pair-leading vectors e_1..e_n (so the frame is {e_i, J e_i})
std::vector<Eigen::VectorXd> adapted_half_frame(const Eigen::MatrixXd& gram,
                                                const Eigen::MatrixXd& j,
                                                const Eigen::MatrixXd& basis, double tol = 1e-8) {
  const int span_dim = static_cast<int>(basis.cols());
  if (span_dim % 2 != 0) throw std::invalid_argument("adapted_half_frame: odd-dimensional span");
  std::vector<Eigen::VectorXd> frame;  // e_1, Je_1, e_2, Je_2, ...
  auto project_out = [&](Eigen::VectorXd v) {
    for (const Eigen::VectorXd& f : frame) v -= f.dot(gram * v) * f;
    return v;
  };
  std::vector<Eigen::VectorXd> half;
  for (int c = 0; c < span_dim && int(frame.size()) < span_dim; ++c) {
    Eigen::VectorXd e = project_out(basis.col(c));
    const double norm = std::sqrt(e.dot(gram * e));
    if (norm < tol) continue;
    e /= norm;
    Eigen::VectorXd je = project_out(j * e);
    const double jnorm = std::sqrt(je.dot(gram * je));
    if (jnorm < tol) throw std::invalid_argument("adapted_half_frame: span not J-invariant");
    je /= jnorm;
    frame.push_back(e);
    frame.push_back(je);
    half.push_back(e);
  }
  if (int(frame.size()) != span_dim)
    throw std::invalid_argument("adapted_half_frame: basis does not span");
  return half;
}

}  // namespace

double codiff_via_k_trace(const MetricField& g, const ChartPoint& p, const Eigen::VectorXd& v,
                          double h) {
  const int d = 2 * p.m;
  const Eigen::MatrixXd gram = g(p);
  const Eigen::MatrixXd j = canonical_j_matrix(p.m);
  const std::vector<Eigen::VectorXd> half =
      adapted_half_frame(gram, j, Eigen::MatrixXd::Identity(d, d));
  const std::vector<Eigen::MatrixXd> nj = nabla_j_at(g, p, h);
  double total = 0.0;
  for (const Eigen::VectorXd& e : half) {
    const Eigen::VectorXd k = apply_nabla_j(nj, e, e) + apply_nabla_j(nj, j * e, j * e);
    total += k.dot(gram * v);
  }
  return total;
}

double mean_curvature_ac(const MetricField& g, const ChartPoint& p, const Eigen::MatrixXd& tangent,
                         const Eigen::VectorXd& v, double h) {
  const Eigen::MatrixXd gram = g(p);
  const Eigen::MatrixXd j = canonical_j_matrix(p.m);
  const std::vector<Eigen::VectorXd> half = adapted_half_frame(gram, j, tangent);
  const std::vector<Eigen::MatrixXd> nj = nabla_j_at(g, p, h);
  double total = 0.0;
  for (const Eigen::VectorXd& e : half) {
    const Eigen::VectorXd k = apply_nabla_j(nj, e, e) + apply_nabla_j(nj, j * e, j * e);
    total += k.dot(gram * v);
  }
  return -total;
}

BalancedReport verify_balanced(double t, int n, int points, double h, std::uint64_t seed) {
  if (n < 1 || t <= 0.0 || points < 1)
    throw std::invalid_argument("verify_balanced: need n >= 1, t > 0, points >= 1");
  const int m = 2 * n + 1;
  const MetricField g = homogeneous_metric(n, t);
  const FormField power = wedge_power_field(omega_t_field(n, t), 2 * n);
  std::mt19937_64 rng(seed);
  BalancedReport rep;
  rep.points = points;
  for (int i = 0; i < points; ++i) {
    const ChartPoint p = random_chart_point(m, rng);
    rep.max_domega_residual =
        std::max(rep.max_domega_residual, exterior_derivative_at(power, p, h).max_abs_coeff());
    for (int a = 1; a <= 2 * m; ++a) {
      const double kt = codiff_via_k_trace(g, p, Eigen::VectorXd::Unit(2 * m, a - 1));
      rep.max_ktrace_residual = std::max(rep.max_ktrace_residual, std::abs(kt));
    }
  }
  return rep;
}

}  // namespace cpsys
