#include "cpsys/systole.hpp"

#include <cmath>
#include <stdexcept>

namespace cpsys {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Gauss-Legendre nodes/weights on (-1, 1) by Newton iteration
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

}  // namespace

double sys2_nor(double t, int n) {
  if (t <= 0.0 || n < 1) throw std::invalid_argument("sys2_nor: need t > 0, n >= 1");
  const double c = std::pow(1.0 / factorial(2 * n + 1), 1.0 / (2 * n + 1));
  return t <= 1.0 ? c * std::pow(t, 2.0 * n / (2 * n + 1)) : c * std::pow(t, -1.0 / (2 * n + 1));
}

double sys4n_nor(double t, int n) {
  if (t <= 0.0 || n < 1) throw std::invalid_argument("sys4n_nor: need t > 0, n >= 1");
  const double c = std::pow(1.0 / factorial(2 * n + 1), 1.0 / (2 * n + 1));
  return c * (2.0 * n * t + 1.0) / std::pow(t, 2.0 * n / (2 * n + 1));
}

CalibratedAreas calibrated_areas(double t, int n) {
  if (t <= 0.0 || n < 1) throw std::invalid_argument("calibrated_areas: need t > 0, n >= 1");
  CalibratedAreas a;
  a.fiber = t;
  a.transversal = 1.0;
  a.hyperplane = (2.0 * n * t + 1.0) / factorial(2 * n + 1);
  a.volume = t / factorial(2 * n + 1);
  return a;
}

SystoleReport systole_report(double t, int n) {
  const CalibratedAreas a = calibrated_areas(t, n);
  SystoleReport r;
  r.n = n;
  r.t = t;
  r.sys2_nor = sys2_nor(t, n);
  r.sys4n_nor = sys4n_nor(t, n);
  r.vol_gt = a.volume;
  r.area_fiber = a.fiber;
  r.area_transversal = a.transversal;
  r.area_hyperplane = a.hyperplane;
  return r;
}

std::vector<double> log_grid(double t_min, double t_max, int steps) {
  if (t_min <= 0.0 || t_max <= t_min || steps < 2) throw std::invalid_argument("log_grid: bad grid");
  std::vector<double> grid(steps);
  const double a = std::log(t_min), b = std::log(t_max);
  for (int i = 0; i < steps; ++i) grid[i] = std::exp(a + (b - a) * i / (steps - 1));
  return grid;
}

std::vector<SystoleReport> systolic_freedom_scan(int n, const std::vector<double>& t_grid) {
  std::vector<SystoleReport> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(systole_report(t, n));
  return out;
}

Eigen::VectorXcd RationalCurve::homogeneous_at(Complex s) const {
  Eigen::VectorXcd p = Eigen::VectorXcd::Zero(coeffs.rows());
  Complex power = 1.0;
  for (int j = 0; j < coeffs.cols(); ++j) {
    p += power * coeffs.col(j);
    power *= s;
  }
  return p;
}

Eigen::VectorXcd RationalCurve::derivative_at(Complex s) const {
  Eigen::VectorXcd p = Eigen::VectorXcd::Zero(coeffs.rows());
  Complex power = 1.0;
  for (int j = 1; j < coeffs.cols(); ++j) {
    p += double(j) * power * coeffs.col(j);
    power *= s;
  }
  return p;
}

RationalCurve RationalCurve::reparameterized(Complex a, Complex b, Complex c, Complex d) const {
  // P((a s + b)/(c s + d)) (c s + d)^deg, expanded by convolution
  const int deg = max_degree();
  const int rows = static_cast<int>(coeffs.rows());
  // powers of (a s + b) and (c s + d)
  std::vector<Eigen::VectorXcd> num(deg + 1), den(deg + 1);
  num[0] = den[0] = Eigen::VectorXcd::Ones(1);
  for (int k = 1; k <= deg; ++k) {
    num[k] = Eigen::VectorXcd::Zero(k + 1);
    den[k] = Eigen::VectorXcd::Zero(k + 1);
    for (int j = 0; j < k; ++j) {
      num[k](j) += b * num[k - 1](j);
      num[k](j + 1) += a * num[k - 1](j);
      den[k](j) += d * den[k - 1](j);
      den[k](j + 1) += c * den[k - 1](j);
    }
  }
  RationalCurve out;
  out.coeffs = Eigen::MatrixXcd::Zero(rows, deg + 1);
  for (int k = 0; k <= deg; ++k) {
    // coeffs.col(k) * (a s + b)^k (c s + d)^{deg - k}
    Eigen::VectorXcd poly = Eigen::VectorXcd::Zero(deg + 1);
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= deg - k; ++j) poly(i + j) += num[k](i) * den[deg - k](j);
    out.coeffs += coeffs.col(k) * poly.transpose();
  }
  return out;
}

namespace {

// the Laplacian density rho_{s sbar} of rho = log |P(s)|^2
double fs_pullback_density(const RationalCurve& curve, Complex s) {
  const Eigen::VectorXcd p = curve.homogeneous_at(s);
  const Eigen::VectorXcd dp = curve.derivative_at(s);
  const double norm2 = p.squaredNorm();
  const Complex mixed = p.dot(dp);  // sum conj(p_k) dp_k
  return dp.squaredNorm() / norm2 - std::norm(mixed) / (norm2 * norm2);
}

// (1/pi) integral over C of rho_{s sbar}, compactified by s = tan(u) e^{i v}
double crofton_quadrature(const RationalCurve& curve, int radial, int angular) {
  std::vector<double> nodes, weights;
  gauss_legendre(radial, nodes, weights);
  double total = 0.0;
  for (int i = 0; i < radial; ++i) {
    const double u = 0.25 * M_PI * (nodes[i] + 1.0);
    const double wu = 0.25 * M_PI * weights[i];
    const double r = std::tan(u);
    const double jac = r * (1.0 + r * r);  // r dr = tan sec^2 du
    double ring = 0.0;
    for (int j = 0; j < angular; ++j) {
      const double v = 2.0 * M_PI * j / angular;
      ring += fs_pullback_density(curve, r * Complex(std::cos(v), std::sin(v)));
    }
    total += wu * jac * ring * (2.0 * M_PI / angular);
  }
  return total / M_PI;
}

}  // namespace

CroftonResult crofton_degree(const RationalCurve& curve) {
  const double coarse = crofton_quadrature(curve, 80, 128);
  const double fine = crofton_quadrature(curve, 120, 192);
  const int degree = static_cast<int>(std::lround(fine));
  const double residual = std::max(std::abs(fine - degree), std::abs(fine - coarse));
  if (std::abs(fine - degree) > 0.1)
    throw std::runtime_error("crofton_degree: quadrature did not settle near an integer");
  return {degree, residual};
}

namespace {

// push a homogeneous tangent vector dH at H to the affine chart with pivot
// component `pivot`
Eigen::VectorXcd projective_push(const Eigen::VectorXcd& h, const Eigen::VectorXcd& dh, int pivot) {
  const int m = static_cast<int>(h.size()) - 1;
  Eigen::VectorXcd out(m);
  int r = 0;
  for (int k = 0; k <= m; ++k) {
    if (k == pivot) continue;
    out(r++) = (dh(k) * h(pivot) - h(k) * dh(pivot)) / (h(pivot) * h(pivot));
  }
  return out;
}

Eigen::VectorXd realify_vec(const Eigen::VectorXcd& v) {
  Eigen::VectorXd x(2 * v.size());
  for (int j = 0; j < v.size(); ++j) {
    x(2 * j) = v(j).real();
    x(2 * j + 1) = v(j).imag();
  }
  return x;
}

}  // namespace

WirtingerReport wirtinger_check(const SurfacePatch& surface, int nodes) {
  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(nodes, gl_nodes, gl_weights);
  const double su = 0.5 * (surface.u1 - surface.u0), sv = 0.5 * (surface.v1 - surface.v0);
  const double cu = 0.5 * (surface.u1 + surface.u0), cv = 0.5 * (surface.v1 + surface.v0);
  WirtingerReport rep;
  for (int i = 0; i < nodes; ++i) {
    const double u = cu + su * gl_nodes[i];
    for (int j = 0; j < nodes; ++j) {
      const double v = cv + sv * gl_nodes[j];
      const double w = su * sv * gl_weights[i] * gl_weights[j];

      const Eigen::VectorXcd h = surface.homogeneous(u, v);
      const double hu = 1e-6 * std::max(1.0, std::abs(u)), hv = 1e-6 * std::max(1.0, std::abs(v));
      const Eigen::VectorXcd dhu =
          (surface.homogeneous(u + hu, v) - surface.homogeneous(u - hu, v)) / (2.0 * hu);
      const Eigen::VectorXcd dhv =
          (surface.homogeneous(u, v + hv) - surface.homogeneous(u, v - hv)) / (2.0 * hv);

      int pivot = 0;
      h.cwiseAbs().maxCoeff(&pivot);
      // chart centered at the pivot coordinate; Fubini-Study quantities are
      // invariant under this coordinate permutation
      Eigen::VectorXcd z(surface.m);
      int r = 0;
      for (int k = 0; k <= surface.m; ++k)
        if (k != pivot) z(r++) = h(k) / h(pivot);
      const ChartPoint p{z};
      const Eigen::VectorXd xu = realify_vec(projective_push(h, dhu, pivot));
      const Eigen::VectorXd xv = realify_vec(projective_push(h, dhv, pivot));

      const Eigen::MatrixXd gram = fs_gram_at(p);
      const double e = xu.dot(gram * xu), f2 = xu.dot(gram * xv), g2 = xv.dot(gram * xv);
      rep.area += w * std::sqrt(std::max(0.0, e * g2 - f2 * f2));
      const Eigen::MatrixXd wmat = omega_matrix_of(fs_form_at(p));
      rep.omega_integral += w * xu.dot(wmat * xv);
    }
  }
  return rep;
}

SurfacePatch curve_patch(const RationalCurve& curve) {
  SurfacePatch patch;
  patch.m = curve.m();
  patch.u0 = 0.0;
  patch.u1 = 0.5 * M_PI;
  patch.v0 = 0.0;
  patch.v1 = 2.0 * M_PI;
  patch.homogeneous = [curve](double u, double v) {
    const double r = std::tan(u);
    return curve.homogeneous_at(r * Complex(std::cos(v), std::sin(v)));
  };
  return patch;
}

}  // namespace cpsys
