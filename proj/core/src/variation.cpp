#include "cpsys/variation.hpp"

#include <cmath>
#include <stdexcept>

#include "cpsys/michelsohn.hpp"

namespace cpsys {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// real coordinates of a Hermitian matrix: diagonal, then (re, im) per j < k
Eigen::VectorXd pack_hermitian(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXd v(n * n);
  int r = 0;
  for (int j = 0; j < n; ++j) v(r++) = a(j, j).real();
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      v(r++) = a(j, k).real();
      v(r++) = a(j, k).imag();
    }
  return v;
}

Eigen::MatrixXcd unpack_hermitian(const Eigen::VectorXd& v, int n) {
  Eigen::MatrixXcd a(n, n);
  int r = 0;
  for (int j = 0; j < n; ++j) a(j, j) = v(r++);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      a(j, k) = Complex(v(r), v(r + 1));
      a(k, j) = std::conj(a(j, k));
      r += 2;
    }
  return a;
}

// the fixed hyperplane CP^{n-1} = {Z_n = 0} used for all boundary integrals
Eigen::VectorXcd hyperplane_normal(int n) { return Eigen::VectorXcd::Unit(n + 1, n); }

McEstimate integrate_top(const FormField& f, const McConfig& mc) {
  return mc_integrate_form(f, mc.samples, mc.seed, mc.workers);
}

McEstimate integrate_hyper(const FormField& f, const McConfig& mc) {
  return mc_integrate_form_hyperplane(f, hyperplane_normal(f.m), mc.samples, mc.seed, mc.workers);
}

}  // namespace

GradedForm psi_at(const GradedForm& sigma, int n) {
  const HermitianMatrixRep rep = hermitian_from_form_n1n1(sigma, n);
  return form_from_hermitian_11(michelsohn_root(rep));
}

McEstimate f_eval(const FormField& sigma, const McConfig& mc) {
  const int n = sigma.m;
  if (n < 3) throw std::invalid_argument("f_eval: need n >= 3");
  if (sigma.degree != 2 * (n - 1)) throw std::invalid_argument("f_eval: degree mismatch");
  FormField body{n, 2 * n,
                 [sigma, n](const ChartPoint& p) {
                   const GradedForm s = sigma(p);
                   return wedge(s, psi_at(s, n));
                 }};
  const McEstimate boundary = integrate_hyper(sigma, mc);
  const McEstimate bulk = integrate_top(body, mc);
  if (bulk.value <= 0.0) throw std::domain_error("f_eval: non-positive volume integral");
  const double expo = double(n - 1) / n;
  McEstimate out;
  out.value = boundary.value / std::pow(bulk.value, expo);
  // first-order error propagation through the quotient
  const double rel = std::sqrt(std::pow(boundary.std_error / boundary.value, 2) +
                               std::pow(expo * bulk.std_error / bulk.value, 2));
  out.std_error = std::abs(out.value) * rel;
  out.samples = mc.samples;
  out.seed = mc.seed;
  return out;
}

McEstimate sys_nor_balanced(const FormField& omega, const McConfig& mc) {
  const int n = omega.m;
  if (omega.degree != 2) throw std::invalid_argument("sys_nor_balanced: omega must be a 2-form");
  const McEstimate boundary = integrate_hyper(wedge_power_field(omega, n - 1), mc);
  const McEstimate bulk = integrate_top(wedge_power_field(omega, n), mc);
  if (bulk.value <= 0.0) throw std::domain_error("sys_nor_balanced: non-positive volume");
  const double expo = double(n - 1) / n;
  const double cons = std::pow(factorial(n), expo) / factorial(n - 1);
  McEstimate out;
  out.value = cons * boundary.value / std::pow(bulk.value, expo);
  const double rel = std::sqrt(std::pow(boundary.std_error / boundary.value, 2) +
                               std::pow(expo * bulk.std_error / bulk.value, 2));
  out.std_error = std::abs(out.value) * rel;
  out.samples = mc.samples;
  out.seed = mc.seed;
  return out;
}

VariationDirection variation_direction(const FormField& omega, const FormField& mu) {
  const int n = omega.m;
  if (n < 3) throw std::invalid_argument("variation_direction: need n >= 3");
  FormField eta{n, 2, [omega, mu, n](const ChartPoint& p) {
                  const GradedForm om = omega(p);
                  const GradedForm om_pow = wedge_pow(om, n - 2);
                  // assemble the real n^2 x n^2 system (n-1) eta ^ om^{n-2} = mu
                  const int dim = n * n;
                  Eigen::MatrixXd sys(dim, dim);
                  for (int i = 0; i < dim; ++i) {
                    const Eigen::MatrixXcd basis =
                        unpack_hermitian(Eigen::VectorXd::Unit(dim, i), n);
                    const GradedForm image =
                        wedge(form_from_hermitian_11(HermitianMatrixRep{basis}), om_pow) *
                        double(n - 1);
                    sys.col(i) = pack_hermitian(hermitian_from_form_n1n1(image, n).entries);
                  }
                  const Eigen::VectorXd rhs =
                      pack_hermitian(hermitian_from_form_n1n1(mu(p), n).entries);
                  const Eigen::VectorXd sol = sys.colPivHouseholderQr().solve(rhs);
                  if ((sys * sol - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm()))
                    throw std::runtime_error("variation_direction: pointwise solve failed");
                  return form_from_hermitian_11(HermitianMatrixRep{unpack_hermitian(sol, n)});
                }};
  return {mu, std::move(eta)};
}

McEstimate first_variation(const FormField& omega, const FormField& mu, const McConfig& mc) {
  const int n = omega.m;
  const McEstimate a = integrate_hyper(mu, mc);
  const McEstimate b = integrate_hyper(wedge_power_field(omega, n - 1), mc);
  const McEstimate c = integrate_top(wedge_fields(mu, omega), mc);
  McEstimate out;
  out.value = a.value - b.value * c.value;
  out.std_error = std::sqrt(std::pow(a.std_error, 2) + std::pow(b.value * c.std_error, 2) +
                            std::pow(c.value * b.std_error, 2));
  out.samples = mc.samples;
  out.seed = mc.seed;
  return out;
}

McEstimate second_variation(const FormField& omega, const VariationDirection& dir,
                            const McConfig& mc) {
  const int n = omega.m;
  const McEstimate a = integrate_hyper(dir.mu, mc);                              // int_{CP^{n-1}} mu
  const McEstimate b = integrate_hyper(wedge_power_field(omega, n - 1), mc);     // int omega^{n-1}
  const McEstimate c = integrate_top(wedge_fields(dir.mu, omega), mc);           // int mu ^ omega
  const McEstimate d = integrate_top(wedge_fields(dir.mu, dir.eta), mc);         // int mu ^ eta
  McEstimate out;
  out.value = 2.0 * b.value * c.value * c.value - 2.0 * a.value * c.value +
              b.value * (c.value * c.value / double(n - 1) - d.value);
  // dominant first-order error terms
  const double dc = 4.0 * b.value * c.value - 2.0 * a.value + 2.0 * b.value * c.value / (n - 1);
  const double db = 2.0 * c.value * c.value + c.value * c.value / (n - 1) - d.value;
  out.std_error = std::sqrt(std::pow(2.0 * c.value * a.std_error, 2) +
                            std::pow(db * b.std_error, 2) + std::pow(dc * c.std_error, 2) +
                            std::pow(b.value * d.std_error, 2));
  out.samples = mc.samples;
  out.seed = mc.seed;
  return out;
}

McEstimate hessian_kahler(const FormField& omega, const FormField& eta, const McConfig& mc) {
  const int n = omega.m;
  const McEstimate a = integrate_top(wedge_fields(eta, wedge_power_field(omega, n - 1)), mc);
  const McEstimate b =
      integrate_top(wedge_fields(wedge_fields(eta, eta), wedge_power_field(omega, n - 2)), mc);
  McEstimate out;
  out.value = double(n - 1) * (a.value * a.value - b.value);
  out.std_error = double(n - 1) * std::sqrt(std::pow(2.0 * a.value * a.std_error, 2) +
                                            std::pow(b.std_error, 2));
  out.samples = mc.samples;
  out.seed = mc.seed;
  return out;
}

namespace {

double f_along(const FormField& omega, const FormField& mu, double s, const McConfig& mc) {
  const int n = omega.m;
  FormField sigma = add_fields(wedge_power_field(omega, n - 1), scale_field(mu, Complex(s)));
  return f_eval(sigma, mc).value;
}

}  // namespace

double first_variation_fd(const FormField& omega, const FormField& mu, double h,
                          const McConfig& mc) {
  return (f_along(omega, mu, h, mc) - f_along(omega, mu, -h, mc)) / (2.0 * h);
}

double second_variation_fd(const FormField& omega, const FormField& mu, double h,
                           const McConfig& mc) {
  return (f_along(omega, mu, h, mc) - 2.0 * f_along(omega, mu, 0.0, mc) +
          f_along(omega, mu, -h, mc)) /
         (h * h);
}

}  // namespace cpsys
