#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "cpsys/chart.hpp"
#include "cpsys/graded_form.hpp"

namespace cpsys {

// the 1-forms dz_j = dx_j + i dy_j and its conjugate, 1-based j
GradedForm dz_form(int m, int j);
GradedForm dzbar_form(int m, int j);

// Finite sums of terms c * z^alpha zbar^beta (1+|z|^2)^{-e}.  The class is
// closed under holomorphic and antiholomorphic partials, products and
// conjugation, so derived quantities keep analytic coefficients.
class MonomialSum {
 public:
  struct Term {
    std::vector<int> alpha, beta;
    int e = 0;
    Complex c;
  };

  explicit MonomialSum(int m) : m_(m) {}
  static MonomialSum constant(int m, Complex c);
  static MonomialSum monomial(int m, std::vector<int> alpha, std::vector<int> beta, int e, Complex c);

  int m() const { return m_; }
  const std::vector<Term>& terms() const { return terms_; }

  Complex eval(const ChartPoint& p) const;
  MonomialSum d_z(int j) const;     // d/dz_j, 1-based
  MonomialSum d_zbar(int j) const;  // d/dzbar_j
  MonomialSum conjugate() const;

  MonomialSum operator+(const MonomialSum& other) const;
  MonomialSum operator*(const MonomialSum& other) const;
  MonomialSum operator*(Complex s) const;

  // Re/Im parts as new sums (f + conj f)/2 etc.
  MonomialSum real_part() const;
  MonomialSum imag_part() const;

  // the complex Hessian d_j dbar_k f at a point
  Eigen::MatrixXcd hessian(const ChartPoint& p) const;

 private:
  int m_;
  std::vector<Term> terms_;
};

// a smooth form-valued field on the chart
struct FormField {
  int m = 0;
  int degree = 0;
  std::function<GradedForm(const ChartPoint&)> eval;

  GradedForm operator()(const ChartPoint& p) const { return eval(p); }
};

// a smooth metric field: point -> SPD Gram matrix in real chart coordinates
struct MetricField {
  int m = 0;
  std::function<Eigen::MatrixXd(const ChartPoint&)> gram;

  Eigen::MatrixXd operator()(const ChartPoint& p) const { return gram(p); }
};

MetricField fs_metric(int m);
MetricField homogeneous_metric(int n, double t);  // g_t on CP^{2n+1}
MetricField conformal_metric(MetricField base, MonomialSum factor);

FormField constant_field(int m, GradedForm value);
FormField fs_field(int m);                   // Omega
FormField omega_t_field(int n, double t);    // on CP^{2n+1}
FormField omega0_field(int n);
FormField omega1_field(int n);
FormField scale_field(FormField f, Complex s);
FormField scale_field(FormField f, MonomialSum s);
FormField add_fields(FormField a, FormField b);
FormField wedge_fields(FormField a, FormField b);
FormField wedge_power_field(FormField f, int k);
FormField i_ddbar_field(MonomialSum f);  // the (1,1)-form i ddbar f

// pointwise Hodge star for a J-compatible SPD Gram matrix
GradedForm hodge_star_at(const GradedForm& a, const Eigen::MatrixXd& gram);

// central-difference exterior derivative, optionally Richardson-extrapolated
GradedForm exterior_derivative_at(const FormField& f, const ChartPoint& p, double h = 1e-4,
                                  bool richardson = false);

// codifferential delta = -(star d star) for the given metric field
GradedForm codifferential_at(const FormField& f, const ChartPoint& p, const MetricField& g,
                             double h = 1e-4);

// residual of the Kaehler identity [Lambda, d] = -delta^c for a pure-type
// field on (CP^m, g_FS); returns (lhs, rhs) evaluated at p
struct KahlerIdentityReport {
  GradedForm lhs;  // (Lambda d - d Lambda) F
  GradedForm rhs;  // -delta^c F
  double residual;
};
KahlerIdentityReport kahler_identity_check(const FormField& f, const ChartPoint& p, int type_p,
                                           int type_q, double h = 1e-3);

}  // namespace cpsys
