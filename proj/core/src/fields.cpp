#include "cpsys/fields.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "cpsys/complex_structure.hpp"
#include "cpsys/lefschetz.hpp"

namespace cpsys {

GradedForm dz_form(int m, int j) {
  GradedForm f = GradedForm::basis(2 * m, 2 * j - 1);
  f.add({2 * j}, Complex(0.0, 1.0));
  return f;
}

GradedForm dzbar_form(int m, int j) {
  GradedForm f = GradedForm::basis(2 * m, 2 * j - 1);
  f.add({2 * j}, Complex(0.0, -1.0));
  return f;
}

MonomialSum MonomialSum::constant(int m, Complex c) {
  return monomial(m, std::vector<int>(m, 0), std::vector<int>(m, 0), 0, c);
}

MonomialSum MonomialSum::monomial(int m, std::vector<int> alpha, std::vector<int> beta, int e,
                                  Complex c) {
  if (int(alpha.size()) != m || int(beta.size()) != m)
    throw std::invalid_argument("MonomialSum: exponent size mismatch");
  MonomialSum s(m);
  if (c != Complex(0.0)) s.terms_.push_back({std::move(alpha), std::move(beta), e, c});
  return s;
}

Complex MonomialSum::eval(const ChartPoint& p) const {
  if (p.m != m_) throw std::invalid_argument("MonomialSum::eval: dimension mismatch");
  const double r = 1.0 + p.z.squaredNorm();
  Complex total = 0.0;
  for (const Term& t : terms_) {
    Complex v = t.c * std::pow(r, -double(t.e));
    for (int j = 0; j < m_; ++j) {
      for (int k = 0; k < t.alpha[j]; ++k) v *= p.z(j);
      for (int k = 0; k < t.beta[j]; ++k) v *= std::conj(p.z(j));
    }
    total += v;
  }
  return total;
}

MonomialSum MonomialSum::d_z(int j) const {
  MonomialSum out(m_);
  const int i = j - 1;
  for (const Term& t : terms_) {
    if (t.alpha[i] > 0) {
      Term u = t;
      u.c *= double(t.alpha[i]);
      --u.alpha[i];
      out.terms_.push_back(std::move(u));
    }
    if (t.e != 0) {
      Term u = t;  // d/dz_j (1+|z|^2)^{-e} = -e zbar_j (1+|z|^2)^{-e-1}
      u.c *= -double(t.e);
      ++u.beta[i];
      ++u.e;
      out.terms_.push_back(std::move(u));
    }
  }
  return out;
}

MonomialSum MonomialSum::d_zbar(int j) const { return conjugate().d_z(j).conjugate(); }

MonomialSum MonomialSum::conjugate() const {
  MonomialSum out(m_);
  for (const Term& t : terms_) out.terms_.push_back({t.beta, t.alpha, t.e, std::conj(t.c)});
  return out;
}

MonomialSum MonomialSum::operator+(const MonomialSum& other) const {
  if (other.m_ != m_) throw std::invalid_argument("MonomialSum: dimension mismatch");
  MonomialSum out = *this;
  out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
  return out;
}

MonomialSum MonomialSum::operator*(const MonomialSum& other) const {
  if (other.m_ != m_) throw std::invalid_argument("MonomialSum: dimension mismatch");
  MonomialSum out(m_);
  for (const Term& a : terms_)
    for (const Term& b : other.terms_) {
      Term t = a;
      t.c *= b.c;
      t.e += b.e;
      for (int j = 0; j < m_; ++j) {
        t.alpha[j] += b.alpha[j];
        t.beta[j] += b.beta[j];
      }
      out.terms_.push_back(std::move(t));
    }
  return out;
}

MonomialSum MonomialSum::operator*(Complex s) const {
  MonomialSum out = *this;
  for (Term& t : out.terms_) t.c *= s;
  return out;
}

MonomialSum MonomialSum::real_part() const { return (*this + conjugate()) * Complex(0.5); }

MonomialSum MonomialSum::imag_part() const {
  return (*this + conjugate() * Complex(-1.0)) * Complex(0.0, -0.5);
}

Eigen::MatrixXcd MonomialSum::hessian(const ChartPoint& p) const {
  Eigen::MatrixXcd h(m_, m_);
  for (int j = 1; j <= m_; ++j) {
    const MonomialSum dj = d_z(j);
    for (int k = 1; k <= m_; ++k) h(j - 1, k - 1) = dj.d_zbar(k).eval(p);
  }
  return h;
}

MetricField fs_metric(int m) {
  return {m, [](const ChartPoint& p) { return fs_gram_at(p); }};
}

MetricField homogeneous_metric(int n, double t) {
  if (n < 1 || t <= 0.0) throw std::invalid_argument("homogeneous_metric: need n >= 1, t > 0");
  return {2 * n + 1, [t](const ChartPoint& p) { return gt_gram_at(p, t); }};
}

MetricField conformal_metric(MetricField base, MonomialSum factor) {
  const int m = base.m;
  return {m, [base = std::move(base), factor = std::move(factor)](const ChartPoint& p) {
            const double phi = factor.eval(p).real();
            if (phi <= 0.0) throw std::domain_error("conformal_metric: non-positive factor");
            return Eigen::MatrixXd(phi * base(p));
          }};
}

FormField constant_field(int m, GradedForm value) {
  const int deg = value.degree();
  return {m, deg, [value = std::move(value)](const ChartPoint&) { return value; }};
}

FormField fs_field(int m) {
  return {m, 2, [](const ChartPoint& p) { return fs_form_at(p); }};
}

FormField omega_t_field(int n, double t) {
  return {2 * n + 1, 2, [t](const ChartPoint& p) { return omega_t_at(p, t); }};
}

FormField omega0_field(int n) {
  return {2 * n + 1, 2, [](const ChartPoint& p) { return omega0_at(p); }};
}

FormField omega1_field(int n) {
  return {2 * n + 1, 2, [](const ChartPoint& p) { return omega1_at(p); }};
}

FormField scale_field(FormField f, Complex s) {
  return {f.m, f.degree, [f = std::move(f), s](const ChartPoint& p) { return f(p) * s; }};
}

FormField scale_field(FormField f, MonomialSum s) {
  return {f.m, f.degree,
          [f = std::move(f), s = std::move(s)](const ChartPoint& p) { return f(p) * s.eval(p); }};
}

FormField add_fields(FormField a, FormField b) {
  if (a.m != b.m) throw std::invalid_argument("add_fields: dimension mismatch");
  return {a.m, std::max(a.degree, b.degree),
          [a = std::move(a), b = std::move(b)](const ChartPoint& p) { return a(p) + b(p); }};
}

FormField wedge_fields(FormField a, FormField b) {
  if (a.m != b.m) throw std::invalid_argument("wedge_fields: dimension mismatch");
  return {a.m, a.degree + b.degree,
          [a = std::move(a), b = std::move(b)](const ChartPoint& p) { return wedge(a(p), b(p)); }};
}

FormField wedge_power_field(FormField f, int k) {
  return {f.m, k * f.degree, [f = std::move(f), k](const ChartPoint& p) { return wedge_pow(f(p), k); }};
}

FormField i_ddbar_field(MonomialSum f) {
  const int m = f.m();
  // differentiate once, symbolically; evaluation is then pointwise
  std::vector<std::vector<MonomialSum>> hess;
  hess.reserve(m);
  for (int j = 1; j <= m; ++j) {
    const MonomialSum dj = f.d_z(j);
    std::vector<MonomialSum> row;
    row.reserve(m);
    for (int k = 1; k <= m; ++k) row.push_back(dj.d_zbar(k));
    hess.push_back(std::move(row));
  }
  return {m, 2, [m, hess = std::move(hess)](const ChartPoint& p) {
            GradedForm out = GradedForm::scalar(2 * m, 0.0);
            for (int j = 1; j <= m; ++j)
              for (int k = 1; k <= m; ++k) {
                const Complex h = hess[j - 1][k - 1].eval(p);
                if (h != Complex(0.0))
                  out = out + wedge(dz_form(m, j), dzbar_form(m, k)) * (Complex(0.0, 1.0) * h);
              }
            return out.pruned();
          }};
}

GradedForm hodge_star_at(const GradedForm& a, const Eigen::MatrixXd& gram) {
  const int m = a.dim() / 2;
  const LinearComplexStructure j(canonical_j_matrix(m), gram, 1e-8);
  const HermitianFrame frame = j.build_frame();
  return hodge_star(a, frame, frame.orientation());
}

GradedForm exterior_derivative_at(const FormField& f, const ChartPoint& p, double h,
                                  bool richardson) {
  const int d = 2 * f.m;
  auto central = [&](double step) {
    GradedForm out = GradedForm::scalar(d, 0.0);
    for (int a = 1; a <= d; ++a) {
      const GradedForm diff = (f(p.shifted(a, step)) - f(p.shifted(a, -step))) * (0.5 / step);
      out = out + wedge(GradedForm::basis(d, a), diff);
    }
    return out;
  };
  if (!richardson) return central(h).pruned();
  const GradedForm coarse = central(h);
  const GradedForm fine = central(0.5 * h);
  return (fine * (4.0 / 3.0) - coarse * (1.0 / 3.0)).pruned();
}

GradedForm codifferential_at(const FormField& f, const ChartPoint& p, const MetricField& g,
                             double h) {
  FormField starred{f.m, 2 * f.m - f.degree,
                    [&f, &g](const ChartPoint& q) { return hodge_star_at(f(q), g(q)); }};
  const GradedForm d_star = exterior_derivative_at(starred, p, h);
  return hodge_star_at(d_star, g(p)) * (-1.0);
}

namespace {

// type projection of the numerical exterior derivative of a pure-type field
GradedForm d_component(const FormField& f, const ChartPoint& p, const LinearComplexStructure& j,
                       int tp, int tq, double h) {
  return pq_project(exterior_derivative_at(f, p, h), j, tp, tq);
}

}  // namespace

KahlerIdentityReport kahler_identity_check(const FormField& f, const ChartPoint& p, int type_p,
                                           int type_q, double h) {
  const int m = f.m;
  const LinearComplexStructure j_flat(canonical_j_matrix(m), Eigen::MatrixXd::Identity(2 * m, 2 * m));
  const MetricField g = fs_metric(m);

  auto lambda_at = [m](const GradedForm& a, const ChartPoint& q) {
    const LinearComplexStructure j(canonical_j_matrix(m), fs_gram_at(q), 1e-8);
    return dual_lefschetz(a, j);
  };

  // [Lambda, d] F = Lambda(dF) - d(Lambda F)
  const GradedForm lambda_df = lambda_at(exterior_derivative_at(f, p, h), p);
  FormField lambda_f{m, f.degree - 2,
                     [&f, &lambda_at](const ChartPoint& q) { return lambda_at(f(q), q); }};
  const GradedForm lhs = (lambda_df - exterior_derivative_at(lambda_f, p, h)).pruned();

  // delta^c = i (del^* - delbar^*), del^* = -star delbar star, delbar^* = -star del star
  FormField starred{m, 2 * m - f.degree,
                    [&f, &g](const ChartPoint& q) { return hodge_star_at(f(q), g(q)); }};
  const int sp = m - type_q, sq = m - type_p;  // type of star F
  const GradedForm ds_bar = d_component(starred, p, j_flat, sp, sq + 1, h);
  const GradedForm ds_hol = d_component(starred, p, j_flat, sp + 1, sq, h);
  const GradedForm del_star = hodge_star_at(ds_bar, g(p)) * (-1.0);
  const GradedForm delbar_star = hodge_star_at(ds_hol, g(p)) * (-1.0);
  const GradedForm rhs = ((del_star - delbar_star) * Complex(0.0, -1.0)).pruned();

  KahlerIdentityReport rep{lhs, rhs, (lhs - rhs).max_abs_coeff()};
  return rep;
}

}  // namespace cpsys
