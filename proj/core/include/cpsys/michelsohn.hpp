#pragma once

#include <Eigen/Dense>

#include "cpsys/graded_form.hpp"

namespace cpsys {

/// n x n complex Hermitian matrix representing a real (1,1)- or
/// (n-1,n-1)-form in the standard complex coordinates z_j = x_{2j-1} + i x_{2j}.
struct HermitianMatrixRep {
  Eigen::MatrixXcd entries;

  int n() const { return int(entries.rows()); }
  bool is_hermitian(double tol = 1e-12) const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
  bool is_positive(double tol = 0.0) const;
};

/// (i/2) sum A_jk dz^j ∧ dz̄^k; the identity matrix maps to the standard
/// fundamental form sum dx_j ∧ dy_j.
GradedForm form_from_hermitian_11(const HermitianMatrixRep& a);

/// Carrier for (n-1,n-1)-forms: B -> sum B_jk V_jk over the conjugation-
/// symmetric monomial basis V_jk built from dz^{without j} ∧ dz̄^{without k}.
GradedForm form_from_hermitian_n1n1(const HermitianMatrixRep& b);

/// Inverse carrier maps; least-squares extraction with residual check.
HermitianMatrixRep hermitian_from_form_11(const GradedForm& f, int n, double tol = 1e-9);
HermitianMatrixRep hermitian_from_form_n1n1(const GradedForm& f, int n, double tol = 1e-9);

/// Matrix-level (n-1)-st wedge power: Phi(A) represents form(A)^{n-1}.
/// Proportional to the adjugate; the constant is calibrated once per n
/// against the wedge-expansion oracle.
HermitianMatrixRep michelsohn_power(const HermitianMatrixRep& a);

/// Pointwise Michelsohn root: the unique positive Hermitian H with
/// michelsohn_power(H) = sigma. Throws std::domain_error on non-positive
/// input or n < 2.
HermitianMatrixRep michelsohn_root(const HermitianMatrixRep& sigma);

/// Calibrated proportionality constant in Phi(A) = c_n adj(A).
double michelsohn_constant(int n);

}  // namespace cpsys
