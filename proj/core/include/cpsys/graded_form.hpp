#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace cpsys {

using Complex = std::complex<double>;

/// Strictly increasing tuple of 1-based covector indices.
using IndexTuple = std::vector<int>;

/// Sparse element of the complexified exterior algebra of R^{2n}.
///
/// Coefficients are keyed by strictly increasing index tuples; the empty
/// tuple carries the scalar part. Mixed-degree elements are allowed, with
/// degree_part() extracting homogeneous pieces.
class GradedForm {
 public:
  GradedForm() : dim_(0) {}
  explicit GradedForm(int dim) : dim_(dim) {
    if (dim <= 0 || dim % 2 != 0) throw std::invalid_argument("GradedForm: dim must be positive even");
  }

  static GradedForm scalar(int dim, Complex c);
  /// Basis covector e^i (1-based).
  static GradedForm basis(int dim, int i);
  /// Basis monomial e^{i1} ^ ... ^ e^{ik}; indices need not be sorted, the
  /// sign of the sorting permutation is absorbed into the coefficient.
  static GradedForm monomial(int dim, const IndexTuple& idx, Complex c = 1.0);
  /// The standard fundamental 2-form sum_i e^{2i-1} ^ e^{2i}.
  static GradedForm standard_omega(int dim);
  /// e^1 ^ ... ^ e^{2n}.
  static GradedForm volume(int dim);

  int dim() const { return dim_; }
  bool empty() const { return terms_.empty(); }
  const std::map<IndexTuple, Complex>& terms() const { return terms_; }

  Complex coeff(const IndexTuple& idx) const;
  void set(const IndexTuple& idx, Complex c);
  void add(const IndexTuple& idx, Complex c);

  /// -1 for non-homogeneous (mixed-degree) elements, k for homogeneous of
  /// degree k; the zero form reports degree 0.
  int degree() const;
  bool is_homogeneous() const { return degree() >= 0; }
  GradedForm degree_part(int k) const;
  int max_degree() const;

  GradedForm operator+(const GradedForm& o) const;
  GradedForm operator-(const GradedForm& o) const;
  GradedForm operator*(Complex c) const;
  GradedForm& operator+=(const GradedForm& o);
  GradedForm conjugate() const;

  /// Drop terms with |coeff| <= eps.
  GradedForm pruned(double eps = 1e-14) const;
  double max_abs_coeff() const;
  /// Euclidean l2 norm of the coefficient vector (= norm in an orthonormal
  /// frame when the form is already expressed in one).
  double coeff_norm() const;

 private:
  void check_tuple(const IndexTuple& idx) const;

  int dim_;
  std::map<IndexTuple, Complex> terms_;
};

GradedForm operator*(Complex c, const GradedForm& a);

/// Exterior product. Throws on dimension mismatch.
GradedForm wedge(const GradedForm& a, const GradedForm& b);
GradedForm wedge_pow(const GradedForm& a, int k);

/// Interior product with the basis vector dual to e^i, in an orthonormal
/// frame: contracts the i-th slot with the usual alternating sign.
GradedForm interior_basis(const GradedForm& a, int i);

/// Pullback along the linear map represented by `m` (columns = images of
/// basis vectors): (m^* a)_I = sum_J a_J det(m[J, I]).
GradedForm pullback(const GradedForm& a, const Eigen::MatrixXd& m);

/// Hermitian inner product of coefficient vectors: <a, b> = sum a_I conj(b_I).
/// This is the inner product induced by declaring the ambient basis
/// orthonormal; callers holding forms in chart coordinates should pull back
/// to an orthonormal frame first.
Complex euclidean_inner(const GradedForm& a, const GradedForm& b);

/// Hodge star in an orthonormal, positively oriented basis, extended
/// complex-linearly: star(e^I) = sign(I, I^c) e^{I^c}. `orientation` flips
/// the sign of the volume form.
GradedForm euclidean_star(const GradedForm& a, int orientation = +1);

/// Sign of the permutation sorting `idx`; 0 if `idx` has a repeat.
int sort_sign(IndexTuple& idx);

}  // namespace cpsys
