#pragma once

#include <cstdint>
#include <optional>

#include "cpsys/graded_form.hpp"

namespace cpsys {

/// Orthonormal basis e_1, Je_1, ..., e_n, Je_n of R^{2n}; columns of
/// `vectors` are the frame vectors in ambient coordinates.
struct HermitianFrame {
  Eigen::MatrixXd vectors;

  int dim() const { return int(vectors.rows()); }
  /// Pullback matrix: chart-coefficient forms -> frame-coefficient forms.
  const Eigen::MatrixXd& to_frame() const { return vectors; }
  Eigen::MatrixXd from_frame() const { return vectors.inverse(); }
  /// +1 if the frame is positively oriented in ambient coordinates.
  int orientation() const { return vectors.determinant() > 0 ? +1 : -1; }
};

/// Linear complex structure J on R^{2n} compatible with a positive definite
/// Gram matrix: J^2 = -I, J^T G J = G.
class LinearComplexStructure {
 public:
  LinearComplexStructure(Eigen::MatrixXd j, Eigen::MatrixXd gram, double tol = 1e-12);

  /// The standard structure on R^{2n}: J e_{2i-1} = e_{2i}, G = I.
  static LinearComplexStructure standard(int dim);

  int dim() const { return int(j_.rows()); }
  int n() const { return dim() / 2; }
  const Eigen::MatrixXd& matrix() const { return j_; }
  const Eigen::MatrixXd& gram() const { return gram_; }

  /// omega(X, Y) = g(JX, Y) as a 2-form in ambient coordinates.
  GradedForm fundamental_form() const;

  /// Orthonormal J-adapted frame built by Gram-Schmidt; deterministic for a
  /// fixed seed, restarted with a fresh pivot when degeneracy is detected.
  HermitianFrame build_frame(std::uint64_t seed = 0) const;

 private:
  Eigen::MatrixXd j_;
  Eigen::MatrixXd gram_;
};

/// Inner product <a, b> induced by the frame (sesquilinear, conjugate in b).
Complex inner(const GradedForm& a, const GradedForm& b, const HermitianFrame& frame);

/// Hodge star with respect to the frame's metric and orientation; acts on
/// homogeneous forms, extended complex-linearly.
GradedForm hodge_star(const GradedForm& a, const HermitianFrame& frame, int orientation = +1);

/// Projection onto type (p, q) with respect to J (complexified action on
/// each covector slot).
GradedForm pq_project(const GradedForm& a, const LinearComplexStructure& j, int p, int q);

}  // namespace cpsys
