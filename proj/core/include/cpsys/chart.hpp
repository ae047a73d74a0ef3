#pragma once

#include <Eigen/Dense>
#include <random>

#include "cpsys/graded_form.hpp"

namespace cpsys {

// A point of CP^m in the affine chart where the 0-th homogeneous
// coordinate is nonzero.  Real coordinates are x_{2j-1} = Re z_j,
// x_{2j} = Im z_j, matching the standard complex structure on R^{2m}.
struct ChartPoint {
  int m = 0;
  Eigen::VectorXcd z;

  static constexpr double chart_radius = 1e3;

  ChartPoint() = default;
  explicit ChartPoint(Eigen::VectorXcd coords);

  // shift real coordinate a (1-based, in 1..2m) by h
  ChartPoint shifted(int a, double h) const;

  Eigen::VectorXd real_coords() const;
};

// matrix of the standard complex structure on R^{2m} (multiplication by i)
Eigen::MatrixXd canonical_j_matrix(int m);

// a 2-form as an antisymmetric matrix, and back
Eigen::MatrixXd omega_matrix_of(const GradedForm& form);
GradedForm form_from_omega_matrix(const Eigen::MatrixXd& w);

// Gram matrix of the metric g = omega(., J .) determined by a compatible
// 2-form given as an antisymmetric matrix
Eigen::MatrixXd gram_from_omega_matrix(const Eigen::MatrixXd& w, const Eigen::MatrixXd& j);

// Fubini-Study form, normalized so that its integral over CP^1 is 1,
// and the associated Gram matrix, in real chart coordinates
GradedForm fs_form_at(const ChartPoint& p);
Eigen::MatrixXd fs_gram_at(const ChartPoint& p);

// complex Hessian d_j dbar_k log(1+|z|^2)
Eigen::MatrixXcd fs_hessian_at(const ChartPoint& p);

// Projectors onto the vertical plane of the twistor fibration
// CP^1 -> CP^{2n+1} -> HP^n and its orthogonal complement, both in real
// chart coordinates.  Requires odd complex dimension m = 2n+1.
struct PenroseSplit {
  Eigen::MatrixXd pi0;  // vertical, rank 2
  Eigen::MatrixXd pi1;  // horizontal
};
PenroseSplit penrose_split_at(const ChartPoint& p);

// chart push of the vertical complex line at p (the fiber direction)
Eigen::VectorXcd vertical_direction_at(const ChartPoint& p);

// the homogeneous family g_t = t g_0 + g_1 on CP^{2n+1} and its
// fundamental form omega_t = t Omega_0 + Omega_1
// Fubini-Study-distributed chart point, conditioned on |z| <= max_norm so
// that finite-difference stencils stay well inside the chart.
ChartPoint random_chart_point(int m, std::mt19937_64& rng, double max_norm = 3.0);

Eigen::MatrixXd gt_gram_at(const ChartPoint& p, double t);
GradedForm omega_t_at(const ChartPoint& p, double t);
GradedForm omega0_at(const ChartPoint& p);
GradedForm omega1_at(const ChartPoint& p);

}  // namespace cpsys
