#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cpsys/fields.hpp"

namespace cpsys {

// Christoffel symbols of g at p by central differences of the Gram matrix:
// result[a](c, b) = Gamma^c_{ab}, indices 0-based over real chart coordinates.
std::vector<Eigen::MatrixXd> christoffels_at(const MetricField& g, const ChartPoint& p,
                                             double h = 1e-3);

// covariant derivative of the standard complex structure:
// result[a] = (nabla_a J) as a matrix.
std::vector<Eigen::MatrixXd> nabla_j_at(const MetricField& g, const ChartPoint& p, double h = 1e-3);

// the Gray tensors evaluated on a pair of tangent vectors
struct GrayTensors {
  Eigen::VectorXd nijenhuis;  // N_J(X, Y)
  Eigen::VectorXd k;          // K(X, Y) = (nabla_X J)Y + (nabla_JX J)JY
  Eigen::VectorXd h;          // H(X, Y) = (nabla_X J)Y - (nabla_JX J)JY
  Eigen::VectorXd s;          // S(X, Y) = (nabla_X J)Y - (nabla_Y J)X
};
GrayTensors gray_tensors_at(const MetricField& g, const ChartPoint& p, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, double h = 1e-3);

// residuals of the standard almost-Hermitian identities at a point
struct IdentityReport {
  double nabla_omega_vs_j;    // (nabla_X omega)(Y,Z) - g((nabla_X J)Y, Z)
  double antisymmetry;        // (nabla_X omega)(Y,Z) + (nabla_X omega)(Z,Y)
  double j_exchange;          // (nabla_X omega)(JY,Z) - (nabla_X omega)(Y,JZ)
  double degenerate_pair;     // (nabla_X omega)(JY,Y)
  double nijenhuis_twist;     // N(JX,Y) + J N(X,Y)
  double k_antisymmetric;     // K(X,Y) + K(Y,X)
  double torsion_a;           // (nabla_JX J)Y - (nabla_Y J)JX + N(X,Y)/2
  double torsion_b;           // (nabla_X J)Y - (nabla_Y J)X + J N(X,Y)/2
  double four_tensor_relation;  // K(X,Y)+K(Y,X)+2 J S(JX,Y)+J N(X,Y)

  // the unconditional identities: all but k_antisymmetric / torsion_a /
  // torsion_b, which require K antisymmetric (e.g. a Kaehler metric)
  double max_basic() const;
  double max_all() const;
};
IdentityReport check_basic_identities_at(const MetricField& g, const ChartPoint& p,
                                         const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                         const Eigen::VectorXd& z, double h = 1e-3);

// delta omega(v) computed as the K-trace over a J-adapted orthonormal frame
double codiff_via_k_trace(const MetricField& g, const ChartPoint& p, const Eigen::VectorXd& v,
                          double h = 1e-3);

// mean-curvature pairing -sum_j g(K(e_j, e_j), v) over a J-adapted frame of
// the given J-invariant tangent span (columns of `tangent`); v is a normal
// direction.  Zero for all normals characterizes minimality.
double mean_curvature_ac(const MetricField& g, const ChartPoint& p, const Eigen::MatrixXd& tangent,
                         const Eigen::VectorXd& v, double h = 1e-3);

// balancedness of g_t on CP^{2n+1}: max finite-difference residual of
// d(omega_t^{2n}) and max K-trace residual over random sample points
struct BalancedReport {
  double max_domega_residual = 0.0;
  double max_ktrace_residual = 0.0;
  int points = 0;
};
BalancedReport verify_balanced(double t, int n, int points, double h = 1e-4,
                               std::uint64_t seed = 0);

}  // namespace cpsys
