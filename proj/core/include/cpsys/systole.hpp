#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "cpsys/fields.hpp"

namespace cpsys {

// normalized systole curves of the homogeneous family g_t on CP^{2n+1}
double sys2_nor(double t, int n);
double sys4n_nor(double t, int n);

// closed-form calibrated quantities under g_t
struct CalibratedAreas {
  double fiber;        // t
  double transversal;  // 1
  double hyperplane;   // (2nt+1)/(2n+1)!
  double volume;       // t/(2n+1)!
};
CalibratedAreas calibrated_areas(double t, int n);

struct SystoleReport {
  int n = 0;
  double t = 0.0;
  double sys2_nor = 0.0;
  double sys4n_nor = 0.0;
  double vol_gt = 0.0;
  double area_fiber = 0.0;
  double area_transversal = 0.0;
  double area_hyperplane = 0.0;
};
SystoleReport systole_report(double t, int n);

std::vector<SystoleReport> systolic_freedom_scan(int n, const std::vector<double>& t_grid);
std::vector<double> log_grid(double t_min, double t_max, int steps);

// rational curve CP^1 -> CP^m in homogeneous coordinates; row k of `coeffs`
// holds the coefficients of component k in the affine parameter s,
// ascending powers
struct RationalCurve {
  Eigen::MatrixXcd coeffs;  // (m+1) x (d+1)

  int m() const { return static_cast<int>(coeffs.rows()) - 1; }
  int max_degree() const { return static_cast<int>(coeffs.cols()) - 1; }
  Eigen::VectorXcd homogeneous_at(Complex s) const;
  Eigen::VectorXcd derivative_at(Complex s) const;

  // precompose with the Moebius map s -> (a s + b)/(c s + d)
  RationalCurve reparameterized(Complex a, Complex b, Complex c, Complex d) const;
};

// degree [C].[CP^{m-1}] = int_C Omega by compactified quadrature; throws
// if the quadrature result is further than 0.1 from an integer
struct CroftonResult {
  int degree = 0;
  double residual = 0.0;  // |quadrature - degree|
};
CroftonResult crofton_degree(const RationalCurve& curve);

// a parameterized surface patch, given in homogeneous coordinates so the
// surface may wander across affine charts
struct SurfacePatch {
  int m = 0;
  double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;
  std::function<Eigen::VectorXcd(double, double)> homogeneous;  // (m+1)-vector
};

// Fubini-Study area and Omega-integral of a 2-cycle; equality up to sign
// characterizes calibration (Wirtinger)
struct WirtingerReport {
  double area = 0.0;
  double omega_integral = 0.0;
};
WirtingerReport wirtinger_check(const SurfacePatch& surface, int nodes = 96);

// the full s-plane of a rational curve as a compactified surface patch
SurfacePatch curve_patch(const RationalCurve& curve);

}  // namespace cpsys
