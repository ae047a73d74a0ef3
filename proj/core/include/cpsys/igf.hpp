#pragma once

#include <cstdint>

#include "cpsys/fields.hpp"
#include "cpsys/montecarlo.hpp"

namespace cpsys {

enum class Family { penrose, equatorial };

// normalization constant of the equatorial-hyperplane family, fixed by
// evaluating the integral geometric formula at the constant function 1
double equatorial_theta(double t, int n);

// area under g_t of the projective line {[alpha a + beta b]} on CP^{2n+1}
McEstimate line_area_gt(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double t,
                        std::int64_t samples, std::uint64_t seed, int workers = 1);

// area under g_t of the twistor fiber through a chart point
McEstimate fiber_area_gt(const ChartPoint& p, double t, std::int64_t samples, std::uint64_t seed,
                         int workers = 1);

// area under g_t of the hyperplane orthogonal to sigma
McEstimate hyperplane_area_gt(const Eigen::VectorXcd& sigma, double t, std::int64_t samples,
                              std::uint64_t seed, int workers = 1);

// homogeneous representative of the fiber through p as a line span
void fiber_span_at(const ChartPoint& p, Eigen::VectorXcd& a, Eigen::VectorXcd& b);

// chart distance between p and the s = 0 point of the fiber through p
double fiber_membership_residual(const ChartPoint& p);

// two-sided Monte Carlo check of
// int_G ( int_{Sigma_sigma} phi dA_{g_t} ) dmu(sigma) = int phi dV_{g_t}
struct IgfReport {
  McEstimate lhs;
  McEstimate rhs;

  double combined_sigma() const { return lhs.combined_sigma(rhs); }
  // absolute floor covers the exact zero-variance estimators
  bool pass(double k = 3.0) const {
    const double floor = 1e-12 * std::max(std::abs(lhs.value), std::abs(rhs.value));
    return std::abs(lhs.value - rhs.value) <= std::max(k * combined_sigma(), floor);
  }
};
IgfReport igf_verify(Family family, const MonomialSum& phi, int n, double t, std::int64_t samples,
                     std::uint64_t seed, int workers = 1);

// numerical verification of the Hoelder chain behind conformal maximality,
// for gbar = phi g_t and the family of complex dimension k members
struct HolderReport {
  int k = 0;                    // complex dimension of the family members
  McEstimate family_integral;   // int_G vol_gbar(Sigma_sigma) dmu
  McEstimate vol_gbar;          // int phi^N dV_{g_t}, N = 2n+1
  double vol_g = 0.0;           // t/(2n+1)!
  double holder_bound = 0.0;    // vol_g^{(N-k)/N} vol_gbar^{k/N}
  double min_member_norm = 0.0; // min_sigma vol_gbar(Sigma_sigma)/vol_gbar^{k/N}
  double min_member_sigma = 0.0;
  double sys_nor = 0.0;         // closed-form normalized systole of g_t
};
HolderReport holder_chain_check(Family family, const MonomialSum& phi, int n, double t,
                                std::int64_t samples, std::uint64_t seed, int workers = 1,
                                int members = 16);

}  // namespace cpsys
