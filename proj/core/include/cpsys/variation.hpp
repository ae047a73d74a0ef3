#pragma once

#include <cstdint>

#include "cpsys/fields.hpp"
#include "cpsys/montecarlo.hpp"

namespace cpsys {

// settings shared by every integral of a functional evaluation; fixing the
// seed fixes the sample set, so finite differences of F use common random
// numbers
struct McConfig {
  std::int64_t samples = 200000;
  std::uint64_t seed = 7;
  int workers = 1;
};

// pointwise inverse of omega -> omega^{n-1} applied to a positive
// (n-1,n-1)-form; throws std::domain_error off the positive cone
GradedForm psi_at(const GradedForm& sigma, int n);

// F(sigma) = int_{CP^{n-1}} sigma / (int_{CP^n} sigma wedge Psi(sigma))^{(n-1)/n},
// sigma a positive closed (n-1,n-1) field on CP^n, n >= 3
McEstimate f_eval(const FormField& sigma, const McConfig& mc);

// normalized (2n-2)-systole of a balanced form:
// (n!)^{(n-1)/n}/(n-1)! int_{CP^{n-1}} omega^{n-1} / (int omega^n)^{(n-1)/n}
McEstimate sys_nor_balanced(const FormField& omega, const McConfig& mc);

// a closed (n-1,n-1) direction together with the pointwise solution eta of
// (n-1) eta wedge omega^{n-2} = mu, which places eta in the balanced tangent
// space automatically
struct VariationDirection {
  FormField mu;
  FormField eta;
};
VariationDirection variation_direction(const FormField& omega, const FormField& mu);

// analytic first variation of F at omega in B_1 along closed mu:
// (int_{CP^{n-1}} mu) - (int_{CP^{n-1}} omega^{n-1})(int_{CP^n} mu wedge omega)
McEstimate first_variation(const FormField& omega, const FormField& mu, const McConfig& mc);

// analytic second variation of F at omega in B_1 along mu = dPhi|_omega . eta
McEstimate second_variation(const FormField& omega, const VariationDirection& dir,
                            const McConfig& mc);

// Hessian at a normalized Kaehler form:
// (n-1) [ (int eta wedge omega^{n-1})^2 - int eta wedge eta wedge omega^{n-2} ]
McEstimate hessian_kahler(const FormField& omega, const FormField& eta, const McConfig& mc);

// symmetric finite differences of F along mu_s = omega^{n-1} + s mu with
// common random numbers; h is the step in s
double first_variation_fd(const FormField& omega, const FormField& mu, double h,
                          const McConfig& mc);
double second_variation_fd(const FormField& omega, const FormField& mu, double h,
                           const McConfig& mc);

}  // namespace cpsys
