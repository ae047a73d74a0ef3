#pragma once

#include "cpsys/complex_structure.hpp"

namespace cpsys {

/// Lefschetz operator: a ∧ omega.
GradedForm lefschetz(const GradedForm& a, const GradedForm& omega);

/// Metric adjoint of the Lefschetz operator: <Λu, v> = <u, L v>.
GradedForm dual_lefschetz(const GradedForm& a, const LinearComplexStructure& j);

/// In frame coordinates (standard metric, standard omega).
GradedForm dual_lefschetz_standard(const GradedForm& a);

/// Lefschetz decomposition a = sum_j L^j a_j with each a_j primitive.
/// Requires homogeneous input; degrees above n are reduced through the
/// bijection L^{k-n}.
struct PrimitivePiece {
  int level;  // power of L
  GradedForm form;
};
std::vector<PrimitivePiece> primitive_decompose(const GradedForm& a, const LinearComplexStructure& j,
                                                double cond_limit = 1e12);

/// Solve L^{n-k} x = b for homogeneous b of degree 2n-k (k <= n).
GradedForm lefschetz_invert(const GradedForm& b, const LinearComplexStructure& j);

/// Riemann-Hodge pairing (-1)^{k(k-1)/2} * [coefficient of vol in u∧v∧omega^{n-k}].
/// Coefficients are taken in the coordinates the forms are expressed in;
/// callers should work in an orthonormal frame.
Complex riemann_hodge_pair(const GradedForm& u, const GradedForm& v, const GradedForm& omega);

}  // namespace cpsys
