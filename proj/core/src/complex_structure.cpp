#include "cpsys/complex_structure.hpp"

#include <bit>
#include <random>

namespace cpsys {

LinearComplexStructure::LinearComplexStructure(Eigen::MatrixXd j, Eigen::MatrixXd gram, double tol)
    : j_(std::move(j)), gram_(std::move(gram)) {
  const int d = int(j_.rows());
  if (d % 2 != 0 || j_.cols() != d || gram_.rows() != d || gram_.cols() != d)
    throw std::invalid_argument("LinearComplexStructure: bad dimensions");
  if ((j_ * j_ + Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("LinearComplexStructure: J^2 != -I");
  if ((j_.transpose() * gram_ * j_ - gram_).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("LinearComplexStructure: J not compatible with gram");
  Eigen::MatrixXd w = j_.transpose() * gram_;
  if ((w + w.transpose()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("LinearComplexStructure: fundamental form not antisymmetric");
}

LinearComplexStructure LinearComplexStructure::standard(int dim) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim / 2; ++i) {
    j(2 * i + 1, 2 * i) = 1.0;
    j(2 * i, 2 * i + 1) = -1.0;
  }
  return LinearComplexStructure(j, Eigen::MatrixXd::Identity(dim, dim));
}

GradedForm LinearComplexStructure::fundamental_form() const {
  const int d = dim();
  Eigen::MatrixXd w = j_.transpose() * gram_;  // w(a,b) = g(J e_a, e_b)
  GradedForm out(d);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      if (w(a, b) != 0.0) out.set({a + 1, b + 1}, w(a, b));
  return out;
}

HermitianFrame LinearComplexStructure::build_frame(std::uint64_t seed) const {
  const int d = dim();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss;

  // Whiten the metric: with G = L L^T, jw = L^T J L^{-T} is an orthogonal
  // complex structure for the Euclidean inner product, so the Gram-Schmidt
  // below is well conditioned regardless of the conditioning of G.
  const Eigen::LLT<Eigen::MatrixXd> llt(gram_);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("build_frame: Gram matrix is not positive definite");
  const Eigen::MatrixXd lt = llt.matrixL().transpose();
  const Eigen::MatrixXd jw =
      lt * lt.transpose().triangularView<Eigen::Lower>().solve(j_.transpose()).transpose();

  Eigen::MatrixXd w(d, d);
  for (int attempt = 0; attempt < 64; ++attempt) {
    int filled = 0;
    for (int cand = 0; cand < d + 8 && filled < d; ++cand) {
      Eigen::VectorXd v;
      if (cand < d && attempt == 0) {
        v = Eigen::VectorXd::Zero(d);
        v(cand) = 1.0;
      } else {
        v = Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return gauss(rng); });
      }
      for (int k = 0; k < filled; ++k) v -= w.col(k) * w.col(k).dot(v);
      const double nrm2 = v.squaredNorm();
      if (nrm2 < 1e-4) continue;
      v /= std::sqrt(nrm2);
      // re-orthogonalize once for good measure
      for (int k = 0; k < filled; ++k) v -= w.col(k) * w.col(k).dot(v);
      v.normalize();
      w.col(filled) = v;
      w.col(filled + 1) = jw * v;
      filled += 2;
    }
    if (filled == d &&
        (w.transpose() * w - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10) {
      // map back: F = L^{-T} W satisfies F^T G F = W^T W = I and J F_{2k} = F_{2k+1}
      return HermitianFrame{lt.triangularView<Eigen::Upper>().solve(w)};
    }
    // retry with fresh randomness
  }
  throw std::runtime_error("build_frame: failed to construct an orthonormal J-frame");
}

Complex inner(const GradedForm& a, const GradedForm& b, const HermitianFrame& frame) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  return euclidean_inner(pullback(a, frame.to_frame()), pullback(b, frame.to_frame()));
}

GradedForm hodge_star(const GradedForm& a, const HermitianFrame& frame, int orientation) {
  if (!a.is_homogeneous()) throw std::invalid_argument("hodge_star: non-homogeneous input");
  GradedForm in_frame = pullback(a, frame.to_frame());
  GradedForm starred = euclidean_star(in_frame, orientation * frame.orientation());
  return pullback(starred, frame.from_frame());
}

GradedForm pq_project(const GradedForm& a, const LinearComplexStructure& j, int p, int q) {
  const int d = a.dim();
  if (p < 0 || q < 0 || p + q > d) throw std::invalid_argument("pq_project: bad type");
  const Eigen::MatrixXd& J = j.matrix();
  GradedForm out(d);
  const Complex I(0.0, 1.0);
  for (const auto& [idx, c] : a.terms()) {
    const int k = int(idx.size());
    if (k != p + q) continue;
    // Each covector slot splits as e^m = h_m + a_m with h_m = (e^m - i e^m∘J)/2.
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      if (std::popcount(mask) != p) continue;
      GradedForm term = GradedForm::scalar(d, c);
      for (int s = 0; s < k; ++s) {
        const int m = idx[s];
        GradedForm slot(d);
        // e^m ∘ J has coefficients J(m-1, i-1) on e^i
        for (int i = 1; i <= d; ++i) {
          Complex base = (i == m) ? 1.0 : 0.0;
          Complex via_j = J(m - 1, i - 1);
          Complex coef = (mask >> s) & 1u ? 0.5 * (base - I * via_j) : 0.5 * (base + I * via_j);
          if (coef != 0.0) slot.add({i}, coef);
        }
        term = wedge(term, slot);
      }
      out += term;
    }
  }
  return out.pruned(0.0);
}

}  // namespace cpsys
