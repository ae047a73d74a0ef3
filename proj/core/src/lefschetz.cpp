#include "cpsys/lefschetz.hpp"

#include <functional>

namespace cpsys {

namespace {

void enumerate_tuples(int d, int k, std::vector<IndexTuple>& out) {
  out.clear();
  IndexTuple cur;
  std::function<void(int)> rec = [&](int start) {
    if (int(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= d; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(1);
}

Eigen::VectorXcd to_vector(const GradedForm& a, const std::vector<IndexTuple>& basis) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) v(i) = a.coeff(basis[i]);
  return v;
}

GradedForm from_vector(int d, const Eigen::VectorXcd& v, const std::vector<IndexTuple>& basis) {
  GradedForm out(d);
  for (size_t i = 0; i < basis.size(); ++i)
    if (v(i) != 0.0) out.set(basis[i], v(i));
  return out;
}

// Matrix of a linear map on forms between the given monomial bases.
Eigen::MatrixXcd operator_matrix(int d, const std::vector<IndexTuple>& in_basis,
                                 const std::vector<IndexTuple>& out_basis,
                                 const std::function<GradedForm(const GradedForm&)>& op) {
  Eigen::MatrixXcd m(out_basis.size(), in_basis.size());
  for (size_t c = 0; c < in_basis.size(); ++c)
    m.col(c) = to_vector(op(GradedForm::monomial(d, in_basis[c])), out_basis);
  return m;
}

}  // namespace

GradedForm lefschetz(const GradedForm& a, const GradedForm& omega) { return wedge(a, omega); }

GradedForm dual_lefschetz_standard(const GradedForm& a) {
  GradedForm out(a.dim());
  for (int i = 1; i <= a.dim() / 2; ++i)
    out += interior_basis(interior_basis(a, 2 * i - 1), 2 * i);
  return out;
}

GradedForm dual_lefschetz(const GradedForm& a, const LinearComplexStructure& j) {
  if (a.max_degree() < 2) return GradedForm(a.dim());
  HermitianFrame frame = j.build_frame();
  GradedForm in_frame = pullback(a, frame.to_frame());
  return pullback(dual_lefschetz_standard(in_frame), frame.from_frame());
}

GradedForm lefschetz_invert(const GradedForm& b, const LinearComplexStructure& j) {
  const int d = b.dim(), n = d / 2;
  int deg = b.degree();
  if (deg < 0) throw std::invalid_argument("lefschetz_invert: non-homogeneous input");
  int k = d - deg;
  if (k > n) throw std::invalid_argument("lefschetz_invert: degree must be >= n");
  GradedForm omega = j.fundamental_form();
  std::vector<IndexTuple> in_basis, out_basis;
  enumerate_tuples(d, k, in_basis);
  enumerate_tuples(d, deg, out_basis);
  GradedForm omega_pow = wedge_pow(omega, n - k);
  Eigen::MatrixXcd m = operator_matrix(d, in_basis, out_basis,
                                       [&](const GradedForm& u) { return wedge(u, omega_pow); });
  Eigen::VectorXcd x = m.colPivHouseholderQr().solve(to_vector(b, out_basis));
  return from_vector(d, x, in_basis);
}

std::vector<PrimitivePiece> primitive_decompose(const GradedForm& a, const LinearComplexStructure& j,
                                                double cond_limit) {
  const int d = a.dim(), n = d / 2;
  int k = a.degree();
  if (k < 0) throw std::invalid_argument("primitive_decompose: non-homogeneous input");

  HermitianFrame frame = j.build_frame();
  GradedForm af = pullback(a, frame.to_frame());
  const GradedForm omega_std = GradedForm::standard_omega(d);

  int shift = 0;
  if (k > n) {
    // reduce through the bijection L^{k-n}
    af = pullback(lefschetz_invert(a, j), frame.to_frame());
    shift = k - n;
    k = d - k;
  }

  std::vector<PrimitivePiece> result;
  if (af.empty()) return result;

  std::vector<IndexTuple> target_basis;
  enumerate_tuples(d, k, target_basis);

  // Columns: for each level jl, a basis of the primitive subspace of degree
  // k-2jl pushed forward by L^jl.
  std::vector<Eigen::MatrixXcd> kernels;
  std::vector<std::vector<IndexTuple>> piece_bases;
  std::vector<Eigen::Index> offsets;
  Eigen::Index total = 0;
  const int jmax = k / 2;
  for (int jl = 0; jl <= jmax; ++jl) {
    const int m = k - 2 * jl;
    std::vector<IndexTuple> basis_m, basis_m2;
    enumerate_tuples(d, m, basis_m);
    enumerate_tuples(d, std::max(m - 2, 0), basis_m2);
    Eigen::MatrixXcd lam = operator_matrix(d, basis_m, basis_m2, dual_lefschetz_standard);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(lam);
    lu.setThreshold(1e-10);
    Eigen::MatrixXcd ker = (m < 2) ? Eigen::MatrixXcd::Identity(basis_m.size(), basis_m.size())
                                   : Eigen::MatrixXcd(lu.kernel());
    kernels.push_back(ker);
    piece_bases.push_back(basis_m);
    offsets.push_back(total);
    total += ker.cols();
  }

  Eigen::MatrixXcd big(target_basis.size(), total);
  GradedForm omega_pow = GradedForm::scalar(d, 1.0);
  for (int jl = 0; jl <= jmax; ++jl) {
    const auto& ker = kernels[jl];
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
      GradedForm piece = from_vector(d, ker.col(c), piece_bases[jl]);
      big.col(offsets[jl] + c) = to_vector(wedge(piece, omega_pow), target_basis);
    }
    omega_pow = wedge(omega_pow, omega_std);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(big);
  Eigen::VectorXcd rhs = to_vector(af, target_basis);
  Eigen::VectorXcd x = qr.solve(rhs);
  double resid = (big * x - rhs).norm();
  if (resid > 1e-8 * std::max(1.0, rhs.norm()))
    throw std::runtime_error("primitive_decompose: reconstruction failed");
  double diag_max = qr.matrixR().diagonal().cwiseAbs().maxCoeff();
  double diag_min = qr.matrixR().diagonal().cwiseAbs().minCoeff();
  if (diag_min <= 0 || diag_max / diag_min > cond_limit)
    throw std::runtime_error("primitive_decompose: ill-conditioned solve");

  Eigen::MatrixXd from = frame.from_frame();
  for (int jl = 0; jl <= jmax; ++jl) {
    Eigen::VectorXcd coords = x.segment(offsets[jl], kernels[jl].cols());
    GradedForm piece = from_vector(d, kernels[jl] * coords, piece_bases[jl]);
    piece = pullback(piece, from).pruned(1e-13);
    if (!piece.empty()) result.push_back({jl + shift, piece});
  }
  return result;
}

Complex riemann_hodge_pair(const GradedForm& u, const GradedForm& v, const GradedForm& omega) {
  const int d = u.dim(), n = d / 2;
  int k = u.degree();
  if (k < 0 || v.degree() != k) {
    if (!(u.empty() || v.empty())) throw std::invalid_argument("riemann_hodge_pair: degree mismatch");
    return 0.0;
  }
  if (k > n) throw std::invalid_argument("riemann_hodge_pair: degree must be <= n");
  GradedForm top = wedge(wedge(u, v), wedge_pow(omega, n - k));
  IndexTuple all(d);
  for (int i = 0; i < d; ++i) all[i] = i + 1;
  double sign = ((k * (k - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * top.coeff(all);
}

}  // namespace cpsys
