#include "cpsys/michelsohn.hpp"

#include <map>
#include <mutex>

namespace cpsys {

namespace {

// dz^j = e^{2j-1} + i e^{2j}, dz̄^j = e^{2j-1} - i e^{2j}  (j 1-based)
GradedForm dz(int n, int j, bool bar) {
  GradedForm f(2 * n);
  f.set({2 * j - 1}, 1.0);
  f.set({2 * j}, bar ? Complex(0.0, -1.0) : Complex(0.0, 1.0));
  return f;
}

GradedForm dz_omit(int n, int omit, bool bar) {
  GradedForm f = GradedForm::scalar(2 * n, 1.0);
  for (int j = 1; j <= n; ++j)
    if (j != omit) f = wedge(f, dz(n, j, bar));
  return f;
}

Complex ipow(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// V_jk basis of (n-1,n-1)-forms; conj(V_jk) = V_kj so Hermitian coefficient
// matrices give real forms, and the (-1)^{j+k} sign matches the adjugate's
// cofactor signs.
GradedForm v_basis(int n, int j, int k) {
  int m = n - 1;
  Complex phase = ipow(m * m) * ((j + k) % 2 == 0 ? 1.0 : -1.0);
  return wedge(dz_omit(n, j, false), dz_omit(n, k, true)) * phase;
}

struct CarrierCache {
  // columns index the n^2 real parameters of a Hermitian matrix:
  // diag entries, then (re, im) per off-diagonal pair (j<k)
  std::vector<IndexTuple> tuples;
  std::map<IndexTuple, int> index;
  Eigen::MatrixXd to_coeffs;  // (2 * tuples) x n^2, stacked re/im
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver;
};

Eigen::MatrixXcd unpack_hermitian(const Eigen::VectorXd& p, int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  int idx = 0;
  for (int j = 0; j < n; ++j) a(j, j) = p(idx++);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      double re = p(idx++), im = p(idx++);
      a(j, k) = Complex(re, im);
      a(k, j) = Complex(re, -im);
    }
  return a;
}

Eigen::VectorXd pack_hermitian(const Eigen::MatrixXcd& a) {
  const int n = int(a.rows());
  Eigen::VectorXd p(n * n);
  int idx = 0;
  for (int j = 0; j < n; ++j) p(idx++) = a(j, j).real();
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      p(idx++) = a(j, k).real();
      p(idx++) = a(j, k).imag();
    }
  return p;
}

const CarrierCache& carrier(int n, bool top) {
  static std::map<std::pair<int, bool>, CarrierCache> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, top);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  CarrierCache cc;
  // forms produced by each Hermitian unit parameter
  std::vector<GradedForm> gens;
  for (int col = 0; col < n * n; ++col) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n * n);
    p(col) = 1.0;
    HermitianMatrixRep rep{unpack_hermitian(p, n)};
    gens.push_back(top ? form_from_hermitian_n1n1(rep) : form_from_hermitian_11(rep));
  }
  std::map<IndexTuple, int> tuple_of;
  for (const auto& g : gens)
    for (const auto& [idx, c] : g.terms())
      if (!tuple_of.count(idx)) {
        tuple_of[idx] = int(cc.tuples.size());
        cc.tuples.push_back(idx);
      }
  cc.index = tuple_of;
  cc.to_coeffs = Eigen::MatrixXd::Zero(2 * cc.tuples.size(), n * n);
  for (int col = 0; col < n * n; ++col)
    for (const auto& [idx, c] : gens[col].terms()) {
      int r = tuple_of[idx];
      cc.to_coeffs(2 * r, col) = c.real();
      cc.to_coeffs(2 * r + 1, col) = c.imag();
    }
  cc.solver.compute(cc.to_coeffs);
  return cache.emplace(key, std::move(cc)).first->second;
}

HermitianMatrixRep extract(const GradedForm& f, int n, bool top, double tol) {
  const CarrierCache& cc = carrier(n, top);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * cc.tuples.size());
  double outside = 0.0;
  for (const auto& [idx, c] : f.terms()) {
    auto it = cc.index.find(idx);
    if (it == cc.index.end()) {
      outside = std::max(outside, std::abs(c));
      continue;
    }
    int r = it->second;
    rhs(2 * r) = c.real();
    rhs(2 * r + 1) = c.imag();
  }
  Eigen::VectorXd p = cc.solver.solve(rhs);
  double resid = (cc.to_coeffs * p - rhs).norm();
  double scale = std::max(1.0, rhs.norm());
  if (outside > tol * scale || resid > tol * scale)
    throw std::invalid_argument("hermitian_from_form: form outside carrier span");
  return HermitianMatrixRep{unpack_hermitian(p, n)};
}

}  // namespace

bool HermitianMatrixRep::is_positive(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries);
  return es.eigenvalues().minCoeff() > tol;
}

GradedForm form_from_hermitian_11(const HermitianMatrixRep& a) {
  const int n = a.n();
  GradedForm out(2 * n);
  const Complex half_i(0.0, 0.5);
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      Complex c = a.entries(j - 1, k - 1);
      if (c != 0.0) out += wedge(dz(n, j, false), dz(n, k, true)) * (half_i * c);
    }
  return out.pruned(0.0);
}

GradedForm form_from_hermitian_n1n1(const HermitianMatrixRep& b) {
  const int n = b.n();
  GradedForm out(2 * n);
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      Complex c = b.entries(j - 1, k - 1);
      if (c != 0.0) out += v_basis(n, j, k) * c;
    }
  return out.pruned(0.0);
}

HermitianMatrixRep hermitian_from_form_11(const GradedForm& f, int n, double tol) {
  return extract(f, n, false, tol);
}

HermitianMatrixRep hermitian_from_form_n1n1(const GradedForm& f, int n, double tol) {
  return extract(f, n, true, tol);
}

double michelsohn_constant(int n) {
  static std::map<int, double> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 2) throw std::domain_error("michelsohn_constant: n must be >= 2");
  // calibrate against the wedge-expansion oracle at the identity
  HermitianMatrixRep id{Eigen::MatrixXcd::Identity(n, n)};
  GradedForm power = wedge_pow(form_from_hermitian_11(id), n - 1);
  HermitianMatrixRep b = hermitian_from_form_n1n1(power, n);
  double c = b.entries(0, 0).real();  // adj(I) = I
  if ((b.entries - c * Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10 * std::abs(c))
    throw std::runtime_error("michelsohn_constant: calibration inconsistent");
  cache[n] = c;
  return c;
}

HermitianMatrixRep michelsohn_power(const HermitianMatrixRep& a) {
  const int n = a.n();
  double c = michelsohn_constant(n);
  // the wedge power lands on the cofactor matrix (= adjugate transpose)
  Eigen::MatrixXcd cof = (a.entries.determinant() * a.entries.inverse()).transpose();
  // guard against singular input: fall back to the wedge oracle
  if (!cof.allFinite() || a.entries.jacobiSvd().singularValues().minCoeff() < 1e-12) {
    GradedForm power = wedge_pow(form_from_hermitian_11(a), n - 1);
    return hermitian_from_form_n1n1(power, n);
  }
  return HermitianMatrixRep{c * cof};
}

HermitianMatrixRep michelsohn_root(const HermitianMatrixRep& sigma) {
  const int n = sigma.n();
  if (n < 2) throw std::domain_error("michelsohn_root: n must be >= 2");
  if (!sigma.is_positive()) throw std::domain_error("michelsohn_root: input not positive definite");
  double c = michelsohn_constant(n);
  Eigen::MatrixXcd adj = (sigma.entries / c).transpose();  // sigma/c = cof(H), so this is adj(H)
  double det_adj = adj.determinant().real();
  if (det_adj <= 0.0) throw std::domain_error("michelsohn_root: degenerate input");
  double det_h = std::pow(det_adj, 1.0 / (n - 1));  // det(adj H) = det(H)^{n-1}
  Eigen::MatrixXcd h = det_h * adj.inverse();
  return HermitianMatrixRep{h};
}

}  // namespace cpsys
