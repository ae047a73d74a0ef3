#include "cpsys/graded_form.hpp"

#include <algorithm>
#include <cmath>

namespace cpsys {

namespace {
constexpr double kDropEps = 1e-300;  // exact-zero cleanup only
}

void GradedForm::check_tuple(const IndexTuple& idx) const {
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 1 || idx[i] > dim_) throw std::out_of_range("GradedForm: index out of range");
    if (i > 0 && idx[i] <= idx[i - 1]) throw std::invalid_argument("GradedForm: indices must be strictly increasing");
  }
}

GradedForm GradedForm::scalar(int dim, Complex c) {
  GradedForm f(dim);
  if (c != 0.0) f.terms_[{}] = c;
  return f;
}

GradedForm GradedForm::basis(int dim, int i) { return monomial(dim, {i}); }

GradedForm GradedForm::monomial(int dim, const IndexTuple& idx, Complex c) {
  GradedForm f(dim);
  IndexTuple sorted = idx;
  int sgn = sort_sign(sorted);
  if (sgn == 0 || c == 0.0) return f;
  f.check_tuple(sorted);
  f.terms_[sorted] = c * double(sgn);
  return f;
}

GradedForm GradedForm::standard_omega(int dim) {
  GradedForm f(dim);
  for (int i = 1; i <= dim / 2; ++i) f.terms_[{2 * i - 1, 2 * i}] = 1.0;
  return f;
}

GradedForm GradedForm::volume(int dim) {
  GradedForm f(dim);
  IndexTuple all(dim);
  for (int i = 0; i < dim; ++i) all[i] = i + 1;
  f.terms_[all] = 1.0;
  return f;
}

Complex GradedForm::coeff(const IndexTuple& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void GradedForm::set(const IndexTuple& idx, Complex c) {
  check_tuple(idx);
  if (c == 0.0)
    terms_.erase(idx);
  else
    terms_[idx] = c;
}

void GradedForm::add(const IndexTuple& idx, Complex c) {
  check_tuple(idx);
  auto& v = terms_[idx];
  v += c;
  if (std::abs(v) < kDropEps) terms_.erase(idx);
}

int GradedForm::degree() const {
  int deg = -2;
  for (const auto& [idx, c] : terms_) {
    int k = int(idx.size());
    if (deg == -2)
      deg = k;
    else if (deg != k)
      return -1;
  }
  return deg == -2 ? 0 : deg;
}

GradedForm GradedForm::degree_part(int k) const {
  GradedForm out(dim_);
  for (const auto& [idx, c] : terms_)
    if (int(idx.size()) == k) out.terms_[idx] = c;
  return out;
}

int GradedForm::max_degree() const {
  int m = 0;
  for (const auto& [idx, c] : terms_) m = std::max(m, int(idx.size()));
  return m;
}

GradedForm GradedForm::operator+(const GradedForm& o) const {
  GradedForm out = *this;
  out += o;
  return out;
}

GradedForm& GradedForm::operator+=(const GradedForm& o) {
  if (dim_ == 0) dim_ = o.dim_;
  if (o.dim_ != dim_ && !o.terms_.empty()) throw std::invalid_argument("GradedForm: dimension mismatch");
  for (const auto& [idx, c] : o.terms_) {
    auto& v = terms_[idx];
    v += c;
    if (std::abs(v) < kDropEps) terms_.erase(idx);
  }
  return *this;
}

GradedForm GradedForm::operator-(const GradedForm& o) const { return *this + o * Complex(-1.0); }

GradedForm GradedForm::operator*(Complex c) const {
  GradedForm out(dim_);
  if (c == 0.0) return out;
  for (const auto& [idx, v] : terms_) out.terms_[idx] = v * c;
  return out;
}

GradedForm GradedForm::conjugate() const {
  GradedForm out(dim_);
  for (const auto& [idx, v] : terms_) out.terms_[idx] = std::conj(v);
  return out;
}

GradedForm GradedForm::pruned(double eps) const {
  GradedForm out(dim_);
  for (const auto& [idx, v] : terms_)
    if (std::abs(v) > eps) out.terms_[idx] = v;
  return out;
}

double GradedForm::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [idx, v] : terms_) m = std::max(m, std::abs(v));
  return m;
}

double GradedForm::coeff_norm() const {
  double s = 0.0;
  for (const auto& [idx, v] : terms_) s += std::norm(v);
  return std::sqrt(s);
}

GradedForm operator*(Complex c, const GradedForm& a) { return a * c; }

int sort_sign(IndexTuple& idx) {
  int sgn = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sgn = -sgn;
    }
  }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sgn;
}

namespace {

// Merge of two increasing tuples with the graded sign; 0 on collision.
int merge_sign(const IndexTuple& a, const IndexTuple& b, IndexTuple& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  int sgn = 1;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining a-entries
      if ((a.size() - i) % 2 != 0) sgn = -sgn;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return sgn;
}

}  // namespace

GradedForm wedge(const GradedForm& a, const GradedForm& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  GradedForm out(a.dim());
  IndexTuple merged;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      if (int(ia.size() + ib.size()) > a.dim()) continue;
      int sgn = merge_sign(ia, ib, merged);
      if (sgn != 0) out.add(merged, ca * cb * double(sgn));
    }
  }
  return out;
}

GradedForm wedge_pow(const GradedForm& a, int k) {
  if (k < 0) throw std::invalid_argument("wedge_pow: negative power");
  GradedForm out = GradedForm::scalar(a.dim(), 1.0);
  for (int i = 0; i < k; ++i) out = wedge(out, a);
  return out;
}

GradedForm interior_basis(const GradedForm& a, int i) {
  GradedForm out(a.dim());
  for (const auto& [idx, c] : a.terms()) {
    for (size_t p = 0; p < idx.size(); ++p) {
      if (idx[p] == i) {
        IndexTuple rest;
        rest.reserve(idx.size() - 1);
        for (size_t q = 0; q < idx.size(); ++q)
          if (q != p) rest.push_back(idx[q]);
        out.add(rest, c * (p % 2 == 0 ? 1.0 : -1.0));
        break;
      }
    }
  }
  return out;
}

GradedForm pullback(const GradedForm& a, const Eigen::MatrixXd& m) {
  const int d = a.dim();
  if (m.rows() != d) throw std::invalid_argument("pullback: matrix size mismatch");
  const int c_dim = static_cast<int>(m.cols());
  GradedForm out(c_dim);
  // e^j pulls back to sum_i m(j,i) e^i; wedge out each monomial.
  for (const auto& [idx, c] : a.terms()) {
    GradedForm term = GradedForm::scalar(c_dim, c);
    for (int j : idx) {
      GradedForm row(c_dim);
      for (int i = 1; i <= c_dim; ++i) {
        double v = m(j - 1, i - 1);
        if (v != 0.0) row.set({i}, v);
      }
      term = wedge(term, row);
    }
    out += term;
  }
  return out;
}

Complex euclidean_inner(const GradedForm& a, const GradedForm& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  Complex s = 0.0;
  const auto& small = a.terms().size() <= b.terms().size() ? a : b;
  const auto& big = (&small == &a) ? b : a;
  for (const auto& [idx, c] : small.terms()) {
    Complex o = big.coeff(idx);
    if (o != 0.0) s += (&small == &a) ? c * std::conj(o) : o * std::conj(c);
  }
  return s;
}

GradedForm euclidean_star(const GradedForm& a, int orientation) {
  const int d = a.dim();
  GradedForm out(d);
  std::vector<char> present(d + 1);
  for (const auto& [idx, c] : a.terms()) {
    std::fill(present.begin(), present.end(), 0);
    for (int i : idx) present[i] = 1;
    IndexTuple comp;
    comp.reserve(d - idx.size());
    for (int i = 1; i <= d; ++i)
      if (!present[i]) comp.push_back(i);
    // sign of the permutation (idx, comp) relative to (1..d)
    IndexTuple concat = idx;
    concat.insert(concat.end(), comp.begin(), comp.end());
    int sgn = sort_sign(concat);
    out.add(comp, c * double(sgn * orientation));
  }
  return out;
}

}  // namespace cpsys
