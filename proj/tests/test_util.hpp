#pragma once

#include <functional>
#include <random>
#include <vector>

#include "cpsys/graded_form.hpp"

namespace cpsys_test {

using cpsys::Complex;
using cpsys::GradedForm;
using cpsys::IndexTuple;

inline void all_tuples(int d, int k, std::vector<IndexTuple>& out) {
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

inline GradedForm random_form(int d, int k, std::mt19937_64& rng, bool real = false) {
  std::normal_distribution<double> gauss;
  std::vector<IndexTuple> tuples;
  all_tuples(d, k, tuples);
  GradedForm f(d);
  for (const auto& t : tuples) f.set(t, Complex(gauss(rng), real ? 0.0 : gauss(rng)));
  return f;
}

// Definitional evaluation of a k-form on k vectors:
// sum_I c_I det( [v_1 ... v_k] rows I ).
inline Complex eval_on_vectors(const GradedForm& f, const std::vector<Eigen::VectorXd>& vs) {
  Complex total = 0.0;
  const int k = int(vs.size());
  for (const auto& [idx, c] : f.terms()) {
    if (int(idx.size()) != k) continue;
    Eigen::MatrixXd m(k, k);
    for (int r = 0; r < k; ++r)
      for (int col = 0; col < k; ++col) m(r, col) = vs[col](idx[r] - 1);
    total += c * m.determinant();
  }
  return total;
}

// Shuffle-sum wedge oracle, independent of the sparse merge implementation:
// (a ^ b)(v_1..v_{p+q}) = sum over shuffles sign * a(...) b(...).
inline Complex wedge_eval_oracle(const GradedForm& a, int p, const GradedForm& b, int q,
                                 const std::vector<Eigen::VectorXd>& vs) {
  const int k = p + q;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i < p ? 1 : 0;
  std::sort(pick.begin(), pick.end());
  Complex total = 0.0;
  do {
    std::vector<Eigen::VectorXd> va, vb;
    std::vector<int> perm;
    for (int i = 0; i < k; ++i)
      if (pick[i]) {
        va.push_back(vs[i]);
        perm.push_back(i);
      }
    for (int i = 0; i < k; ++i)
      if (!pick[i]) {
        vb.push_back(vs[i]);
        perm.push_back(i);
      }
    int sgn = 1;
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) sgn = -sgn;
    total += double(sgn) * eval_on_vectors(a, va) * eval_on_vectors(b, vb);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return total;
}

}  // namespace cpsys_test
