#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cpsys/complex_structure.hpp"
#include "cpsys/form_json.hpp"
#include "cpsys/lefschetz.hpp"
#include "cpsys/michelsohn.hpp"
#include "test_util.hpp"

using namespace cpsys;
using namespace cpsys_test;

namespace {
double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}
}  // namespace

TEST_CASE("wedge: basis product and graded commutativity") {
  const int d = 6;
  GradedForm e1 = GradedForm::basis(d, 1), e2 = GradedForm::basis(d, 2);
  GradedForm p = wedge(e1, e2);
  CHECK(p.terms().size() == 1);
  CHECK(p.coeff({1, 2}) == Complex(1.0));

  std::mt19937_64 rng(11);
  for (int k : {1, 3}) {
    GradedForm a = random_form(d, k, rng);
    CHECK(wedge(a, a).max_abs_coeff() < 1e-14);  // odd degree squares to zero
  }
  for (int p2 = 0; p2 <= 3; ++p2)
    for (int q2 = 0; q2 <= 3; ++q2) {
      GradedForm a = random_form(d, p2, rng), b = random_form(d, q2, rng);
      double sgn = (p2 * q2) % 2 == 0 ? 1.0 : -1.0;
      CHECK((wedge(a, b) - sgn * wedge(b, a)).max_abs_coeff() < 1e-12);
    }
}

TEST_CASE("wedge agrees with the shuffle-sum oracle") {
  const int d = 6;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    int p = 1 + int(rng() % 2), q = 1 + int(rng() % 2);
    GradedForm a = random_form(d, p, rng), b = random_form(d, q, rng);
    GradedForm w = wedge(a, b);
    std::vector<Eigen::VectorXd> vs;
    for (int i = 0; i < p + q; ++i)
      vs.push_back(Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return gauss(rng); }));
    Complex lhs = eval_on_vectors(w, vs);
    Complex rhs = wedge_eval_oracle(a, p, b, q, vs);
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("omega^n = n! vol") {
  for (int n : {2, 3, 4}) {
    const int d = 2 * n;
    GradedForm top = wedge_pow(GradedForm::standard_omega(d), n);
    GradedForm expected = GradedForm::volume(d) * factorial(n);
    CHECK((top - expected).max_abs_coeff() < 1e-12);
  }
}

TEST_CASE("inner product on the standard frame") {
  const int d = 6;
  auto J = LinearComplexStructure::standard(d);
  HermitianFrame fr = J.build_frame();
  GradedForm e12 = GradedForm::monomial(d, {1, 2});
  GradedForm e13 = GradedForm::monomial(d, {1, 3});
  CHECK(std::abs(inner(e12, e12, fr) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(inner(e12, e13, fr)) < 1e-12);
  GradedForm om = GradedForm::standard_omega(d);
  CHECK(std::abs(inner(om, om, fr) - Complex(3.0)) < 1e-12);

  std::mt19937_64 rng(3);
  GradedForm u = random_form(d, 2, rng);
  CHECK(inner(u, u, fr).real() >= 0.0);
  CHECK(std::abs(inner(u, u, fr).imag()) < 1e-12);
}

TEST_CASE("hodge star: vol, inverse, double star sign") {
  const int d = 6;
  auto J = LinearComplexStructure::standard(d);
  HermitianFrame fr = J.build_frame();
  GradedForm one = GradedForm::scalar(d, 1.0);
  CHECK((hodge_star(one, fr) - GradedForm::volume(d)).max_abs_coeff() < 1e-12);
  CHECK((hodge_star(GradedForm::volume(d), fr) - one).max_abs_coeff() < 1e-12);

  // star on every basis 2-form: star(star(a)) = (-1)^{k(2n-k)} a = +a here
  std::vector<IndexTuple> tuples;
  all_tuples(d, 2, tuples);
  for (const auto& t : tuples) {
    GradedForm a = GradedForm::monomial(d, t);
    CHECK((hodge_star(hodge_star(a, fr), fr) - a).max_abs_coeff() < 1e-12);
  }

  // u ∧ star(v) = <u, v> vol for random real forms
  std::mt19937_64 rng(17);
  for (int k = 1; k <= 3; ++k)
    for (int trial = 0; trial < 5; ++trial) {
      GradedForm u = random_form(d, k, rng, /*real=*/true);
      GradedForm v = random_form(d, k, rng, /*real=*/true);
      GradedForm uv = wedge(u, hodge_star(v, fr));
      Complex ip = inner(u, v, fr);
      IndexTuple all{1, 2, 3, 4, 5, 6};
      CHECK(std::abs(uv.coeff(all) - ip) < 1e-10);
    }
}

TEST_CASE("hodge star in a non-standard metric frame") {
  const int d = 4;
  // random SPD gram compatible with standard J
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd m = Eigen::MatrixXd::NullaryExpr(d, d, [&](Eigen::Index, Eigen::Index) { return gauss(rng); });
  Eigen::MatrixXd g0 = m * m.transpose() + 4.0 * Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd jstd = LinearComplexStructure::standard(d).matrix();
  Eigen::MatrixXd g = 0.5 * (g0 + jstd.transpose() * g0 * jstd);  // force compatibility
  LinearComplexStructure J(jstd, g);
  HermitianFrame fr = J.build_frame(5);
  // frame orthonormality wrt g
  Eigen::MatrixXd gram = fr.vectors.transpose() * g * fr.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
  // second of each pair is J of the first
  for (int i = 0; i < d / 2; ++i)
    CHECK((fr.vectors.col(2 * i + 1) - jstd * fr.vectors.col(2 * i)).cwiseAbs().maxCoeff() < 1e-10);
  // star-squared sign on 1-forms: (-1)^{1*(4-1)} = -1
  GradedForm a = random_form(d, 1, rng, true);
  CHECK((hodge_star(hodge_star(a, fr), fr) + a).max_abs_coeff() < 1e-10);
}

TEST_CASE("pq projection: types of omega and dz wedge") {
  const int d = 4, n = 2;
  auto J = LinearComplexStructure::standard(d);
  GradedForm om = J.fundamental_form();
  CHECK((pq_project(om, J, 1, 1) - om).max_abs_coeff() < 1e-12);
  CHECK(pq_project(om, J, 2, 0).max_abs_coeff() < 1e-12);
  CHECK(pq_project(om, J, 0, 2).max_abs_coeff() < 1e-12);

  // dz^1 ∧ dz^2 is type (2,0)
  GradedForm dz1(d), dz2(d);
  dz1.set({1}, 1.0);
  dz1.set({2}, Complex(0, 1));
  dz2.set({3}, 1.0);
  dz2.set({4}, Complex(0, 1));
  GradedForm hol = wedge(dz1, dz2);
  CHECK((pq_project(hol, J, 2, 0) - hol).max_abs_coeff() < 1e-12);
  CHECK(pq_project(hol, J, 1, 1).max_abs_coeff() < 1e-12);

  // real 2-form: (0,2) part conjugate of (2,0) part; parts sum to the form
  std::mt19937_64 rng(5);
  GradedForm a = random_form(d, 2, rng, /*real=*/true);
  GradedForm a20 = pq_project(a, J, 2, 0);
  GradedForm a02 = pq_project(a, J, 0, 2);
  GradedForm a11 = pq_project(a, J, 1, 1);
  CHECK((a02 - a20.conjugate()).max_abs_coeff() < 1e-12);
  CHECK((a20 + a11 + a02 - a).max_abs_coeff() < 1e-12);
  // idempotence
  CHECK((pq_project(a11, J, 1, 1) - a11).max_abs_coeff() < 1e-12);
  (void)n;
}

TEST_CASE("lefschetz: powers of 1 and primitivity of (1,1) forms") {
  const int d = 4, n = 2;
  auto J = LinearComplexStructure::standard(d);
  GradedForm om = J.fundamental_form();
  GradedForm one = GradedForm::scalar(d, 1.0);
  CHECK((lefschetz(one, om) - om).max_abs_coeff() < 1e-12);
  CHECK((wedge_pow(om, n) - GradedForm::volume(d) * factorial(n)).max_abs_coeff() < 1e-12);

  // primitive (1,1) form u at n=2: L^2 u = 0 (degree exceeds 2n)
  GradedForm u(d);
  u.set({1, 2}, 1.0);
  u.set({3, 4}, -1.0);  // trace-free: primitive
  CHECK(dual_lefschetz(u, J).max_abs_coeff() < 1e-12);
  CHECK(wedge(wedge(u, om), om).max_abs_coeff() < 1e-12);
}

TEST_CASE("dual lefschetz: examples and adjointness") {
  const int d = 6, n = 3;
  auto J = LinearComplexStructure::standard(d);
  HermitianFrame fr = J.build_frame();
  GradedForm om = J.fundamental_form();

  GradedForm lam_om = dual_lefschetz(om, J);
  CHECK(std::abs(lam_om.coeff({}) - Complex(n)) < 1e-12);
  CHECK(dual_lefschetz(GradedForm::monomial(d, {1, 3}), J).max_abs_coeff() < 1e-12);
  CHECK(dual_lefschetz(GradedForm::scalar(d, 1.0), J).max_abs_coeff() < 1e-12);

  std::mt19937_64 rng(29);
  for (int k = 2; k <= 4; ++k) {
    for (int trial = 0; trial < 200; ++trial) {
      GradedForm u = random_form(d, k, rng);
      GradedForm v = random_form(d, k - 2, rng);
      Complex lhs = inner(dual_lefschetz(u, J), v, fr);
      Complex rhs = inner(u, lefschetz(v, om), fr);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("primitive decomposition") {
  const int d = 6, n = 3;
  auto J = LinearComplexStructure::standard(d);
  GradedForm om = J.fundamental_form();

  // a primitive form decomposes as itself at level 0
  GradedForm u(d);
  u.set({1, 2}, 1.0);
  u.set({3, 4}, -1.0);
  auto pieces = primitive_decompose(u, J);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].level == 0);
  CHECK((pieces[0].form - u).max_abs_coeff() < 1e-12);

  // omega = L(1): single piece at level 1
  auto om_pieces = primitive_decompose(om, J);
  REQUIRE(om_pieces.size() == 1);
  CHECK(om_pieces[0].level == 1);
  CHECK(std::abs(om_pieces[0].form.coeff({}) - Complex(1.0)) < 1e-12);

  // random 2-form: a = a_prim + (Λa/n) ω, both conditions verified
  std::mt19937_64 rng(31);
  GradedForm a = random_form(d, 2, rng);
  auto ap = primitive_decompose(a, J);
  GradedForm recon(d);
  for (const auto& piece : ap) {
    recon += wedge(piece.form, wedge_pow(om, piece.level));
    if (piece.level == 0) {
      CHECK(dual_lefschetz(piece.form, J).max_abs_coeff() < 1e-10);
      // primitive characterization: L^{n-k+1} kills it
      CHECK(wedge(piece.form, wedge_pow(om, n - 2 + 1)).max_abs_coeff() < 1e-10);
    }
  }
  CHECK((recon - a).max_abs_coeff() < 1e-10 * std::max(1.0, a.max_abs_coeff()));
  GradedForm expected_scalar = a - wedge(GradedForm::scalar(d, dual_lefschetz(a, J).coeff({}) / double(n)), om);
  CHECK(dual_lefschetz(expected_scalar, J).max_abs_coeff() < 1e-10);

  // degrees above n route through the bijection
  GradedForm high = wedge(a, om);  // degree 4
  auto hp = primitive_decompose(high, J);
  GradedForm recon_high(d);
  for (const auto& piece : hp) recon_high += wedge(piece.form, wedge_pow(om, piece.level));
  CHECK((recon_high - high).max_abs_coeff() < 1e-9 * std::max(1.0, high.max_abs_coeff()));
}

TEST_CASE("lefschetz bijectivity round trip") {
  std::mt19937_64 rng(37);
  for (int n : {2, 3}) {
    const int d = 2 * n;
    auto J = LinearComplexStructure::standard(d);
    GradedForm om = J.fundamental_form();
    for (int k = 0; k <= n; ++k) {
      GradedForm a = random_form(d, k, rng);
      GradedForm image = wedge(a, wedge_pow(om, n - k));
      GradedForm back = lefschetz_invert(image, J);
      CHECK((back - a).max_abs_coeff() < 1e-10 * std::max(1.0, a.max_abs_coeff()));
    }
  }
}

TEST_CASE("riemann-hodge pairing: scalars, type orthogonality, positivity") {
  const int d = 6, n = 3;
  auto J = LinearComplexStructure::standard(d);
  GradedForm om = J.fundamental_form();
  GradedForm one = GradedForm::scalar(d, 1.0);
  CHECK(std::abs(riemann_hodge_pair(one, one, om) - Complex(factorial(n))) < 1e-12);

  // type orthogonality: (1,1) against (2,0)
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    GradedForm a = pq_project(random_form(d, 2, rng), J, 1, 1);
    GradedForm b = pq_project(random_form(d, 2, rng), J, 2, 0);
    CHECK(std::abs(riemann_hodge_pair(a, b, om)) < 1e-12 * std::max(1.0, a.max_abs_coeff() * b.max_abs_coeff()));
  }

  // positivity on primitive (1,1): RH(u, conj u) = (n-2)! ||u||^2
  HermitianFrame fr = J.build_frame();
  for (int trial = 0; trial < 50; ++trial) {
    GradedForm raw = pq_project(random_form(d, 2, rng), J, 1, 1);
    auto pieces = primitive_decompose(raw, J);
    GradedForm u(d);
    for (const auto& piece : pieces)
      if (piece.level == 0) u = piece.form;
    if (u.empty()) continue;
    Complex val = riemann_hodge_pair(u, u.conjugate(), om);  // i^{1-1} = 1
    double norm2 = inner(u, u, fr).real();
    CHECK(std::abs(val - Complex(factorial(n - 2) * norm2)) < 1e-10 * std::max(1.0, norm2));
  }
}

TEST_CASE("michelsohn root") {
  // fixed point at the identity
  for (int n : {2, 3, 4}) {
    HermitianMatrixRep id{Eigen::MatrixXcd::Identity(n, n)};
    HermitianMatrixRep sigma = michelsohn_power(id);
    HermitianMatrixRep back = michelsohn_root(sigma);
    CHECK((back.entries - id.entries).cwiseAbs().maxCoeff() < 1e-12);
  }

  // matrix-level power agrees with the wedge-expansion oracle
  std::mt19937_64 rng(43);
  std::normal_distribution<double> gauss;
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::NullaryExpr(
          n, n, [&](Eigen::Index, Eigen::Index) { return Complex(gauss(rng), gauss(rng)); });
      Eigen::MatrixXcd a = m * m.adjoint() + 0.5 * Eigen::MatrixXcd::Identity(n, n);
      HermitianMatrixRep rep{a};
      GradedForm oracle = wedge_pow(form_from_hermitian_11(rep), n - 1);
      HermitianMatrixRep via_matrix = michelsohn_power(rep);
      GradedForm matrix_form = form_from_hermitian_n1n1(via_matrix);
      CHECK((oracle - matrix_form).max_abs_coeff() < 1e-9 * std::max(1.0, oracle.max_abs_coeff()));
    }
  }

  // diag(1,2,3) round trip at n=3
  Eigen::MatrixXcd diag = Eigen::Vector3cd(1.0, 2.0, 3.0).asDiagonal();
  HermitianMatrixRep sigma = michelsohn_power(HermitianMatrixRep{diag});
  HermitianMatrixRep root = michelsohn_root(sigma);
  CHECK((root.entries - diag).cwiseAbs().maxCoeff() < 1e-10);

  // round-trip property over random positive matrices, n=3
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::NullaryExpr(
        3, 3, [&](Eigen::Index, Eigen::Index) { return Complex(gauss(rng), gauss(rng)); });
    Eigen::MatrixXcd a = m * m.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(3, 3);
    HermitianMatrixRep rep{a};
    HermitianMatrixRep round = michelsohn_root(michelsohn_power(rep));
    CHECK((round.entries - a).cwiseAbs().maxCoeff() < 1e-10 * a.cwiseAbs().maxCoeff());
  }

  // non-positive input rejected
  Eigen::MatrixXcd bad = Eigen::Vector2cd(1.0, -1.0).asDiagonal();
  CHECK_THROWS_AS(michelsohn_root(HermitianMatrixRep{bad}), std::domain_error);
}

TEST_CASE("primitive characterization property") {
  std::mt19937_64 rng(47);
  const int d = 6, n = 3;
  auto J = LinearComplexStructure::standard(d);
  GradedForm om = J.fundamental_form();
  for (int k = 1; k <= n; ++k) {
    for (int trial = 0; trial < 50; ++trial) {
      GradedForm a = random_form(d, k, rng);
      double lam_resid = dual_lefschetz(a, J).max_abs_coeff();
      double pow_resid = wedge(a, wedge_pow(om, n - k + 1)).max_abs_coeff();
      bool lam_zero = lam_resid < 1e-10, pow_zero = pow_resid < 1e-10;
      CHECK(lam_zero == pow_zero);  // random forms are generically non-primitive
    }
  }
}

TEST_CASE("graded form json round trip") {
  std::mt19937_64 rng(53);
  GradedForm a = random_form(6, 2, rng);
  GradedForm b = cpsys::form_from_json(cpsys::form_to_json(a));
  CHECK((a - b).max_abs_coeff() < 1e-15);
}

TEST_CASE("pruning does not change algebra up to tolerance") {
  std::mt19937_64 rng(59);
  GradedForm a = random_form(6, 2, rng);
  GradedForm tiny(6);
  tiny.set({1, 4}, 1e-13);
  GradedForm sum = a + tiny;
  CHECK((wedge(sum.pruned(1e-12), a) - wedge(sum, a)).max_abs_coeff() < 1e-10);
}
