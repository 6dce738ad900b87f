#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <unsupported/Eigen/KroneckerProduct>

#include "pmopt/index_sets.hpp"
#include "pmopt/rng.hpp"
#include "pmopt/tms.hpp"

using namespace pmopt;

namespace {

std::shared_ptr<const UnionIndex> make_index(const SparsityPattern& p, int k, bool dense = false) {
  return std::make_shared<UnionIndex>(p, k, dense);
}

// moment matrix of one basis point: [u]_t [u]_t'
Eigen::MatrixXd dirac_outer(const CliqueMomentView& view, int t, const std::vector<double>& u) {
  PowerIndexSet basis(view.clique(), t);
  Eigen::VectorXd v(basis.size());
  for (int i = 0; i < basis.size(); ++i) v[i] = basis[i].eval(u);
  return v * v.transpose();
}

}  // namespace

TEST_CASE("index set sizes and ordering") {
  PowerIndexSet s1(Clique(0, {1, 2}), 1);
  REQUIRE(s1.size() == 3);
  CHECK(s1[0].is_constant());
  CHECK(s1[1] == Exponent::unit(1));
  CHECK(s1[2] == Exponent::unit(2));

  SparsityPattern p(3, {{1, 2}, {2, 3}});
  UnionIndex u(p, 1);
  CHECK(u.size() == 9);

  PowerIndexSet s5(Clique(0, {2, 4, 6, 8, 9}), 3);
  CHECK(s5.size() == 56);  // C(8,3)

  // graded lex: within degree 2 on {1,2}: x1^2, x1 x2, x2^2
  PowerIndexSet s2(Clique(0, {1, 2}), 2);
  CHECK(s2[3] == Exponent::unit(1, 2));
  CHECK(s2[4] == Exponent::unit(1).times(Exponent::unit(2)));
  CHECK(s2[5] == Exponent::unit(2, 2));
}

TEST_CASE("riesz functional") {
  SparsityPattern p(3, {{1, 2}, {2, 3}});
  auto idx = make_index(p, 2);
  std::vector<double> u{0.3, -1.2, 2.0};
  Tms y = dirac_tms(u, idx);

  CHECK(riesz(Polynomial::constant(3, 1.0), CliqueMomentView(y, 0)) == Catch::Approx(1.0));

  // riesz on a Dirac tms evaluates the polynomial
  Polynomial q(3);
  q.add_term(Exponent({{1, 2}, {2, 1}}), 0.7);
  q.add_term(Exponent({{2, 2}}), -2.0);
  CHECK(riesz(q, CliqueMomentView(y, 0)) == Catch::Approx(q.eval(u)));

  // <f, y> = sum_i <f_i, y_Di> at the Dirac of (1,1,1) for the explicit instance
  Polynomial f1(3);
  f1.add_term(Exponent({{1, 1}, {2, 1}}), -1.0);
  Polynomial d = Polynomial::variable(3, 3) - Polynomial::variable(3, 2);
  Polynomial f2 = d * d;
  Tms ones = dirac_tms(std::vector<double>{1.0, 1.0, 1.0}, idx);
  double total = riesz(f1, CliqueMomentView(ones, 0)) + riesz(f2, CliqueMomentView(ones, 1));
  CHECK(total == Catch::Approx(-1.0));

  // degree overflow and support violations are rejected
  Polynomial deg5 = Polynomial::monomial(3, Exponent({{1, 5}}), 1.0);
  CHECK_THROWS_AS(riesz(deg5, CliqueMomentView(y, 0)), std::out_of_range);
  CHECK_THROWS_AS(riesz(Polynomial::variable(3, 3), CliqueMomentView(y, 0)), std::out_of_range);
}

TEST_CASE("moment matrix") {
  SparsityPattern p(2, {{1, 2}});
  auto idx = make_index(p, 2);
  std::vector<double> u{2.0, -1.0};  // small integers: powers and products are exact
  Tms y = dirac_tms(u, idx);
  CliqueMomentView v(y, 0);

  Eigen::MatrixXd m = moment_matrix(v, 2);
  Eigen::MatrixXd outer = dirac_outer(v, 2, u);
  CHECK((m - outer).cwiseAbs().maxCoeff() == 0.0);
  std::vector<double> ur{1.7, -0.4};
  Tms yr2 = dirac_tms(ur, idx);
  CliqueMomentView vr2(yr2, 0);
  CHECK((moment_matrix(vr2, 2) - dirac_outer(vr2, 2, ur)).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);

  // one-variable Hankel: y = (1, 1, 2, 4, 8)
  SparsityPattern p1(1, {{1}});
  auto idx1 = make_index(p1, 2);
  Eigen::VectorXd vals(5);
  vals << 1, 1, 2, 4, 8;
  Tms y1(idx1, vals);
  Eigen::MatrixXd h = moment_matrix(CliqueMomentView(y1, 0), 2);
  Eigen::MatrixXd expect(3, 3);
  expect << 1, 1, 2, 1, 2, 4, 2, 4, 8;
  CHECK(h.isApprox(expect));

  CHECK_THROWS_AS(moment_matrix(v, 3), std::invalid_argument);
}

TEST_CASE("moment matrix reproduces the printed order-3 grid") {
  // moments of the tight 3rd-order solution on the clique {1,2}; unique
  // values indexed by (i,j) powers of x1, x2 up to degree 6
  const double s = 1.0 / std::sqrt(5.0);  // 0.4472
  auto mom = [&](int i, int j) -> double {
    if (j % 2 == 1) return 0.0;
    double x2sq = 2.0 * s;  // per-atom value of x2^2
    double val = std::pow(s, i) * std::pow(x2sq, j / 2);
    if (i == 6 && j == 0) return 0.6917;  // degree-6 closure from the solver
    return val;
  };
  SparsityPattern p(2, {{1, 2}});
  auto idx = make_index(p, 3);
  Eigen::VectorXd vals(idx->size());
  for (int t = 0; t < idx->size(); ++t) {
    const Exponent& e = (*idx)[t];
    vals[t] = mom(e.power(1), e.power(2));
  }
  Tms y(idx, vals);
  Eigen::MatrixXd m = moment_matrix(CliqueMomentView(y, 0), 3);
  REQUIRE(m.rows() == 10);
  CHECK(m(0, 1) == Catch::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-9));
  CHECK(m(0, 5) == Catch::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-9));
  CHECK(m(6, 6) == Catch::Approx(0.6917));
  CHECK(m(9, 9) == Catch::Approx(8.0 / (5.0 * std::sqrt(5.0))).epsilon(1e-9));
  CHECK(m(5, 5) == Catch::Approx(4.0 / 5.0).epsilon(1e-9));
  CHECK((m - m.transpose()).norm() == 0.0);
}

TEST_CASE("localizing matrix") {
  SparsityPattern p(2, {{1, 2}});
  auto idx = make_index(p, 2);
  std::vector<double> u{0.8, -0.5};
  Tms y = dirac_tms(u, idx);
  CliqueMomentView v(y, 0);

  // constant identity: block-diagonal copies of the moment matrix
  MatrixPolynomial id = MatrixPolynomial::identity(2, 2);
  Eigen::MatrixXd l = localizing_matrix(id, v, 2);
  Eigen::MatrixXd m = moment_matrix(v, 2);
  REQUIRE(l.rows() == 2 * m.rows());
  CHECK(l.topLeftCorner(m.rows(), m.cols()).isApprox(m));
  CHECK(l.bottomRightCorner(m.rows(), m.cols()).isApprox(m));
  CHECK(l.topRightCorner(m.rows(), m.cols()).cwiseAbs().maxCoeff() == 0.0);

  // Dirac moments of a feasible point: L = G(u) (x) [u]_k2 [u]_k2'
  MatrixPolynomial g(2, 2);
  g.set(0, 0, Polynomial::constant(2, 2.0) - Polynomial::variable(2, 1) * Polynomial::variable(2, 1));
  g.set(0, 1, Polynomial::variable(2, 1) * Polynomial::variable(2, 2));
  g.set(1, 1, Polynomial::constant(2, 1.5));
  Eigen::MatrixXd lg = localizing_matrix(g, v, 2);
  PowerIndexSet basis(v.clique(), 1);  // k2 = 2 - 1
  Eigen::VectorXd uvec(basis.size());
  for (int i = 0; i < basis.size(); ++i) uvec[i] = basis[i].eval(u);
  Eigen::MatrixXd outer = uvec * uvec.transpose();
  Eigen::MatrixXd kron = Eigen::kroneckerProduct(g.eval(u), outer).eval();
  CHECK(lg.isApprox(kron, 1e-12));

  // scalar G = 1 - x^2 with uniform measure moments on [-1,1]
  SparsityPattern p1(1, {{1}});
  auto idx1 = make_index(p1, 2);
  Eigen::VectorXd vals(5);
  for (int j = 0; j <= 4; ++j) vals[j] = (j % 2 == 0) ? 1.0 / (j + 1) : 0.0;
  Tms yu(idx1, vals);
  Polynomial gs = Polynomial::constant(1, 1.0) - Polynomial::variable(1, 1) * Polynomial::variable(1, 1);
  Eigen::MatrixXd ls = localizing_matrix(gs, CliqueMomentView(yu, 0), 2);
  Eigen::MatrixXd expect(2, 2);
  expect << 1.0 - 1.0 / 3.0, 0.0, 0.0, 1.0 / 3.0 - 1.0 / 5.0;
  CHECK(ls.isApprox(expect, 1e-12));
}

TEST_CASE("gi_of_y and the principal submatrix relation") {
  SparsityPattern p(3, {{1}, {2, 3}});
  auto idx = make_index(p, 1);
  MatrixPolynomial g2(3, 3);
  g2.set(0, 0, Polynomial::variable(3, 2) + Polynomial::variable(3, 3));
  g2.set(0, 1, Polynomial::variable(3, 2));
  g2.set(1, 1, Polynomial::variable(3, 2));
  g2.set(2, 2, Polynomial::constant(3, 1.0) - Polynomial::variable(3, 2));
  std::vector<double> u{0.0, 1.0, 1.0};
  Tms y = dirac_tms(u, idx);
  CliqueMomentView v(y, 1);
  Eigen::MatrixXd gm = gi_of_y(g2, v);
  Eigen::MatrixXd expect(3, 3);
  expect << 2, 1, 0, 1, 1, 0, 0, 0, 0;
  CHECK(gm.isApprox(expect, 1e-14));
  CHECK(gm.isApprox(g2.eval(u), 1e-14));

  // constant G: gi_of_y returns G itself for unit-mass y
  MatrixPolynomial cg =
      MatrixPolynomial::from_constant((Eigen::MatrixXd(2, 2) << 3, 1, 1, 2).finished(), 3);
  CHECK(gi_of_y(cg, v).isApprox((Eigen::MatrixXd(2, 2) << 3, 1, 1, 2).finished()));

  // principal submatrix: (1,1) entries of the localizing blocks, exactly
  RandomStream rng(4);
  SparsityPattern pr(2, {{1, 2}});
  auto idxr = make_index(pr, 2);
  Eigen::VectorXd vals(idxr->size());
  for (int i = 0; i < vals.size(); ++i) vals[i] = rng.normal();
  vals[0] = 1.0;
  Tms yr(idxr, vals);
  CliqueMomentView vr(yr, 0);
  MatrixPolynomial gr(2, 2);
  gr.set(0, 0, Polynomial::constant(2, 1.0) - Polynomial::variable(2, 1) * Polynomial::variable(2, 1));
  gr.set(0, 1, Polynomial::variable(2, 2));
  gr.set(1, 1, Polynomial::constant(2, 2.0) - Polynomial::variable(2, 2) * Polynomial::variable(2, 2));
  Eigen::MatrixXd lr = localizing_matrix(gr, vr, 2);
  Eigen::MatrixXd sub = gi_of_y(gr, vr);
  PowerIndexSet b1(vr.clique(), 1);
  const int nb = b1.size();
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) CHECK(sub(s, t) == lr(s * nb, t * nb));
}

TEST_CASE("dirac tms") {
  SparsityPattern p(2, {{1, 2}});
  auto idx = make_index(p, 2);
  Tms y0 = dirac_tms(std::vector<double>{0.0, 0.0}, idx);
  CHECK(y0.values()[0] == 1.0);
  CHECK(y0.values().tail(idx->size() - 1).cwiseAbs().maxCoeff() == 0.0);

  Tms y1 = dirac_tms(std::vector<double>{1.0, 1.0}, idx);
  CHECK((y1.values().array() == 1.0).all());

  // mixtures of two distinct points give a rank-2 moment matrix
  Tms ya = dirac_tms(std::vector<double>{0.5, -1.0}, idx);
  Tms yb = dirac_tms(std::vector<double>{-0.3, 0.7}, idx);
  Tms mix(idx, 0.5 * ya.values() + 0.5 * yb.values());
  Eigen::MatrixXd m = moment_matrix(CliqueMomentView(mix, 0), 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  int rank = static_cast<int>((es.eigenvalues().array() > 1e-10).count());
  CHECK(rank == 2);
}

TEST_CASE("riesz multiplicativity on dirac moments") {
  RandomStream rng(21);
  SparsityPattern p(3, {{1, 2, 3}});
  auto idx = make_index(p, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u{rng.normal(), rng.normal(), rng.normal()};
    Tms y = dirac_tms(u, idx);
    CliqueMomentView v(y, 0);
    Polynomial a(3), b(3);
    a.add_term(Exponent({{1, 1}, {2, 1}}), rng.normal());
    a.add_term(Exponent({{3, 1}}), rng.normal());
    b.add_term(Exponent({{2, 2}}), rng.normal());
    b.add_term(Exponent{}, rng.normal());
    double lhs = riesz(a * b, v);
    double rhs = riesz(a, v) * riesz(b, v);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("dense union index") {
  SparsityPattern p(3, {{1, 2}, {2, 3}});
  UnionIndex dense(p, 1, true);
  CHECK(dense.size() == 10);  // C(5,2)
  CHECK(dense.contains(Exponent({{1, 1}, {3, 1}})));
  UnionIndex sparse(p, 1, false);
  CHECK_FALSE(sparse.contains(Exponent({{1, 1}, {3, 1}})));
}
