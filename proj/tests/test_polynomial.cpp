#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "pmopt/matrix_polynomial.hpp"
#include "pmopt/polynomial.hpp"
#include "pmopt/rng.hpp"

using namespace pmopt;

namespace {

Polynomial random_poly(RandomStream& rng, int n, int deg, int terms) {
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::pair<int, int>> powers;
    int budget = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(deg + 1));
    for (int v = 1; v <= n && budget > 0; ++v) {
      int e = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(budget + 1));
      if (e > 0) powers.emplace_back(v, e);
      budget -= e;
    }
    p.add_term(Exponent(powers), rng.normal());
  }
  return p;
}

std::vector<double> random_point(RandomStream& rng, int n) {
  std::vector<double> u(static_cast<std::size_t>(n));
  for (auto& v : u) v = rng.normal();
  return u;
}

}  // namespace

TEST_CASE("graded lex ordering of exponents") {
  Exponent one{};
  Exponent x1 = Exponent::unit(1);
  Exponent x2 = Exponent::unit(2);
  Exponent x1sq = Exponent::unit(1, 2);
  Exponent x1x2 = x1.times(x2);
  Exponent x2sq = Exponent::unit(2, 2);
  CHECK(grlex_less(one, x1));
  CHECK(grlex_less(x1, x2));
  CHECK(grlex_less(x2, x1sq));
  CHECK(grlex_less(x1sq, x1x2));
  CHECK(grlex_less(x1x2, x2sq));
  CHECK_FALSE(grlex_less(x2sq, x1x2));
  CHECK_FALSE(grlex_less(x1, x1));
}

TEST_CASE("poly_eval basics") {
  // f = -x1 x2 + (x3 - x2)^2
  Polynomial f(3);
  f.add_term(Exponent({{1, 1}, {2, 1}}), -1.0);
  Polynomial diffsq = Polynomial::variable(3, 3) - Polynomial::variable(3, 2);
  f += diffsq * diffsq;
  CHECK(f.eval({1.0, 1.0, 1.0}) == Catch::Approx(-1.0));

  CHECK(Polynomial::zero(4).eval({0.3, -2.0, 5.0, 1.0}) == 0.0);

  Polynomial f1 = Polynomial::variable(3, 1) - Polynomial::variable(3, 3);
  CHECK(f1.eval({2.0, 0.0, 5.0}) == Catch::Approx(-3.0));

  CHECK_THROWS_AS(f1.eval(std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("poly_diff and hessian") {
  // d/dx1 of x1^2 x2 = 2 x1 x2
  Polynomial p = Polynomial::monomial(2, Exponent({{1, 2}, {2, 1}}), 1.0);
  Polynomial d = p.diff(1);
  CHECK(d.num_terms() == 1);
  CHECK(d.coeff(Exponent({{1, 1}, {2, 1}})) == Catch::Approx(2.0));

  // hessian of q(x2,x3) = x2^4 + x3^4/2 + 2 x2^2 x3^2 over 3 ambient vars
  Polynomial q(3);
  q.add_term(Exponent({{2, 4}}), 1.0);
  q.add_term(Exponent({{3, 4}}), 0.5);
  q.add_term(Exponent({{2, 2}, {3, 2}}), 2.0);
  MatrixPolynomial h = hessian(q);
  CHECK(h(1, 1).coeff(Exponent({{2, 2}})) == Catch::Approx(12.0));
  CHECK(h(1, 1).coeff(Exponent({{3, 2}})) == Catch::Approx(4.0));
  CHECK(h(1, 2).coeff(Exponent({{2, 1}, {3, 1}})) == Catch::Approx(8.0));
  CHECK(h(2, 2).coeff(Exponent({{3, 2}})) == Catch::Approx(6.0));
  CHECK(h(2, 2).coeff(Exponent({{2, 2}})) == Catch::Approx(4.0));

  CHECK_THROWS_AS(p.diff(3), std::invalid_argument);
}

TEST_CASE("gradient vanishes at the stationary point of a quartic") {
  // f2 = x3^4 + x4^4 + x5^4 - x3 x4 x5 over 5 ambient variables
  Polynomial f(5);
  f.add_term(Exponent({{3, 4}}), 1.0);
  f.add_term(Exponent({{4, 4}}), 1.0);
  f.add_term(Exponent({{5, 4}}), 1.0);
  f.add_term(Exponent({{3, 1}, {4, 1}, {5, 1}}), -1.0);
  std::vector<double> u{0.0, 0.0, 0.25, 0.25, 0.25};
  auto g = gradient(f);
  for (int v = 3; v <= 5; ++v) CHECK(std::abs(g[static_cast<std::size_t>(v - 1)].eval(u)) < 1e-12);
}

TEST_CASE("product rule under evaluation (random)") {
  RandomStream rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Polynomial p = random_poly(rng, 3, 3, 5);
    Polynomial q = random_poly(rng, 3, 2, 4);
    auto u = random_point(rng, 3);
    double lhs = (p * q).eval(u);
    double rhs = p.eval(u) * q.eval(u);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("central finite difference matches formal derivative") {
  RandomStream rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial p = random_poly(rng, 3, 4, 6);
    auto u = random_point(rng, 3);
    for (int v = 1; v <= 3; ++v) {
      const double h = 1e-4;
      auto up = u, um = u;
      up[static_cast<std::size_t>(v - 1)] += h;
      um[static_cast<std::size_t>(v - 1)] -= h;
      double fd = (p.eval(up) - p.eval(um)) / (2 * h);
      double exact = p.diff(v).eval(u);
      CHECK(std::abs(fd - exact) <= 1e-6 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("hessian evaluations are exactly symmetric") {
  RandomStream rng(3);
  Polynomial p = random_poly(rng, 4, 4, 8);
  MatrixPolynomial h = hessian(p);
  auto u = random_point(rng, 4);
  Eigen::MatrixXd m = h.eval(u);
  CHECK((m - m.transpose()).norm() == 0.0);
}

TEST_CASE("poly_ops") {
  Polynomial x1 = Polynomial::variable(2, 1);
  Polynomial x2 = Polynomial::variable(2, 2);
  Polynomial prod = (x1 + x2) * (x1 - x2);
  CHECK(prod.coeff(Exponent({{1, 2}})) == Catch::Approx(1.0));
  CHECK(prod.coeff(Exponent({{2, 2}})) == Catch::Approx(-1.0));
  CHECK(prod.num_terms() == 2);

  // substitute z1 <- z1 - 2 into z1^2
  Polynomial z1sq = Polynomial::monomial(3, Exponent({{1, 2}}), 1.0);
  Polynomial shifted = z1sq.compose_shift({2.0, 0.0, 0.0});
  CHECK(shifted.coeff(Exponent({{1, 2}})) == Catch::Approx(1.0));
  CHECK(shifted.coeff(Exponent({{1, 1}})) == Catch::Approx(-4.0));
  CHECK(shifted.coeff(Exponent{}) == Catch::Approx(4.0));

  // top-left entry of F(z - c1) with F11 = z1^2 + z3^2, c1 = (2,0,0)
  Polynomial f11(3);
  f11.add_term(Exponent({{1, 2}}), 1.0);
  f11.add_term(Exponent({{3, 2}}), 1.0);
  Polynomial g11 = f11.compose_shift({2.0, 0.0, 0.0});
  Polynomial expect = (Polynomial::variable(3, 1) - Polynomial::constant(3, 2.0)) *
                          (Polynomial::variable(3, 1) - Polynomial::constant(3, 2.0)) +
                      Polynomial::variable(3, 3) * Polynomial::variable(3, 3);
  CHECK(g11 == expect);

  std::vector<int> clique{1, 2};
  CHECK_THROWS_AS(f11.restricted_to(clique), std::invalid_argument);
  CHECK_NOTHROW(prod.restricted_to(clique));
}

TEST_CASE("matpoly_eval and min_eig") {
  // G1 of the explicit 3-variable instance, evaluated on its clique (x1, x2)
  MatrixPolynomial g1(2, 3);
  g1.set(0, 0, Polynomial::variable(3, 1));
  g1.set(0, 1, Polynomial::monomial(3, Exponent({{1, 1}, {2, 1}}), 1.0));
  g1.set(1, 1, Polynomial::monomial(3, Exponent({{2, 2}}), 1.0));
  Eigen::MatrixXd m = g1.eval({1.0, 1.0, 0.0});
  CHECK(m(0, 0) == Catch::Approx(1.0));
  CHECK(m(0, 1) == Catch::Approx(1.0));
  CHECK(m(1, 0) == Catch::Approx(1.0));
  CHECK(m(1, 1) == Catch::Approx(1.0));
  CHECK(std::abs(g1.min_eig({1.0, 1.0, 0.0})) < 1e-12);

  MatrixPolynomial id = MatrixPolynomial::identity(4, 2);
  CHECK(id.min_eig({13.0, -4.0}) == Catch::Approx(1.0));
  CHECK(id.eval({0.0, 0.0}).isApprox(Eigen::MatrixXd::Identity(4, 4)));
}

TEST_CASE("zero pruning and degree conventions") {
  Polynomial p(2);
  p.add_term(Exponent({{1, 1}}), 1.0);
  p.add_term(Exponent({{1, 1}}), -1.0 + 0.5e-14);
  CHECK(p.is_zero());
  CHECK(p.degree() == 0);
  CHECK(Polynomial::constant(2, 3.0).degree() == 0);
}
