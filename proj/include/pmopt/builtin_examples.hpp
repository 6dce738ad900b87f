#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmopt/appkit.hpp"
#include "pmopt/problem.hpp"

namespace pmopt {

// Bundled example problems, addressable by id from the CLI (`examples run
// <id>`).  Each carries reference values used by the example runner to
// report PASS/FAIL.
struct BuiltinExample {
  std::string id;
  std::string description;
  std::function<ProblemInstance()> build;
  int k_max = 0;                   // order the hierarchy is run to
  bool expect_infeasible = false;  // relaxation at k_max proves infeasibility
  bool bound_only = false;         // skip minimizer matching
  std::optional<double> expected_bound;
  std::vector<std::vector<double>> expected_minimizers;
  double bound_tol = 1e-3;
  double point_tol = 2e-3;
  // coordinates checked on every extracted minimizer (1-based variable, value)
  std::vector<std::pair<int, double>> expected_coords;
};

namespace detail {

inline Polynomial pv(int n, int i) { return Polynomial::variable(n, i); }
inline Polynomial pc(int n, double v) { return Polynomial::constant(n, v); }

inline ProblemInstance make_ex1_1() {
  const int n = 3;
  SparsityPattern pat(n, {{1, 2}, {2, 3}});
  Polynomial f1(n);
  f1.add_term(Exponent({{1, 1}, {2, 1}}), -1.0);
  Polynomial d = pv(n, 3) - pv(n, 2);
  Polynomial f2 = d * d;
  MatrixPolynomial g1(2, n);
  g1.set(0, 0, pv(n, 1));
  g1.set(0, 1, pv(n, 1) * pv(n, 2));
  g1.set(1, 1, pv(n, 2) * pv(n, 2));
  MatrixPolynomial g2(3, n);
  g2.set(0, 0, pv(n, 2) + pv(n, 3));
  g2.set(0, 1, pv(n, 2));
  g2.set(1, 1, pv(n, 2));
  g2.set(2, 2, pc(n, 1.0) - pv(n, 2));
  return ProblemInstance(pat, {f1, f2}, {g1, g2});
}

inline ProblemInstance make_ex3_3() {
  const int n = 3;
  SparsityPattern pat(n, {{1, 2}, {2, 3}});
  Polynomial f1 = pv(n, 1);
  Polynomial f2 = -pv(n, 3);
  MatrixPolynomial g1(2, n);
  g1.set(0, 1, pv(n, 1) - pv(n, 2));
  g1.set(1, 1, pv(n, 2) * pv(n, 2) - pv(n, 1) * pv(n, 1));
  MatrixPolynomial g2(2, n);
  g2.set(0, 1, pv(n, 2) - pv(n, 3));
  g2.set(1, 1, pv(n, 3) * pv(n, 3) - pv(n, 2) * pv(n, 2));
  return ProblemInstance(pat, {f1, f2}, {g1, g2});
}

inline ProblemInstance make_ex3_5() {
  const int n = 3;
  SparsityPattern pat(n, {{1, 2}, {2, 3}});
  Polynomial f1 = pv(n, 1);
  Polynomial f2 = -pv(n, 3);
  std::vector<MatrixPolynomial> blocks;
  for (int i = 1; i <= 2; ++i) {
    Polynomial q = pv(n, i) * pv(n, i) + pv(n, i + 1) * pv(n, i + 1);
    MatrixPolynomial g(2, n);
    g.set(0, 1, q);
    g.set(1, 1, q);
    blocks.push_back(g);
  }
  return ProblemInstance(pat, {f1, f2}, blocks);
}

inline ProblemInstance make_ex4_4() {
  const int n = 3;
  SparsityPattern pat(n, {{1, 2}, {2, 3}});
  Polynomial f1(n);
  f1.add_term(Exponent({{1, 1}}), -1.0);
  f1.add_term(Exponent({{2, 2}}), -4.0);
  Polynomial f2 = -pv(n, 3);
  MatrixPolynomial g1(2, n);
  g1.set(0, 0, pc(n, 1.0) + pv(n, 1));
  g1.set(0, 1, pv(n, 2) * pv(n, 2));
  g1.set(1, 1, pc(n, 1.0) - pv(n, 1));
  MatrixPolynomial g2(2, n);
  g2.set(0, 0, pc(n, 1.0) + pv(n, 3));
  g2.set(0, 1, pv(n, 2) * pv(n, 2));
  g2.set(1, 1, pc(n, 1.0) - pv(n, 3));
  return ProblemInstance(pat, {f1, f2}, {g1, g2});
}

inline ProblemInstance make_ex5_3() {
  const int n = 4;
  SparsityPattern pat(n, {{1, 2, 3}, {2, 3, 4}});
  std::vector<Polynomial> fs;
  std::vector<MatrixPolynomial> gs;
  for (int i = 1; i <= 2; ++i) {
    const int a = i, b = i + 1, c = i + 2;
    Polynomial f(n);
    f.add_term(Exponent({{a, 4}}), 1.0);
    f.add_term(Exponent({{b, 4}}), 2.0);
    f.add_term(Exponent({{c, 4}}), 1.0);
    f.add_term(Exponent({{b, 2}, {a, 2}}), 2.0);
    f.add_term(Exponent({{b, 2}, {c, 2}}), 2.0);
    f.add_term(Exponent({{a, 1}}), 1.0);
    f.add_term(Exponent({{b, 1}}), 1.0);
    f.add_term(Exponent({{c, 1}}), 1.0);
    fs.push_back(f);
    MatrixPolynomial g(3, n);
    g.set(0, 0, pc(n, 1.0) - pv(n, a) * pv(n, a) - pv(n, c) * pv(n, c));
    g.set(0, 1, pv(n, a) * pv(n, b));
    g.set(0, 2, pv(n, a) * pv(n, c));
    g.set(1, 1, pc(n, 1.0) - pv(n, b) * pv(n, b) - pv(n, a) * pv(n, a));
    g.set(1, 2, pv(n, b) * pv(n, c));
    g.set(2, 2, pc(n, 1.0) - pv(n, c) * pv(n, c) - pv(n, b) * pv(n, b));
    gs.push_back(g);
  }
  return ProblemInstance(pat, fs, gs);
}

inline ProblemInstance make_ex6_1() {
  const int n = 4;
  SparsityPattern pat(n, {{1, 2}, {1, 3}, {1, 4}});
  std::vector<Polynomial> fs;
  std::vector<MatrixPolynomial> gs;
  Polynomial x1 = pv(n, 1);
  Polynomial f1 = -pv(n, 2) + (x1 - pc(n, 0.4)) * (x1 - pc(n, 0.4));
  Polynomial f2 = 2.0 * x1 * pv(n, 3) + pv(n, 3) * pv(n, 3);
  Polynomial f3 = pv(n, 4) + x1 * pv(n, 4) - pv(n, 4) * pv(n, 4);
  fs = {f1, f2, f3};
  for (int i = 1; i <= 3; ++i) {
    Polynomial xj = pv(n, i + 1);
    MatrixPolynomial g(5, n);
    g.set(0, 0, pc(n, 2.0) + 3.0 * x1 * x1 - xj);
    g.set(0, 1, pc(n, 2.0) - 3.0 * x1);
    g.set(1, 1, pc(n, 1.0) - x1 * x1 - x1 - xj);
    g.set(2, 2, (x1 - pc(n, 0.4)) * (x1 - pc(n, 0.4)) +
                    (xj - pc(n, 0.2)) * (xj - pc(n, 0.2)) - pc(n, 0.5));
    g.set(3, 3, pc(n, 1.0) - x1 * x1);
    g.set(4, 4, pc(n, 1.0) - xj * xj);
    gs.push_back(g);
  }
  return ProblemInstance(pat, fs, gs);
}

inline ProblemInstance make_ex6_2() {
  const int n = 3;
  // the effective cliques are the variable supports {1,2} and {2,3}
  SparsityPattern pat(n, {{1, 2}, {2, 3}});
  Polynomial f1 = -pv(n, 1) * pv(n, 1) - pv(n, 2) * pv(n, 2);
  Polynomial f2 = -pv(n, 2) * pv(n, 2) - pv(n, 3);
  MatrixPolynomial g1(2, n);
  g1.set(0, 0, pc(n, 1.0) - 4.0 * pv(n, 1) * pv(n, 1) * pv(n, 2) * pv(n, 2));
  g1.set(0, 1, pv(n, 1));
  g1.set(1, 1, pc(n, 4.0) - pv(n, 1) * pv(n, 1) - pv(n, 2) * pv(n, 2));
  MatrixPolynomial g2(2, n);
  g2.set(0, 0, pc(n, 1.0) - 4.0 * pv(n, 2) * pv(n, 2) * pv(n, 3) * pv(n, 3));
  g2.set(0, 1, pv(n, 3));
  g2.set(1, 1, pc(n, 4.0) - pv(n, 2) * pv(n, 2) - pv(n, 3) * pv(n, 3));
  return ProblemInstance(pat, {f1, f2}, {g1, g2});
}

inline ProblemInstance make_ex6_3() {
  const int n = 4;
  SparsityPattern pat(n, {{1, 2, 3}, {2, 3, 4}});
  Polynomial f1(n);
  f1.add_term(Exponent({{1, 6}}), 1.0);
  f1.add_term(Exponent({{2, 6}}), 1.0);
  f1.add_term(Exponent({{3, 6}}), 1.0);
  f1.add_term(Exponent({{1, 2}, {2, 4}}), 1.0);
  f1.add_term(Exponent({{2, 2}, {3, 4}}), 1.0);
  f1.add_term(Exponent({{3, 2}, {1, 4}}), 1.0);
  Polynomial f2(n);
  for (int v = 2; v <= 4; ++v) {
    f2.add_term(Exponent({{v, 4}}), 1.0);
    f2.add_term(Exponent({{v, 1}}), -1.0);
  }
  f2.add_term(Exponent({{2, 2}, {3, 2}}), 2.0);
  f2.add_term(Exponent({{3, 2}, {4, 2}}), 2.0);
  std::vector<MatrixPolynomial> gs;
  for (int i = 1; i <= 2; ++i) {
    const int a = i, b = i + 1, c = i + 2;
    MatrixPolynomial g(3, n);
    g.set(0, 0, pc(n, 2.0) - pv(n, a) * pv(n, a) - 2.0 * pv(n, c) * pv(n, c));
    g.set(0, 1, pc(n, 1.0) + pv(n, a) * pv(n, b));
    g.set(0, 2, pv(n, a) * pv(n, c));
    g.set(1, 1, pc(n, 2.0) - pv(n, b) * pv(n, b) - 2.0 * pv(n, a) * pv(n, a));
    g.set(1, 2, pc(n, 1.0) + pv(n, b) * pv(n, c));
    g.set(2, 2, pc(n, 2.0) - pv(n, c) * pv(n, c) - 2.0 * pv(n, b) * pv(n, b));
    gs.push_back(g);
  }
  return ProblemInstance(pat, {f1, f2}, gs);
}

inline std::vector<Polynomial> joint_quartics(int n_total);

}  // namespace detail

std::vector<BuiltinExample> builtin_examples();
inline const BuiltinExample& find_builtin_example(const std::string& id) {
  static const std::vector<BuiltinExample> all = builtin_examples();
  for (const auto& e : all)
    if (e.id == id) return e;
  throw std::invalid_argument("unknown example id: " + id);
}

}  // namespace pmopt

#include "pmopt/builtin_examples_impl.hpp"
