#pragma once

// registry of the bundled examples (included from builtin_examples.hpp)

namespace pmopt {
namespace detail {

// the three coupled quartics behind the joint-minimizer examples
inline std::vector<Polynomial> joint_quartics(bool couple_middle) {
  const int n = 7;
  Polynomial f1(n);
  f1.add_term(Exponent({{1, 4}}), 1.0);
  f1.add_term(Exponent({{2, 4}}), 1.0);
  f1.add_term(Exponent({{3, 3}}), 1.0);
  f1.add_term(Exponent({{1, 1}, {2, 1}}), -0.25);
  f1.add_term(Exponent({{3, 2}}), -0.125);
  f1.add_term(Exponent({{3, 1}}), -0.125);
  Polynomial f2(n);
  f2.add_term(Exponent({{3, 4}}), 1.0);
  f2.add_term(Exponent({{4, 4}}), 1.0);
  f2.add_term(Exponent({{5, 4}}), 1.0);
  if (couple_middle) f2.add_term(Exponent({{3, 1}, {4, 1}, {5, 1}}), -1.0);
  Polynomial f3(n);
  f3.add_term(Exponent({{5, 3}}), 1.0);
  f3.add_term(Exponent({{6, 4}}), 1.0);
  f3.add_term(Exponent({{7, 4}}), 1.0);
  f3.add_term(Exponent({{5, 2}}), -0.125);
  f3.add_term(Exponent({{5, 1}}), -0.125);
  f3.add_term(Exponent({{6, 1}, {7, 1}}), 0.25);
  return {f1, f2, f3};
}

inline SparsityPattern joint_pattern() { return SparsityPattern(7, {{1, 2, 3}, {3, 4, 5}, {5, 6, 7}}); }

inline ProblemInstance make_ex6_4() { return build_joint_minimizer(joint_quartics(true), joint_pattern()); }

inline ProblemInstance make_ex6_5_joint() {
  return build_joint_minimizer(joint_quartics(false), joint_pattern());
}

inline ProblemInstance make_ex6_5() {
  return build_regularized_joint(joint_quartics(false), joint_pattern());
}

inline MatrixPolynomial shifted_quadric_block(const std::vector<double>& center) {
  const int p = 3;
  // F(z) with rows (z1^2+z3^2, -z1z2, -z1z3; ., z2^2+z1^2, -z2z3; ., ., z3^2+z2^2)
  MatrixPolynomial f(3, p);
  auto sq = [&](int v) { return pv(p, v) * pv(p, v); };
  f.set(0, 0, sq(1) + sq(3));
  f.set(0, 1, -1.0 * pv(p, 1) * pv(p, 2));
  f.set(0, 2, -1.0 * pv(p, 1) * pv(p, 3));
  f.set(1, 1, sq(2) + sq(1));
  f.set(1, 2, -1.0 * pv(p, 2) * pv(p, 3));
  f.set(2, 2, sq(3) + sq(2));
  MatrixPolynomial g(3, p);
  for (int s = 0; s < 3; ++s)
    for (int t = s; t < 3; ++t) {
      Polynomial e = f(s, t).compose_shift(center).scaled(-1.0);
      if (s == t) e += pc(p, 1.0);
      g.set(s, t, e);
    }
  return g;
}

inline ProblemInstance make_ex6_6() {
  std::vector<MatrixPolynomial> gs;
  gs.push_back(shifted_quadric_block({2.0, 0.0, 0.0}));
  gs.push_back(shifted_quadric_block({0.0, 2.0, 0.0}));
  gs.push_back(shifted_quadric_block({0.0, 0.0, 2.0}));
  return build_center_point(gs);
}

inline ProblemInstance make_ex6_7() {
  const int p = 3;
  auto block = [&](int va, int vb, int vq) {
    MatrixPolynomial g(2, p);
    g.set(0, 0, 0.5 * pv(p, va));
    g.set(0, 1, pv(p, vq) * pv(p, vq) + pc(p, 1.0));
    g.set(1, 1, 0.5 * pv(p, vb));
    return g;
  };
  std::vector<MatrixPolynomial> gs;
  gs.push_back(block(1, 2, 1));
  gs.push_back(block(2, 3, 2));
  gs.push_back(block(1, 3, 3));
  return build_center_point(gs);
}

inline ProblemInstance make_ex6_h2() {
  auto mat = [](std::initializer_list<std::initializer_list<double>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(rows.begin()->size());
    Eigen::MatrixXd m(r, c);
    int i = 0;
    for (const auto& row : rows) {
      int j = 0;
      for (double v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  };
  std::vector<H2System> sys(4);
  sys[0].a = mat({{-2, 2}, {2, 1}});
  sys[1].a = mat({{1, -3}, {1, -2}});
  sys[2].a = mat({{1, -1}, {3, -2}});
  sys[3].a = mat({{0, -1}, {2, -2}});
  sys[0].b = mat({{-4, 2}, {-3, 2}});
  sys[1].b = mat({{-3, -4, -1}, {-2, -1, 0}});
  sys[2].b = mat({{0, 3, -1}, {1, 0, 2}});
  sys[3].b = mat({{-1, -2, 1}, {-1, 1, -2}});
  sys[0].c = mat({{2, -1}, {0, 1}});
  sys[1].c = mat({{2, -1}, {-2, 3}});
  sys[2].c = mat({{0, 1}, {1, 0}});
  sys[3].c = mat({{0, 1}, {1, -1}});
  sys[0].d = mat({{2, -2}, {2, 2}, {-1, -1}});
  sys[1].d = mat({{2, -1}, {3, -1}});
  sys[2].d = mat({{1, -3}, {-1, 2}, {3, 3}});
  sys[3].d = mat({{2, -2}, {0, 1}, {-2, -2}});
  sys[0].e = mat({{1, 3}, {2, 2}});
  sys[1].e = mat({{-1, 1}, {2, 0}});
  sys[2].e = mat({{3, -1}, {1, 4}});
  sys[3].e = mat({{0, -1}, {3, 0}});
  return build_h2_synthesis(sys, 10.0);
}

}  // namespace detail

inline std::vector<BuiltinExample> builtin_examples() {
  using detail::make_ex1_1;
  std::vector<BuiltinExample> out;
  const double r5 = std::sqrt(5.0);

  out.push_back({"ex1_1", "explicit 3-variable instance with minimizer (1,1,1)", &make_ex1_1, 3,
                 false, false, -1.0, {{1.0, 1.0, 1.0}}, 1e-3, 1e-3});
  out.push_back({"ex3_3", "certificate splitting instance, every feasible point optimal",
                 &detail::make_ex3_3, 2, false, true, 0.0, {}, 1e-3, 2e-3});
  out.push_back({"ex3_5", "tight bound whose certificate value is not attained", &detail::make_ex3_5,
                 2, false, true, 0.0, {}, 1e-3, 2e-3});
  out.push_back({"ex4_4", "flat truncation at t=2 with two minimizers", &detail::make_ex4_4, 3,
                 false, false, -10.0 / r5,
                 {{1.0 / r5, std::sqrt(2.0 / r5), 1.0 / r5}, {1.0 / r5, -std::sqrt(2.0 / r5), 1.0 / r5}},
                 1e-3, 1e-3});
  out.push_back({"ex5_3", "sos-convex pair of overlapping triples", &detail::make_ex5_3, 2, false,
                 false, -2.0731, {{-0.5361, -0.4230, -0.4230, -0.5361}}, 1e-3, 2e-3});
  out.push_back({"ex6_1", "quadratic SDP with three cliques sharing x1", &detail::make_ex6_1, 2,
                 false, false, -2.8347, {{0.7746, -0.3997, -0.7746, -1.0000}}, 1e-3, 2e-3});
  out.push_back({"ex6_2", "quartic PMI pair with four minimizers", &detail::make_ex6_2, 5, false,
                 false, -8.0683,
                 {{0.1172, 1.9922, 0.1172},
                  {0.1172, -1.9922, 0.1172},
                  {-0.1172, 1.9922, 0.1172},
                  {-0.1172, -1.9922, 0.1172}},
                 1e-3, 2e-3});
  out.push_back({"ex6_3", "sos-convex sextic pair", &detail::make_ex6_3, 3, false, false, -1.0342,
                 {{0.0000, 0.4421, 0.2586, 0.5207}}, 1e-3, 2e-3});
  out.push_back({"ex6_4", "joint local minimizers of three quartics", &detail::make_ex6_4, 4, false,
                 false, -0.0703,
                 {{-0.25, -0.25, 0.25, 0.25, 0.25, -0.25, 0.25},
                  {-0.25, -0.25, 0.25, 0.25, 0.25, 0.25, -0.25},
                  {0.25, 0.25, 0.25, 0.25, 0.25, -0.25, 0.25},
                  {0.25, 0.25, 0.25, 0.25, 0.25, 0.25, -0.25}},
                 1e-3, 1e-3});
  out.push_back({"ex6_5_joint", "joint-minimizer instance with no joint minimizer",
                 &detail::make_ex6_5_joint, 4, true, true, std::nullopt, {}, 1e-3, 1e-3});
  {
    BuiltinExample e{"ex6_5", "regularized joint-minimizer instance", &detail::make_ex6_5, 4, false,
                     false, 0.0017, {}, 5e-4, 5e-4};
    e.expected_coords = {{8, 0.0007}, {9, 0.0069}, {10, 0.0007}};
    out.push_back(std::move(e));
  }
  {
    BuiltinExample e{"ex6_6", "center point of three shifted quadric sets", &detail::make_ex6_6, 1,
                     false, false, 1.4291,
                     {{1.4226, 0.5774, 0.5774, 0.5774, 1.4226, 0.5774, 0.5774, 0.5774, 1.4226,
                       0.8591, 0.8591, 0.8591}},
                     1e-2, 1e-2};
    e.expected_coords = {{10, 0.8591}, {11, 0.8591}, {12, 0.8591}};
    out.push_back(std::move(e));
  }
  {
    BuiltinExample e{"ex6_7", "center point of pairwise-intersecting sets with empty triple",
                     &detail::make_ex6_7, 1, false, false, 206.3980,
                     {{0.5960, 12.3262, 6.4615, 6.4615, 0.5960, 12.3262, 12.3262, 6.4615, 0.5960,
                       6.4613, 6.4613, 6.4613}},
                     1e-2, 1e-2};
    e.expected_coords = {{10, 6.4613}, {11, 6.4613}, {12, 6.4613}};
    out.push_back(std::move(e));
  }
  {
    BuiltinExample e{"ex6_h2", "four-system static H2 controller synthesis", &detail::make_ex6_h2,
                     2, false, false, 81.0282, {}, 1e-2, 5e-3};
    e.expected_coords = {{1, -0.3826}, {2, -1.5343}, {3, -1.3829}, {4, -0.7662}};
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace pmopt
