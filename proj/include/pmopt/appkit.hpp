#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmopt/problem.hpp"
#include "pmopt/rng.hpp"

namespace pmopt {

// ---------------------------------------------------------------------------
// joint local minimizers
// ---------------------------------------------------------------------------

// For given f_1..f_m, a point whose clique blocks satisfy
// [[0, grad f_i'], [grad f_i, hess f_i]] >= 0 has a vanishing gradient and
// psd Hessian on every clique, i.e. it passes the second-order necessary
// conditions of every f_i simultaneously.
inline ProblemInstance build_joint_minimizer(const std::vector<Polynomial>& fs,
                                             const SparsityPattern& pattern) {
  if (static_cast<int>(fs.size()) != pattern.num_cliques())
    throw std::invalid_argument("build_joint_minimizer: one polynomial per clique required");
  const int n = pattern.n;
  std::vector<MatrixPolynomial> blocks;
  for (int i = 0; i < pattern.num_cliques(); ++i) {
    const Clique& c = pattern.cliques[static_cast<std::size_t>(i)];
    const Polynomial& f = fs[static_cast<std::size_t>(i)];
    if (f.num_vars() != n || !f.supported_on(c.vars))
      throw std::invalid_argument("build_joint_minimizer: objective outside its clique");
    const int ni = c.size();
    MatrixPolynomial g(1 + ni, n);
    for (int j = 0; j < ni; ++j) {
      Polynomial dj = f.diff(c.vars[static_cast<std::size_t>(j)]);
      g.set(0, 1 + j, dj);
      for (int l = j; l < ni; ++l) g.set(1 + j, 1 + l, dj.diff(c.vars[static_cast<std::size_t>(l)]));
    }
    blocks.push_back(std::move(g));
  }
  return ProblemInstance(pattern, fs, blocks);
}

// Regularized variant: one slack z_i per clique, objective sum z_i, blocks
// [[z_i, grad f_i'], [grad f_i, z_i I + hess f_i]].  Slack variables are
// appended after the original x variables.
inline ProblemInstance build_regularized_joint(const std::vector<Polynomial>& fs,
                                               const SparsityPattern& pattern) {
  if (static_cast<int>(fs.size()) != pattern.num_cliques())
    throw std::invalid_argument("build_regularized_joint: one polynomial per clique required");
  const int n = pattern.n;
  const int m = pattern.num_cliques();
  const int n2 = n + m;
  std::vector<int> embed(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) embed[static_cast<std::size_t>(v - 1)] = v;

  std::vector<std::vector<int>> cliques;
  for (int i = 0; i < m; ++i) {
    std::vector<int> vars = pattern.cliques[static_cast<std::size_t>(i)].vars;
    vars.push_back(n + i + 1);
    cliques.push_back(vars);
  }
  SparsityPattern aug(n2, cliques);

  std::vector<Polynomial> objectives;
  std::vector<MatrixPolynomial> blocks;
  for (int i = 0; i < m; ++i) {
    const Clique& c = pattern.cliques[static_cast<std::size_t>(i)];
    Polynomial f = fs[static_cast<std::size_t>(i)].remapped(embed, n2);
    Polynomial zi = Polynomial::variable(n2, n + i + 1);
    objectives.push_back(zi);
    const int ni = c.size();
    MatrixPolynomial g(1 + ni, n2);
    g.set(0, 0, zi);
    for (int j = 0; j < ni; ++j) {
      Polynomial dj = f.diff(c.vars[static_cast<std::size_t>(j)]);
      g.set(0, 1 + j, dj);
      for (int l = j; l < ni; ++l) {
        Polynomial entry = dj.diff(c.vars[static_cast<std::size_t>(l)]);
        if (l == j) entry += zi;
        g.set(1 + j, 1 + l, entry);
      }
    }
    blocks.push_back(std::move(g));
  }
  return ProblemInstance(aug, objectives, blocks);
}

// ---------------------------------------------------------------------------
// center points of PMI-described sets
// ---------------------------------------------------------------------------

// Point v minimizing the sum of squared distances to the sets
// P_i = { z : G_i(z) >= 0 }.  Variables are (z^(1), ..., z^(m), v); clique i
// couples z^(i) with v.
inline ProblemInstance build_center_point(const std::vector<MatrixPolynomial>& gs) {
  if (gs.empty()) throw std::invalid_argument("build_center_point: no sets");
  const int p = gs.front().num_vars();
  const int m = static_cast<int>(gs.size());
  for (const auto& g : gs)
    if (g.num_vars() != p) throw std::invalid_argument("build_center_point: ambient mismatch");
  const int n = m * p + p;

  std::vector<std::vector<int>> cliques;
  std::vector<Polynomial> objectives;
  std::vector<MatrixPolynomial> blocks;
  for (int i = 0; i < m; ++i) {
    std::vector<int> vars;
    std::vector<int> remap(static_cast<std::size_t>(p));
    for (int j = 1; j <= p; ++j) {
      vars.push_back(i * p + j);
      remap[static_cast<std::size_t>(j - 1)] = i * p + j;
    }
    for (int j = 1; j <= p; ++j) vars.push_back(m * p + j);
    cliques.push_back(vars);

    Polynomial f(n);
    for (int j = 1; j <= p; ++j) {
      Polynomial d = Polynomial::variable(n, i * p + j) - Polynomial::variable(n, m * p + j);
      f += d * d;
    }
    objectives.push_back(f);
    blocks.push_back(gs[static_cast<std::size_t>(i)].remapped(remap, n));
  }
  return ProblemInstance(SparsityPattern(n, cliques), objectives, blocks);
}

// ---------------------------------------------------------------------------
// multisystem static H2 controller synthesis
// ---------------------------------------------------------------------------

struct H2System {
  Eigen::MatrixXd a;  // a_i x a_i
  Eigen::MatrixXd b;  // a_i x b_i
  Eigen::MatrixXd c;  // a_i x p
  Eigen::MatrixXd d;  // c_i x a_i
  Eigen::MatrixXd e;  // q x a_i
};

// Variables are z0 = vec(K) (row-major) shared by all cliques, then the
// upper-triangular entries of each Lyapunov matrix X_i.  The objective is
// sum tr(D_i X_i D_i'); the Lyapunov equations enter through the equality
// channel; X_i >= 0 holds per clique and the spectral-norm cap
// xi*I - K K' >= 0 is attached to clique 1.
inline ProblemInstance build_h2_synthesis(const std::vector<H2System>& systems, double xi) {
  if (systems.empty()) throw std::invalid_argument("build_h2_synthesis: no systems");
  const int m = static_cast<int>(systems.size());
  const int p = static_cast<int>(systems.front().c.cols());
  const int q = static_cast<int>(systems.front().e.rows());
  int n = p * q;
  std::vector<int> x_offset;  // first variable index (1-based) of each z_i
  for (const auto& s : systems) {
    const int ai = static_cast<int>(s.a.rows());
    if (s.a.cols() != ai || s.b.rows() != ai || s.c.rows() != ai || s.c.cols() != p ||
        s.d.cols() != ai || s.e.cols() != ai || s.e.rows() != q)
      throw std::invalid_argument("build_h2_synthesis: inconsistent system dimensions");
    x_offset.push_back(n + 1);
    n += ai * (ai + 1) / 2;
  }

  // symbolic K (p x q), row-major vec starting at variable 1
  auto kvar = [&](int j, int l) { return Polynomial::variable(n, j * q + l + 1); };
  // symbolic X_i from its upper-triangular vec
  auto xvar = [&](int sys, int j, int l) {
    const int ai = static_cast<int>(systems[static_cast<std::size_t>(sys)].a.rows());
    if (j > l) std::swap(j, l);
    int idx = j * ai - j * (j - 1) / 2 + (l - j);
    return Polynomial::variable(n, x_offset[static_cast<std::size_t>(sys)] + idx);
  };

  std::vector<std::vector<int>> cliques;
  std::vector<Polynomial> objectives;
  std::vector<MatrixPolynomial> blocks;
  std::vector<std::vector<Polynomial>> equalities;

  for (int i = 0; i < m; ++i) {
    const H2System& s = systems[static_cast<std::size_t>(i)];
    const int ai = static_cast<int>(s.a.rows());
    std::vector<int> vars;
    for (int v = 1; v <= p * q; ++v) vars.push_back(v);
    for (int v = 0; v < ai * (ai + 1) / 2; ++v) vars.push_back(x_offset[static_cast<std::size_t>(i)] + v);
    cliques.push_back(vars);

    // objective tr(D X D') = <D'D, X>
    Eigen::MatrixXd dtd = s.d.transpose() * s.d;
    Polynomial f(n);
    for (int j = 0; j < ai; ++j)
      for (int l = j; l < ai; ++l) {
        double w = (j == l) ? dtd(j, j) : 2.0 * dtd(j, l);
        if (w != 0.0) f += w * xvar(i, j, l);
      }
    objectives.push_back(f);

    // closed loop A + C K E as a matrix of linear polynomials
    std::vector<std::vector<Polynomial>> acl(static_cast<std::size_t>(ai),
                                             std::vector<Polynomial>(static_cast<std::size_t>(ai),
                                                                     Polynomial(n)));
    for (int r = 0; r < ai; ++r)
      for (int col = 0; col < ai; ++col) {
        Polynomial entry = Polynomial::constant(n, s.a(r, col));
        for (int j = 0; j < p; ++j)
          for (int l = 0; l < q; ++l) {
            double w = s.c(r, j) * s.e(l, col);
            if (w != 0.0) entry += w * kvar(j, l);
          }
        acl[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = entry;
      }

    // Lyapunov residual Acl X + X Acl' + B B', upper triangle
    Eigen::MatrixXd bbt = s.b * s.b.transpose();
    std::vector<Polynomial> lyap;
    for (int r = 0; r < ai; ++r)
      for (int col = r; col < ai; ++col) {
        Polynomial entry = Polynomial::constant(n, bbt(r, col));
        for (int t = 0; t < ai; ++t) {
          entry += acl[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)] * xvar(i, t, col);
          entry += acl[static_cast<std::size_t>(col)][static_cast<std::size_t>(t)] * xvar(i, t, r);
        }
        lyap.push_back(entry);
      }
    equalities.push_back(lyap);

    // X_i >= 0, with the norm cap on K joined into the first clique's block
    MatrixPolynomial gx(ai, n);
    for (int j = 0; j < ai; ++j)
      for (int l = j; l < ai; ++l) gx.set(j, l, xvar(i, j, l));
    if (i == 0) {
      MatrixPolynomial cap(p, n);
      for (int j = 0; j < p; ++j)
        for (int l = j; l < p; ++l) {
          Polynomial entry = (j == l) ? Polynomial::constant(n, xi) : Polynomial(n);
          for (int t = 0; t < q; ++t) entry -= kvar(j, t) * kvar(l, t);
          cap.set(j, l, entry);
        }
      blocks.push_back(MatrixPolynomial::block_diag({gx, cap}));
    } else {
      blocks.push_back(gx);
    }
  }
  return ProblemInstance(SparsityPattern(n, cliques), objectives, blocks, equalities);
}

// ---------------------------------------------------------------------------
// random instance families
// ---------------------------------------------------------------------------

enum class RandomFamily { sos_convex, nonconvex };

// Consecutive windows of width omega overlapping in one variable; the
// objective on each clique is quartic-convex (sos-convex family) or a
// random quartic form (nonconvex family) plus a convex quadratic, and each
// PMI block is quadratic and concave.  Instances are a deterministic
// function of (family, omega, ell, m, seed): draws happen clique by clique
// in the fixed order Dhat, Qhat, p, Chat, Ahat, then Bhat per variable.
struct RandomSpec {
  int omega = 3;
  int ell = 2;
  int m = 3;
  std::uint64_t seed = 0;
  RandomFamily family = RandomFamily::sos_convex;

  int n() const { return (omega - 1) * m + 1; }
};

inline const char* to_string(RandomFamily f) {
  return f == RandomFamily::sos_convex ? "sos-convex" : "nonconvex";
}

inline ProblemInstance gen_random(const RandomSpec& spec) {
  if (spec.omega < 2 || spec.ell < 1 || spec.m < 1)
    throw std::invalid_argument("gen_random: invalid spec");
  const int n = spec.n();
  const int w = spec.omega;
  const int l = spec.ell;
  RandomStream rng(spec.seed);

  auto normal_mat = [&](int rows, int cols) {
    Eigen::MatrixXd a(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) a(r, c) = rng.normal();
    return a;
  };
  auto uniform_mat = [&](int rows, int cols) {
    Eigen::MatrixXd a(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) a(r, c) = rng.uniform();
    return a;
  };

  std::vector<std::vector<int>> cliques;
  std::vector<Polynomial> objectives;
  std::vector<MatrixPolynomial> blocks;
  for (int i = 0; i < spec.m; ++i) {
    std::vector<int> vars;
    for (int j = 1; j <= w; ++j) vars.push_back((w - 1) * i + j);
    cliques.push_back(vars);

    Eigen::MatrixXd dmat;
    if (spec.family == RandomFamily::sos_convex) {
      Eigen::MatrixXd dh = uniform_mat(w, w);
      dmat = dh.transpose() * dh;
    } else {
      Eigen::MatrixXd dh = normal_mat(w, w);
      dmat = dh + dh.transpose();
    }
    Eigen::MatrixXd qh = normal_mat(w, w);
    Eigen::MatrixXd qmat = qh.transpose() * qh;
    Eigen::VectorXd pvec = normal_mat(w, 1);

    Polynomial f(n);
    for (int a = 0; a < w; ++a)
      for (int b = 0; b < w; ++b) {
        f.add_term(Exponent::unit(vars[static_cast<std::size_t>(a)], 2)
                       .times(Exponent::unit(vars[static_cast<std::size_t>(b)], 2)),
                   dmat(a, b));
        f.add_term(Exponent::unit(vars[static_cast<std::size_t>(a)])
                       .times(Exponent::unit(vars[static_cast<std::size_t>(b)])),
                   qmat(a, b));
      }
    for (int a = 0; a < w; ++a)
      f.add_term(Exponent::unit(vars[static_cast<std::size_t>(a)]), pvec[a]);
    objectives.push_back(f);

    Eigen::MatrixXd ch = normal_mat(l, l);
    Eigen::MatrixXd cmat = ch.transpose() * ch;
    Eigen::MatrixXd ah = normal_mat(l * w, l * w);
    Eigen::MatrixXd amat = ah.transpose() * ah;

    MatrixPolynomial g(l, n);
    for (int r = 0; r < l; ++r)
      for (int c = r; c < l; ++c) {
        Polynomial entry = Polynomial::constant(n, cmat(r, c));
        for (int s = 0; s < w; ++s)
          for (int t = 0; t < w; ++t) {
            double v = -amat(s * l + r, t * l + c);
            if (v != 0.0)
              entry.add_term(Exponent::unit(vars[static_cast<std::size_t>(s)])
                                 .times(Exponent::unit(vars[static_cast<std::size_t>(t)])),
                             v);
          }
        g.set(r, c, entry);
      }
    for (int s = 0; s < w; ++s) {
      Eigen::MatrixXd bh = normal_mat(l, l);
      Eigen::MatrixXd bmat = bh + bh.transpose();
      for (int r = 0; r < l; ++r)
        for (int c = r; c < l; ++c) {
          Polynomial entry = g(r, c);
          entry.add_term(Exponent::unit(vars[static_cast<std::size_t>(s)]), bmat(r, c));
          g.set(r, c, entry);
        }
    }
    blocks.push_back(std::move(g));
  }
  return ProblemInstance(SparsityPattern(n, cliques), objectives, blocks);
}

}  // namespace pmopt
