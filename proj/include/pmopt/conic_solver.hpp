#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "pmopt/conic_program.hpp"

namespace pmopt {
namespace detail {

// ---------------------------------------------------------------------------
// Internal data for the primal-dual interior-point solver.  The program is
// treated in the homogeneous self-dual embedding
//
//     A'y + G'z + c*tau = 0,   Ax = b*tau,   Gx + s = h*tau,
//     c'x + b'y + h'z + kappa = 0,   s, z psd,  tau, kappa >= 0,
//
// where G maps the decision vector to the negated stacked block slices
// (so s recovers F0 + sum x_i F_i) and h stacks the block constants.
// Scaled Newton directions use Nesterov-Todd scaling per psd block.
// ---------------------------------------------------------------------------

struct IpmBlock {
  int n = 0;
  std::vector<PsdBlockSlice::Term> terms;    // sorted by var
  std::vector<int> vars;                     // unique vars in this block
  std::vector<std::pair<int, int>> ranges;   // [begin, end) into terms per var
  Eigen::MatrixXd f0;

  // sum_i x_i F_i
  Eigen::MatrixXd slice(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : terms) {
      double v = t.coeff * x[t.var];
      m(t.row, t.col) += v;
      if (t.row != t.col) m(t.col, t.row) += v;
    }
    return m;
  }

  // <F_i, Z> for symmetric Z, accumulated into out[var]
  void accumulate_adjoint(const Eigen::MatrixXd& z, Eigen::VectorXd& out) const {
    for (const auto& t : terms) {
      double w = (t.row == t.col) ? z(t.row, t.col) : 2.0 * z(t.row, t.col);
      out[t.var] += t.coeff * w;
    }
  }

  // <F_i, Z> for the single variable range r
  double slice_dot(int range_idx, const Eigen::MatrixXd& z) const {
    double acc = 0.0;
    for (int e = ranges[range_idx].first; e < ranges[range_idx].second; ++e) {
      const auto& t = terms[e];
      double w = (t.row == t.col) ? z(t.row, t.col) : 2.0 * z(t.row, t.col);
      acc += t.coeff * w;
    }
    return acc;
  }
};

struct NtScaling {
  Eigen::MatrixXd r;     // s = R Lam R',  z = R^{-T} Lam R^{-1}
  Eigen::MatrixXd rinv;
  Eigen::MatrixXd winv;  // (R R')^{-1}
  Eigen::MatrixXd wmat;  // R R'
  Eigen::VectorXd lam;
};

inline Eigen::LLT<Eigen::MatrixXd> chol_psd(Eigen::MatrixXd a, bool& ok) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() == Eigen::Success) {
    ok = true;
    return llt;
  }
  // clamp tiny negative eigenvalues and retry
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  Eigen::VectorXd ev = es.eigenvalues();
  double floor_val = std::max(1e-14 * std::max(ev.cwiseAbs().maxCoeff(), 1.0), 1e-300);
  for (int i = 0; i < ev.size(); ++i) ev[i] = std::max(ev[i], floor_val);
  Eigen::MatrixXd fixed = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  llt.compute(fixed);
  ok = llt.info() == Eigen::Success;
  return llt;
}

inline bool compute_nt(const Eigen::MatrixXd& s, const Eigen::MatrixXd& z, NtScaling& nt) {
  bool ok_s = false, ok_z = false;
  auto ls = chol_psd(s, ok_s);
  auto lz = chol_psd(z, ok_z);
  if (!ok_s || !ok_z) return false;
  Eigen::MatrixXd lsm = ls.matrixL();
  Eigen::MatrixXd lzm = lz.matrixL();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(lzm.transpose() * lsm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  nt.lam = svd.singularValues();
  if (nt.lam.minCoeff() <= 0.0) return false;
  Eigen::VectorXd isqrt = nt.lam.cwiseSqrt().cwiseInverse();
  nt.r = lsm * svd.matrixV() * isqrt.asDiagonal();
  nt.rinv = isqrt.asDiagonal() * svd.matrixU().transpose() * lzm.transpose();
  nt.wmat = nt.r * nt.r.transpose();
  nt.winv = nt.rinv.transpose() * nt.rinv;
  return true;
}

// solve Lam o U = D elementwise in the scaled space (Lam diagonal)
inline Eigen::MatrixXd jordan_solve(const Eigen::VectorXd& lam, const Eigen::MatrixXd& d) {
  Eigen::MatrixXd u(d.rows(), d.cols());
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) u(i, j) = 2.0 * d(i, j) / (lam[i] + lam[j]);
  return u;
}

// largest step in (0, cap] keeping Lam + alpha*D psd, for diagonal Lam > 0
inline double max_step(const Eigen::VectorXd& lam, const Eigen::MatrixXd& d, double cap) {
  Eigen::VectorXd isqrt = lam.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd scaled = isqrt.asDiagonal() * d * isqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scaled, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  if (lo >= 0.0) return cap;
  return std::min(cap, 1.0 / (-lo));
}

struct IpmState {
  Eigen::VectorXd x, y;
  std::vector<Eigen::MatrixXd> s, z;
  double tau = 1.0, kappa = 1.0;
};

struct IpmDirection {
  Eigen::VectorXd x, y;
  std::vector<Eigen::MatrixXd> s, z;
  double tau = 0.0, kappa = 0.0;
};

class IpmCore {
 public:
  IpmCore(const ConicProgram& p, std::vector<int> keep_rows, const SolverOptions& opt)
      : opt_(opt), nx_(p.num_vars()), c_(p.objective()) {
    // equality rows (already rank-filtered), normalized to unit inf-norm
    for (int r : keep_rows) {
      const LinearRow& row = p.equalities()[static_cast<std::size_t>(r)];
      double scale = 0.0;
      for (const auto& [v, coef] : row.terms) scale = std::max(scale, std::abs(coef));
      if (scale == 0.0) scale = 1.0;
      LinearRow nrow;
      nrow.rhs = row.rhs / scale;
      for (const auto& [v, coef] : row.terms) nrow.terms.emplace_back(v, coef / scale);
      rows_.push_back(std::move(nrow));
      row_ids_.push_back(r);
      row_scales_.push_back(scale);
    }
    ny_ = static_cast<int>(rows_.size());
    b_.resize(ny_);
    for (int r = 0; r < ny_; ++r) b_[r] = rows_[static_cast<std::size_t>(r)].rhs;

    for (const auto& blk : p.blocks()) {
      IpmBlock ib;
      ib.n = blk.size;
      ib.terms = blk.terms;
      std::stable_sort(ib.terms.begin(), ib.terms.end(),
                       [](const auto& a, const auto& b) { return a.var < b.var; });
      for (std::size_t e = 0; e < ib.terms.size(); ++e) {
        if (e == 0 || ib.terms[e].var != ib.terms[e - 1].var) {
          ib.vars.push_back(ib.terms[e].var);
          ib.ranges.emplace_back(static_cast<int>(e), static_cast<int>(e));
        }
        ib.ranges.back().second = static_cast<int>(e) + 1;
      }
      ib.f0 = Eigen::MatrixXd::Zero(ib.n, ib.n);
      for (const auto& t : blk.constants) {
        ib.f0(t.row, t.col) += t.value;
        if (t.row != t.col) ib.f0(t.col, t.row) += t.value;
      }
      blocks_.push_back(std::move(ib));
      nu_ += blocks_.back().n;
    }

    norm_c_ = std::max(1.0, c_.norm());
    double hb = b_.size() ? b_.norm() : 0.0;
    double hh = 0.0;
    for (const auto& blk : blocks_) hh += blk.f0.squaredNorm();
    norm_bh_ = std::max(1.0, std::hypot(hb, std::sqrt(hh)));
  }

  ConicSolution run() {
    ConicSolution best;
    double best_score = std::numeric_limits<double>::infinity();

    IpmState st;
    if (!initialize(st)) {
      best.status = SolveStatus::inaccurate;
      best.note = "initialization failed";
      return best;
    }

    for (int iter = 0; iter <= opt_.max_iter; ++iter) {
      // residuals of the embedding
      Eigen::VectorXd rx = mul_at(st.y) + adjoint_cone(st.z) + c_ * st.tau;
      Eigen::VectorXd ry = mul_a(st.x) - b_ * st.tau;
      std::vector<Eigen::MatrixXd> rz(blocks_.size());
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
        rz[bi] = -blocks_[bi].slice(st.x) + st.s[bi] - blocks_[bi].f0 * st.tau;
      double hz = 0.0, sz = 0.0;
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        hz += blocks_[bi].f0.cwiseProduct(st.z[bi]).sum();
        sz += st.s[bi].cwiseProduct(st.z[bi]).sum();
      }
      double rtau = c_.dot(st.x) + (ny_ ? b_.dot(st.y) : 0.0) + hz + st.kappa;

      double pcost = c_.dot(st.x) / st.tau;
      double dcost = -((ny_ ? b_.dot(st.y) : 0.0) + hz) / st.tau;
      double gap = sz / (st.tau * st.tau);
      double relgap = gap / std::max(1.0, std::abs(pcost));
      double rznorm = 0.0;
      for (const auto& m : rz) rznorm += m.squaredNorm();
      rznorm = std::sqrt(rznorm);
      double pres = std::max(ry.size() ? ry.norm() : 0.0, rznorm) / (st.tau * norm_bh_);
      double dres = rx.norm() / (st.tau * norm_c_);

      double score = std::max({pres, dres, relgap});
      if (score < best_score) {
        best_score = score;
        fill_solution(best, st, pcost, dcost, pres, dres, relgap, iter);
      }
      if (opt_.verbose) {
        std::printf("iter %3d  pcost % .6e dcost % .6e gap %.2e pres %.2e dres %.2e tau %.2e kap %.2e\n",
                    iter, pcost, dcost, relgap, pres, dres, st.tau, st.kappa);
      }

      if (pres <= opt_.tol && dres <= opt_.tol && relgap <= opt_.tol) {
        fill_solution(best, st, pcost, dcost, pres, dres, relgap, iter);
        best.status = SolveStatus::optimal;
        return best;
      }

      // infeasibility certificates
      double cert_p = -((ny_ ? b_.dot(st.y) : 0.0) + hz);
      if (cert_p > 0.0) {
        double res = (mul_at(st.y) + adjoint_cone(st.z)).norm() / norm_c_;
        if (res / cert_p <= opt_.tol) {
          best.status = SolveStatus::infeasible;
          best.note = "primal infeasibility certificate";
          best.dual_eq = expand_dual(st.y / cert_p);
          best.dual_cone.clear();
          for (const auto& m : st.z) best.dual_cone.push_back(m / cert_p);
          best.primal.setZero(nx_);
          best.iterations = iter;
          return best;
        }
      }
      double cert_d = -c_.dot(st.x);
      if (cert_d > 0.0) {
        std::vector<Eigen::MatrixXd> gx(blocks_.size());
        double gxs = 0.0;
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
          gx[bi] = -blocks_[bi].slice(st.x) + st.s[bi];
          gxs += gx[bi].squaredNorm();
        }
        double res = std::max(mul_a(st.x).norm(), std::sqrt(gxs)) / norm_bh_;
        if (res / cert_d <= opt_.tol) {
          best.status = SolveStatus::unbounded;
          best.note = "dual infeasibility certificate (improving ray)";
          best.primal = st.x / cert_d;
          best.primal_cone.clear();
          for (const auto& m : st.s) best.primal_cone.push_back(m / cert_d);
          best.iterations = iter;
          return best;
        }
      }

      if (iter == opt_.max_iter) break;

      // Nesterov-Todd scalings
      std::vector<NtScaling> nt(blocks_.size());
      bool nt_ok = true;
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
        nt_ok = nt_ok && compute_nt(st.s[bi], st.z[bi], nt[bi]);
      if (!nt_ok) {
        best.note = "scaling breakdown";
        break;
      }
      double mu = (sz + st.tau * st.kappa) / (nu_ + 1);

      if (!factor_kkt(nt)) {
        best.note = "KKT factorization breakdown";
        break;
      }

      // constant-column solve, reused by both directions
      Eigen::VectorXd x1, y1;
      std::vector<Eigen::MatrixXd> z1;
      {
        std::vector<Eigen::MatrixXd> h0(blocks_.size());
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi) h0[bi] = blocks_[bi].f0;
        solve_kkt(nt, -c_, b_, h0, x1, y1, z1);
      }
      double den1 = c_.dot(x1) + (ny_ ? b_.dot(y1) : 0.0) + cone_dot_f0(z1) - st.kappa / st.tau;

      auto direction = [&](double eta, const std::vector<Eigen::MatrixXd>& ds_scaled, double dtk,
                           IpmDirection& dir) {
        // rhs: (-(eta)rx, -(eta)ry, -(eta)rz - W'(jordan_solve(lam, ds)))
        std::vector<Eigen::MatrixXd> r3(blocks_.size());
        std::vector<Eigen::MatrixXd> wds(blocks_.size());
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
          Eigen::MatrixXd dtil = jordan_solve(nt[bi].lam, ds_scaled[bi]);
          wds[bi] = nt[bi].r * dtil * nt[bi].r.transpose();
          r3[bi] = -eta * rz[bi] - wds[bi];
        }
        Eigen::VectorXd x2, y2;
        std::vector<Eigen::MatrixXd> z2;
        solve_kkt(nt, -eta * rx, -eta * ry, r3, x2, y2, z2);
        double rt = -eta * rtau - dtk / st.tau;
        double num = rt - c_.dot(x2) - (ny_ ? b_.dot(y2) : 0.0) - cone_dot_f0(z2);
        dir.tau = num / den1;
        dir.x = x2 + dir.tau * x1;
        if (ny_) dir.y = y2 + dir.tau * y1; else dir.y.resize(0);
        dir.z.resize(blocks_.size());
        dir.s.resize(blocks_.size());
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
          dir.z[bi] = z2[bi] + dir.tau * z1[bi];
          // from the z-row of the embedding, keeps G dx + ds - h dtau exact
          dir.s[bi] = -eta * rz[bi] + blocks_[bi].f0 * dir.tau + blocks_[bi].slice(dir.x);
        }
        dir.kappa = (dtk - st.kappa * dir.tau) / st.tau;
      };

      // affine (predictor) direction
      IpmDirection aff;
      {
        std::vector<Eigen::MatrixXd> ds(blocks_.size());
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
          ds[bi] = Eigen::MatrixXd::Zero(blocks_[bi].n, blocks_[bi].n);
          ds[bi].diagonal() = -nt[bi].lam.cwiseProduct(nt[bi].lam);
        }
        direction(1.0, ds, -st.tau * st.kappa, aff);
      }
      double alpha_aff = step_length(st, nt, aff, 1.0);
      double sigma = std::pow(1.0 - alpha_aff, 3);
      sigma = std::min(std::max(sigma, 1e-8), 0.999);

      // combined (corrector) direction
      IpmDirection dir;
      {
        std::vector<Eigen::MatrixXd> ds(blocks_.size());
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
          Eigen::MatrixXd u = nt[bi].rinv * aff.s[bi] * nt[bi].rinv.transpose();
          Eigen::MatrixXd v = nt[bi].r.transpose() * aff.z[bi] * nt[bi].r;
          Eigen::MatrixXd gamma = 0.5 * (u * v + v * u);
          ds[bi] = -gamma + sigma * mu * Eigen::MatrixXd::Identity(blocks_[bi].n, blocks_[bi].n);
          ds[bi].diagonal() -= nt[bi].lam.cwiseProduct(nt[bi].lam);
        }
        double dtk = -st.tau * st.kappa - aff.tau * aff.kappa + sigma * mu;
        direction(1.0 - sigma, ds, dtk, dir);
      }

      double alpha = std::min(1.0, 0.99 * step_length(st, nt, dir, 1.0 / 0.99));
      if (!(alpha > 1e-9)) {
        best.note = "step length collapsed";
        break;
      }

      st.x += alpha * dir.x;
      if (ny_) st.y += alpha * dir.y;
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        st.s[bi] += alpha * dir.s[bi];
        st.z[bi] += alpha * dir.z[bi];
        st.s[bi] = 0.5 * (st.s[bi] + st.s[bi].transpose().eval());
        st.z[bi] = 0.5 * (st.z[bi] + st.z[bi].transpose().eval());
      }
      st.tau += alpha * dir.tau;
      st.kappa += alpha * dir.kappa;
    }

    best.status = SolveStatus::inaccurate;
    if (best.note.empty()) best.note = "iteration limit reached";
    return best;
  }

  const std::vector<int>& row_ids() const { return row_ids_; }
  int full_rows() const { return full_rows_; }
  void set_full_rows(int n) { full_rows_ = n; }

 private:
  Eigen::VectorXd mul_a(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(ny_);
    for (int r = 0; r < ny_; ++r)
      for (const auto& [v, coef] : rows_[static_cast<std::size_t>(r)].terms) out[r] += coef * x[v];
    return out;
  }

  Eigen::VectorXd mul_at(const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(nx_);
    for (int r = 0; r < ny_; ++r)
      for (const auto& [v, coef] : rows_[static_cast<std::size_t>(r)].terms) out[v] += coef * y[r];
    return out;
  }

  // G'z with G = -stacked slices
  Eigen::VectorXd adjoint_cone(const std::vector<Eigen::MatrixXd>& z) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(nx_);
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) blocks_[bi].accumulate_adjoint(z[bi], out);
    return -out;
  }

  double cone_dot_f0(const std::vector<Eigen::MatrixXd>& z) const {
    double acc = 0.0;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
      acc += blocks_[bi].f0.cwiseProduct(z[bi]).sum();
    return acc;
  }

  bool factor_kkt(const std::vector<NtScaling>& nt) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nx_, nx_);
    Eigen::MatrixXd xj;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const IpmBlock& blk = blocks_[bi];
      const Eigen::MatrixXd& winv = nt[bi].winv;
      for (std::size_t jj = 0; jj < blk.vars.size(); ++jj) {
        xj.setZero(blk.n, blk.n);
        for (int e = blk.ranges[jj].first; e < blk.ranges[jj].second; ++e) {
          const auto& t = blk.terms[e];
          if (t.row == t.col) {
            xj.noalias() += t.coeff * (winv.col(t.row) * winv.col(t.col).transpose());
          } else {
            xj.noalias() += t.coeff * (winv.col(t.row) * winv.col(t.col).transpose());
            xj.noalias() += t.coeff * (winv.col(t.col) * winv.col(t.row).transpose());
          }
        }
        int j = blk.vars[jj];
        for (std::size_t ii = 0; ii <= jj; ++ii) {
          int i = blk.vars[ii];
          double v = blk.slice_dot(static_cast<int>(ii), xj);
          if (i <= j) m(i, j) += v; else m(j, i) += v;
        }
      }
    }
    m = m.selfadjointView<Eigen::Upper>();

    double diag_scale = std::max(m.diagonal().cwiseAbs().maxCoeff(), 1.0);
    double reg = 0.0;
    for (int attempt = 0; attempt < 6; ++attempt) {
      Eigen::MatrixXd mreg = m;
      if (reg > 0.0) mreg.diagonal().array() += reg;
      llt_m_.compute(mreg);
      if (llt_m_.info() == Eigen::Success) break;
      reg = (reg == 0.0) ? 1e-13 * diag_scale : reg * 100.0;
    }
    if (llt_m_.info() != Eigen::Success) return false;

    if (ny_) {
      // M^{-1} A' and the Schur complement A M^{-1} A'
      Eigen::MatrixXd at = Eigen::MatrixXd::Zero(nx_, ny_);
      for (int r = 0; r < ny_; ++r)
        for (const auto& [v, coef] : rows_[static_cast<std::size_t>(r)].terms) at(v, r) = coef;
      miat_ = llt_m_.solve(at);
      Eigen::MatrixXd schur = at.transpose() * miat_;
      schur = 0.5 * (schur + schur.transpose().eval());
      double ds = std::max(schur.diagonal().cwiseAbs().maxCoeff(), 1e-300);
      double sreg = 0.0;
      for (int attempt = 0; attempt < 6; ++attempt) {
        Eigen::MatrixXd sr = schur;
        if (sreg > 0.0) sr.diagonal().array() += sreg;
        llt_schur_.compute(sr);
        if (llt_schur_.info() == Eigen::Success) break;
        sreg = (sreg == 0.0) ? 1e-13 * ds : sreg * 100.0;
      }
      if (llt_schur_.info() != Eigen::Success) return false;
    }
    return true;
  }

  // core solve: A'dy + G'dz = r1, A dx = r2, G dx - W'W dz = r3
  void solve_kkt(const std::vector<NtScaling>& nt, const Eigen::VectorXd& r1, const Eigen::VectorXd& r2,
                 const std::vector<Eigen::MatrixXd>& r3, Eigen::VectorXd& dx, Eigen::VectorXd& dy,
                 std::vector<Eigen::MatrixXd>& dz) const {
    auto pass = [&](const Eigen::VectorXd& q1, const Eigen::VectorXd& q2,
                    const std::vector<Eigen::MatrixXd>& q3, Eigen::VectorXd& ox, Eigen::VectorXd& oy,
                    std::vector<Eigen::MatrixXd>& oz) {
      Eigen::VectorXd r1p = q1;
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        Eigen::MatrixXd wrw = nt[bi].winv * q3[bi] * nt[bi].winv;
        Eigen::VectorXd tmp = Eigen::VectorXd::Zero(nx_);
        blocks_[bi].accumulate_adjoint(wrw, tmp);
        r1p -= tmp;
      }
      if (ny_) {
        Eigen::VectorXd u = llt_m_.solve(r1p);
        Eigen::VectorXd rhs_y = mul_a(u) - q2;
        oy = llt_schur_.solve(rhs_y);
        ox = u - miat_ * oy;
      } else {
        oy.resize(0);
        ox = llt_m_.solve(r1p);
      }
      oz.resize(blocks_.size());
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        Eigen::MatrixXd inner = blocks_[bi].slice(ox) + q3[bi];
        oz[bi] = -(nt[bi].winv * inner * nt[bi].winv);
        oz[bi] = 0.5 * (oz[bi] + oz[bi].transpose().eval());
      }
    };

    pass(r1, r2, r3, dx, dy, dz);
    for (int ref = 0; ref < opt_.refine_steps; ++ref) {
      // residuals of the core system
      Eigen::VectorXd e1 = r1 - (mul_at(dy) + adjoint_cone(dz));
      Eigen::VectorXd e2 = r2 - mul_a(dx);
      std::vector<Eigen::MatrixXd> e3(blocks_.size());
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
        e3[bi] = r3[bi] + blocks_[bi].slice(dx) + nt[bi].wmat * dz[bi] * nt[bi].wmat;
      Eigen::VectorXd cx, cy;
      std::vector<Eigen::MatrixXd> cz;
      pass(e1, e2, e3, cx, cy, cz);
      dx += cx;
      if (ny_) dy += cy;
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi) dz[bi] += cz[bi];
    }
  }

  bool initialize(IpmState& st) {
    std::vector<NtScaling> nt(blocks_.size());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      int n = blocks_[bi].n;
      nt[bi].r = Eigen::MatrixXd::Identity(n, n);
      nt[bi].rinv = Eigen::MatrixXd::Identity(n, n);
      nt[bi].wmat = Eigen::MatrixXd::Identity(n, n);
      nt[bi].winv = Eigen::MatrixXd::Identity(n, n);
      nt[bi].lam = Eigen::VectorXd::Ones(n);
    }
    if (!factor_kkt(nt)) return false;

    std::vector<Eigen::MatrixXd> h0(blocks_.size());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) h0[bi] = blocks_[bi].f0;

    Eigen::VectorXd xp, yp;
    std::vector<Eigen::MatrixXd> zp;
    solve_kkt(nt, Eigen::VectorXd::Zero(nx_), b_, h0, xp, yp, zp);
    st.x = xp;
    st.s.resize(blocks_.size());
    double shift_p = 0.0;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      st.s[bi] = blocks_[bi].f0 + blocks_[bi].slice(st.x);
      st.s[bi] = 0.5 * (st.s[bi] + st.s[bi].transpose().eval());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(st.s[bi], Eigen::EigenvaluesOnly);
      shift_p = std::max(shift_p, -es.eigenvalues().minCoeff());
    }
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
      st.s[bi].diagonal().array() += (shift_p > 0.0 ? 1.0 + shift_p : 1.0);

    Eigen::VectorXd xd, yd;
    std::vector<Eigen::MatrixXd> zd;
    std::vector<Eigen::MatrixXd> zero3(blocks_.size());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
      zero3[bi] = Eigen::MatrixXd::Zero(blocks_[bi].n, blocks_[bi].n);
    solve_kkt(nt, -c_, Eigen::VectorXd::Zero(ny_), zero3, xd, yd, zd);
    st.y = yd;
    st.z = zd;
    double shift_d = 0.0;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      st.z[bi] = 0.5 * (st.z[bi] + st.z[bi].transpose().eval());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(st.z[bi], Eigen::EigenvaluesOnly);
      shift_d = std::max(shift_d, -es.eigenvalues().minCoeff());
    }
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
      st.z[bi].diagonal().array() += (shift_d > 0.0 ? 1.0 + shift_d : 1.0);

    st.tau = 1.0;
    st.kappa = 1.0;
    return true;
  }

  double step_length(const IpmState& st, const std::vector<NtScaling>& nt, const IpmDirection& dir,
                     double cap) const {
    double alpha = cap;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      Eigen::MatrixXd u = nt[bi].rinv * dir.s[bi] * nt[bi].rinv.transpose();
      u = 0.5 * (u + u.transpose().eval());
      alpha = std::min(alpha, max_step(nt[bi].lam, u, cap));
      Eigen::MatrixXd v = nt[bi].r.transpose() * dir.z[bi] * nt[bi].r;
      v = 0.5 * (v + v.transpose().eval());
      alpha = std::min(alpha, max_step(nt[bi].lam, v, cap));
    }
    if (dir.tau < 0.0) alpha = std::min(alpha, -st.tau / dir.tau);
    if (dir.kappa < 0.0) alpha = std::min(alpha, -st.kappa / dir.kappa);
    return alpha;
  }

  // multipliers are reported against the original (unnormalized) rows
  Eigen::VectorXd expand_dual(const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(full_rows_);
    for (int r = 0; r < ny_; ++r)
      out[row_ids_[static_cast<std::size_t>(r)]] = y[r] / row_scales_[static_cast<std::size_t>(r)];
    return out;
  }

  void fill_solution(ConicSolution& sol, const IpmState& st, double pcost, double dcost, double pres,
                     double dres, double relgap, int iter) const {
    sol.primal = st.x / st.tau;
    sol.dual_eq = expand_dual(ny_ ? Eigen::VectorXd(st.y / st.tau) : Eigen::VectorXd());
    sol.dual_cone.clear();
    sol.primal_cone.clear();
    for (const auto& m : st.z) sol.dual_cone.push_back(m / st.tau);
    for (const auto& m : st.s) sol.primal_cone.push_back(m / st.tau);
    sol.objective_primal = pcost;
    sol.objective_dual = dcost;
    sol.res_primal = pres;
    sol.res_dual = dres;
    sol.rel_gap = relgap;
    sol.iterations = iter;
  }

  SolverOptions opt_;
  int nx_ = 0;
  int ny_ = 0;
  int nu_ = 0;
  int full_rows_ = 0;
  Eigen::VectorXd c_;
  std::vector<LinearRow> rows_;
  std::vector<int> row_ids_;
  std::vector<double> row_scales_;
  Eigen::VectorXd b_;
  std::vector<IpmBlock> blocks_;

  double norm_c_ = 1.0;
  double norm_bh_ = 1.0;

  Eigen::LLT<Eigen::MatrixXd> llt_m_;
  Eigen::LLT<Eigen::MatrixXd> llt_schur_;
  Eigen::MatrixXd miat_;
};

// rank-filter the equality rows; returns kept row indices, or sets
// `inconsistent` when a dependent row has an incompatible right-hand side
inline std::vector<int> presolve_rows(const ConicProgram& p, bool& inconsistent) {
  inconsistent = false;
  const int ny = p.num_equalities();
  std::vector<int> keep;
  if (ny == 0) return keep;
  const int nx = p.num_vars();
  Eigen::MatrixXd at = Eigen::MatrixXd::Zero(nx + 1, ny);
  for (int r = 0; r < ny; ++r) {
    const LinearRow& row = p.equalities()[static_cast<std::size_t>(r)];
    double scale = 0.0;
    for (const auto& [v, coef] : row.terms) scale = std::max(scale, std::abs(coef));
    if (scale == 0.0) {
      if (std::abs(row.rhs) > 1e-12) inconsistent = true;
      continue;  // zero row
    }
    for (const auto& [v, coef] : row.terms) at(v, r) = coef / scale;
    at(nx, r) = row.rhs / scale;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_a(at.topRows(nx));
  qr_a.setThreshold(1e-12);
  int rank_a = static_cast<int>(qr_a.rank());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_ab(at);
  qr_ab.setThreshold(1e-12);
  if (qr_ab.rank() > rank_a) inconsistent = true;

  const auto& perm = qr_a.colsPermutation().indices();
  std::vector<int> pivots;
  for (int i = 0; i < rank_a; ++i) pivots.push_back(perm[i]);
  std::sort(pivots.begin(), pivots.end());
  for (int r : pivots) {
    const LinearRow& row = p.equalities()[static_cast<std::size_t>(r)];
    bool zero = true;
    for (const auto& [v, coef] : row.terms)
      if (coef != 0.0) zero = false;
    if (!zero) keep.push_back(r);
  }
  return keep;
}

}  // namespace detail

// Solve a conic program with the built-in primal-dual interior-point
// method.  Deterministic: identical inputs and options give identical
// iterates.
inline ConicSolution solve_conic(const ConicProgram& program, const SolverOptions& options = {}) {
  if (options.tol <= 0.0 || options.tol > 1e-2)
    throw std::invalid_argument("solve_conic: tol must lie in (0, 1e-2]");
  bool inconsistent = false;
  std::vector<int> keep = detail::presolve_rows(program, inconsistent);
  if (inconsistent) {
    ConicSolution sol;
    sol.status = SolveStatus::infeasible;
    sol.note = "inconsistent linear equalities";
    sol.primal.setZero(program.num_vars());
    sol.dual_eq.setZero(program.num_equalities());
    return sol;
  }
  detail::IpmCore core(program, keep, options);
  core.set_full_rows(program.num_equalities());
  ConicSolution sol = core.run();
  return sol;
}

}  // namespace pmopt
