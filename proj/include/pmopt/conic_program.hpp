#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmopt {

// One PSD constraint F0 + sum_i x_i F_i >= 0 given as an affine slice of
// the decision vector.  Entries address the upper triangle (row <= col)
// and stand for the symmetric pair.
struct PsdBlockSlice {
  struct Term {
    int var;
    int row, col;
    double coeff;
  };
  struct Constant {
    int row, col;
    double value;
  };

  int size = 0;
  std::vector<Term> terms;
  std::vector<Constant> constants;

  void add_term(int var, int row, int col, double coeff) {
    if (row > col) std::swap(row, col);
    terms.push_back({var, row, col, coeff});
  }
  void add_constant(int row, int col, double value) {
    if (row > col) std::swap(row, col);
    constants.push_back({row, col, value});
  }

  Eigen::MatrixXd eval(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (const auto& t : constants) {
      m(t.row, t.col) += t.value;
      if (t.row != t.col) m(t.col, t.row) += t.value;
    }
    for (const auto& t : terms) {
      double v = t.coeff * x[t.var];
      m(t.row, t.col) += v;
      if (t.row != t.col) m(t.col, t.row) += v;
    }
    return m;
  }
};

// Linear equality row a'x = rhs with sparse coefficients.
struct LinearRow {
  std::vector<std::pair<int, double>> terms;
  double rhs = 0.0;
};

// Standard-form conic program over a free decision vector x:
//
//   min  c'x   s.t.   a_r' x = b_r,   F0_j + sum_i x_i F_{ji} >= 0 (psd).
//
// Decision coordinates not referenced by any PSD slice are plain free
// scalars.
class ConicProgram {
 public:
  explicit ConicProgram(int num_vars) : c_(Eigen::VectorXd::Zero(num_vars)) {
    if (num_vars < 1) throw std::invalid_argument("ConicProgram: need at least one variable");
  }

  int num_vars() const { return static_cast<int>(c_.size()); }
  const Eigen::VectorXd& objective() const { return c_; }
  Eigen::VectorXd& objective() { return c_; }
  void set_objective(int var, double coeff) {
    check_var(var);
    c_[var] = coeff;
  }
  void add_objective(int var, double coeff) {
    check_var(var);
    c_[var] += coeff;
  }

  int add_equality(LinearRow row) {
    for (const auto& [v, unused] : row.terms) check_var(v);
    equalities_.push_back(std::move(row));
    return static_cast<int>(equalities_.size()) - 1;
  }

  int add_block(PsdBlockSlice block) {
    if (block.size < 1) throw std::invalid_argument("ConicProgram: empty PSD block");
    for (const auto& t : block.terms) {
      check_var(t.var);
      if (t.col >= block.size) throw std::invalid_argument("ConicProgram: block entry out of range");
    }
    for (const auto& t : block.constants)
      if (t.col >= block.size) throw std::invalid_argument("ConicProgram: block constant out of range");
    blocks_.push_back(std::move(block));
    return static_cast<int>(blocks_.size()) - 1;
  }

  const std::vector<LinearRow>& equalities() const { return equalities_; }
  const std::vector<PsdBlockSlice>& blocks() const { return blocks_; }
  int num_equalities() const { return static_cast<int>(equalities_.size()); }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }

 private:
  void check_var(int var) const {
    if (var < 0 || var >= num_vars()) throw std::invalid_argument("ConicProgram: variable out of range");
  }

  Eigen::VectorXd c_;
  std::vector<LinearRow> equalities_;
  std::vector<PsdBlockSlice> blocks_;
};

enum class SolveStatus { optimal, infeasible, unbounded, inaccurate };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::inaccurate: return "inaccurate";
  }
  return "?";
}

// Solution of a conic program.  For feasible problems `primal` is the
// decision vector, `dual_eq` the equality multipliers and `dual_cone` the
// psd multiplier matrix of each block (the Gram data of the dual side).
// For infeasible problems (dual_eq, dual_cone) carry the Farkas ray; for
// unbounded ones (primal, primal_cone) carry the improving ray.
struct ConicSolution {
  SolveStatus status = SolveStatus::inaccurate;
  Eigen::VectorXd primal;
  Eigen::VectorXd dual_eq;
  std::vector<Eigen::MatrixXd> dual_cone;
  std::vector<Eigen::MatrixXd> primal_cone;
  double objective_primal = 0.0;
  double objective_dual = 0.0;
  double res_primal = 0.0;
  double res_dual = 0.0;
  double rel_gap = 0.0;
  int iterations = 0;
  std::string note;
};

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 200;
  int refine_steps = 1;
  bool verbose = false;
};

}  // namespace pmopt
