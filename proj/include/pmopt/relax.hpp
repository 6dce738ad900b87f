#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pmopt/conic_program.hpp"
#include "pmopt/conic_solver.hpp"
#include "pmopt/problem.hpp"
#include "pmopt/tms.hpp"

namespace pmopt {

// Where each structural piece of a moment relaxation lives inside the
// assembled conic program: the decision vector is y over the union index,
// one PSD block realizes each clique moment matrix and each clique
// localizing matrix, and tagged equality rows realize y_0 = 1 and the
// localizing rows of declared equality polynomials.
struct VariableMap {
  enum class Kind { sparse_moment, dense_moment };

  Kind kind = Kind::sparse_moment;
  int k = 0;
  std::shared_ptr<const UnionIndex> index;
  std::vector<int> moment_block;       // per clique (dense: single entry)
  std::vector<int> localizing_block;   // per clique
  std::vector<int> moment_basis_size;  // rows of each moment matrix
  std::vector<int> loc_basis_size;     // per-entry basis size of each localizing block
  int y0_row = -1;
  // per clique, per equality polynomial: [first_row, last_row) and the
  // multiplier powers in order
  struct EqualityRows {
    int clique = 0;
    int poly = 0;
    int first_row = 0;
    int last_row = 0;
  };
  std::vector<EqualityRows> equality_rows;
};

struct RelaxationResult {
  SolveStatus status = SolveStatus::inaccurate;
  double bound = 0.0;
  std::shared_ptr<Tms> tms;                  // recovered pseudo-moments (when solved)
  Eigen::VectorXd dual_eq;                   // per equality row
  std::vector<Eigen::MatrixXd> dual_blocks;  // per PSD block, program order
  int k = 0;
  int iterations = 0;
  double res_primal = 0.0;
  double res_dual = 0.0;
  double rel_gap = 0.0;
  std::string note;
};

struct MomentBuild {
  ConicProgram program;
  VariableMap map;
};

namespace detail {

inline MomentBuild build_moment_relaxation(const ProblemInstance& problem, int k, bool dense) {
  if (k < problem.k0())
    throw std::invalid_argument("moment relaxation: k below the minimal order k0");

  auto index = std::make_shared<const UnionIndex>(problem.pattern(), k, dense);
  const int m = problem.num_cliques();
  ConicProgram prog(index->size());
  VariableMap map;
  map.kind = dense ? VariableMap::Kind::dense_moment : VariableMap::Kind::sparse_moment;
  map.k = k;
  map.index = index;

  // objective sum_i <f_i, y_Di>; shared powers accumulate into one coordinate
  for (const auto& f : problem.objectives())
    for (const auto& [e, c] : f.terms()) prog.add_objective(index->position(e), c);

  // y_0 = 1
  {
    LinearRow row;
    row.terms.emplace_back(index->position(Exponent{}), 1.0);
    row.rhs = 1.0;
    map.y0_row = prog.add_equality(row);
  }

  // localizing rows of equality polynomials: <h * x^b, y> = 0
  for (int i = 0; i < m; ++i) {
    const Clique& clique = problem.pattern().cliques[static_cast<std::size_t>(i)];
    const auto& eqs = problem.equalities()[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < eqs.size(); ++j) {
      const Polynomial& h = eqs[j];
      int budget = 2 * k - h.degree();
      PowerIndexSet mults(dense ? Clique(0, SparsityPattern::single(problem.n()).cliques[0].vars)
                                : clique,
                          budget);
      VariableMap::EqualityRows rows;
      rows.clique = i;
      rows.poly = static_cast<int>(j);
      rows.first_row = prog.num_equalities();
      for (int b = 0; b < mults.size(); ++b) {
        LinearRow row;
        std::map<int, double> acc;
        for (const auto& [e, c] : h.terms()) acc[index->position(e.times(mults[b]))] += c;
        for (const auto& [pos, c] : acc)
          if (c != 0.0) row.terms.emplace_back(pos, c);
        row.rhs = 0.0;
        prog.add_equality(row);
      }
      rows.last_row = prog.num_equalities();
      map.equality_rows.push_back(rows);
    }
  }

  // moment matrix blocks
  const Clique full = dense ? Clique(0, SparsityPattern::single(problem.n()).cliques[0].vars)
                            : Clique(0, {1});
  if (dense) {
    PowerIndexSet basis(full, k);
    PsdBlockSlice blk;
    blk.size = basis.size();
    for (int a = 0; a < basis.size(); ++a)
      for (int b = a; b < basis.size(); ++b)
        blk.add_term(index->position(basis[a].times(basis[b])), a, b, 1.0);
    int id = prog.add_block(std::move(blk));
    map.moment_block.assign(static_cast<std::size_t>(m), id);
    map.moment_basis_size.assign(static_cast<std::size_t>(m), basis.size());
  } else {
    for (int i = 0; i < m; ++i) {
      const Clique& clique = problem.pattern().cliques[static_cast<std::size_t>(i)];
      PowerIndexSet basis(clique, k);
      PsdBlockSlice blk;
      blk.size = basis.size();
      for (int a = 0; a < basis.size(); ++a)
        for (int b = a; b < basis.size(); ++b)
          blk.add_term(index->position(basis[a].times(basis[b])), a, b, 1.0);
      map.moment_block.push_back(prog.add_block(std::move(blk)));
      map.moment_basis_size.push_back(basis.size());
    }
  }

  // localizing blocks, one per clique PMI
  for (int i = 0; i < m; ++i) {
    const Clique& clique = problem.pattern().cliques[static_cast<std::size_t>(i)];
    const MatrixPolynomial& g = problem.pmi_blocks()[static_cast<std::size_t>(i)];
    const int k2 = (2 * k - g.degree()) / 2;
    PowerIndexSet basis(dense ? full : clique, k2);
    const int nb = basis.size();
    const int l = g.size();
    PsdBlockSlice blk;
    blk.size = l * nb;
    for (int s = 0; s < l; ++s)
      for (int t = s; t < l; ++t) {
        const Polynomial& p = g(s, t);
        if (p.is_zero()) continue;
        for (int a = 0; a < nb; ++a)
          for (int b = 0; b < nb; ++b) {
            if (s == t && b < a) continue;
            int row = s * nb + a, col = t * nb + b;
            if (row > col) continue;  // keep one representative of the symmetric pair
            Exponent shift = basis[a].times(basis[b]);
            for (const auto& [e, c] : p.terms())
              blk.add_term(index->position(e.times(shift)), row, col, c);
          }
      }
    map.localizing_block.push_back(prog.add_block(std::move(blk)));
    map.loc_basis_size.push_back(nb);
  }

  return {std::move(prog), std::move(map)};
}

}  // namespace detail

// order-k sparse moment relaxation over y in R^{U_k}
inline MomentBuild build_sparse_moment(const ProblemInstance& problem, int k) {
  return detail::build_moment_relaxation(problem, k, false);
}

// order-k dense moment relaxation over y in R^{N^n_{2k}}
inline MomentBuild build_dense_moment(const ProblemInstance& problem, int k) {
  return detail::build_moment_relaxation(problem, k, true);
}

// map a conic solution back to moment data
inline RelaxationResult recover_result(const MomentBuild& build, const ConicSolution& sol) {
  RelaxationResult out;
  out.status = sol.status;
  out.k = build.map.k;
  out.iterations = sol.iterations;
  out.res_primal = sol.res_primal;
  out.res_dual = sol.res_dual;
  out.rel_gap = sol.rel_gap;
  out.note = sol.note;
  if (sol.status == SolveStatus::optimal || sol.status == SolveStatus::inaccurate) {
    out.bound = sol.objective_primal;
    out.tms = std::make_shared<Tms>(build.map.index, sol.primal);
    out.dual_eq = sol.dual_eq;
    out.dual_blocks = sol.dual_cone;
  }
  return out;
}

inline RelaxationResult solve_moment_relaxation(const MomentBuild& build,
                                                const SolverOptions& options = {}) {
  return recover_result(build, solve_conic(build.program, options));
}

}  // namespace pmopt
