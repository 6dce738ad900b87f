#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmopt/matrix_polynomial.hpp"
#include "pmopt/polynomial.hpp"
#include "pmopt/sparsity.hpp"

namespace pmopt {

// A sparse polynomial optimization problem with one PMI block per clique:
//
//   min  f_1(x_{D1}) + ... + f_m(x_{Dm})
//   s.t. G_i(x_{Di}) >= 0 (psd),       i = 1..m
//        h_{i,j}(x_{Di}) = 0,          optional per clique
//
// Every f_i, G_i and h_{i,j} must be supported on its clique's variables.
class ProblemInstance {
 public:
  ProblemInstance(SparsityPattern pattern, std::vector<Polynomial> objectives,
                  std::vector<MatrixPolynomial> pmi_blocks,
                  std::vector<std::vector<Polynomial>> equalities = {})
      : pattern_(std::move(pattern)),
        objectives_(std::move(objectives)),
        pmi_blocks_(std::move(pmi_blocks)),
        equalities_(std::move(equalities)) {
    const int m = pattern_.num_cliques();
    if (static_cast<int>(objectives_.size()) != m)
      throw std::invalid_argument("ProblemInstance: one objective per clique required");
    if (static_cast<int>(pmi_blocks_.size()) != m)
      throw std::invalid_argument("ProblemInstance: one PMI block per clique required");
    if (equalities_.empty()) equalities_.resize(static_cast<std::size_t>(m));
    if (static_cast<int>(equalities_.size()) != m)
      throw std::invalid_argument("ProblemInstance: equality list size mismatch");

    int deg_f = 0;
    for (int i = 0; i < m; ++i) {
      const Clique& c = pattern_.cliques[static_cast<std::size_t>(i)];
      const auto& fi = objectives_[static_cast<std::size_t>(i)];
      const auto& gi = pmi_blocks_[static_cast<std::size_t>(i)];
      if (fi.num_vars() != pattern_.n || gi.num_vars() != pattern_.n)
        throw std::invalid_argument("ProblemInstance: ambient dimension mismatch");
      if (!fi.supported_on(c.vars))
        throw std::invalid_argument("ProblemInstance: objective " + std::to_string(i + 1) +
                                    " uses a variable outside its clique");
      if (!gi.supported_on(c.vars))
        throw std::invalid_argument("ProblemInstance: PMI block " + std::to_string(i + 1) +
                                    " uses a variable outside its clique");
      deg_f = std::max(deg_f, fi.degree());
      d_.push_back((gi.degree() + 1) / 2);
      for (const auto& h : equalities_[static_cast<std::size_t>(i)]) {
        if (h.num_vars() != pattern_.n || !h.supported_on(c.vars))
          throw std::invalid_argument("ProblemInstance: equality uses a variable outside its clique");
      }
    }

    k0_ = (deg_f + 1) / 2;
    for (int i = 0; i < m; ++i) {
      k0_ = std::max(k0_, d_[static_cast<std::size_t>(i)]);
      for (const auto& h : equalities_[static_cast<std::size_t>(i)])
        k0_ = std::max(k0_, (h.degree() + 1) / 2);
    }
    k0_ = std::max(k0_, 1);
  }

  const SparsityPattern& pattern() const { return pattern_; }
  int n() const { return pattern_.n; }
  int num_cliques() const { return pattern_.num_cliques(); }
  const std::vector<Polynomial>& objectives() const { return objectives_; }
  const std::vector<MatrixPolynomial>& pmi_blocks() const { return pmi_blocks_; }
  const std::vector<std::vector<Polynomial>>& equalities() const { return equalities_; }
  bool has_equalities() const {
    for (const auto& eqs : equalities_)
      if (!eqs.empty()) return true;
    return false;
  }

  // minimal relaxation order
  int k0() const { return k0_; }
  // d_i = ceil(deg(G_i)/2)
  int d(int clique) const { return d_.at(static_cast<std::size_t>(clique)); }
  int max_d() const {
    int d = 0;
    for (int v : d_) d = std::max(d, v);
    return d;
  }

  double objective_value(std::span<const double> u) const {
    double r = 0.0;
    for (const auto& f : objectives_) r += f.eval(u);
    return r;
  }

  double objective_value(const std::vector<double>& u) const {
    return objective_value(std::span<const double>(u));
  }

  // smallest PMI eigenvalue over all blocks; u is feasible (up to tol) iff
  // this is >= -tol and all equality residuals vanish
  double feasibility_margin(std::span<const double> u) const {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& g : pmi_blocks_) margin = std::min(margin, g.min_eig(u));
    return margin;
  }

  double feasibility_margin(const std::vector<double>& u) const {
    return feasibility_margin(std::span<const double>(u));
  }

  double max_equality_residual(std::span<const double> u) const {
    double r = 0.0;
    for (const auto& eqs : equalities_)
      for (const auto& h : eqs) r = std::max(r, std::abs(h.eval(u)));
    return r;
  }

 private:
  SparsityPattern pattern_;
  std::vector<Polynomial> objectives_;
  std::vector<MatrixPolynomial> pmi_blocks_;
  std::vector<std::vector<Polynomial>> equalities_;
  std::vector<int> d_;
  int k0_ = 1;
};

}  // namespace pmopt
