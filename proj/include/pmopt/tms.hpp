#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <stdexcept>

#include "pmopt/index_sets.hpp"
#include "pmopt/matrix_polynomial.hpp"
#include "pmopt/polynomial.hpp"

namespace pmopt {

// Truncated multi-sequence: pseudo-moment values over a UnionIndex.  The
// value at the zero power is the total mass (1 for relaxation-feasible y).
class Tms {
 public:
  Tms(std::shared_ptr<const UnionIndex> index, Eigen::VectorXd values)
      : index_(std::move(index)), values_(std::move(values)) {
    if (!index_) throw std::invalid_argument("Tms: null index");
    if (values_.size() != index_->size()) throw std::invalid_argument("Tms: value size mismatch");
  }

  const UnionIndex& index() const { return *index_; }
  std::shared_ptr<const UnionIndex> index_ptr() const { return index_; }
  const Eigen::VectorXd& values() const { return values_; }

  double operator[](const Exponent& e) const { return values_[index_->position(e)]; }
  double mass() const { return (*this)[Exponent{}]; }

 private:
  std::shared_ptr<const UnionIndex> index_;
  Eigen::VectorXd values_;
};

// Read-only per-clique view of a tms.  Views share the underlying vector,
// so powers shared between overlapping cliques agree by construction.
class CliqueMomentView {
 public:
  CliqueMomentView(const Tms& tms, int clique) : tms_(&tms), clique_(clique) {
    if (clique < 0 || clique >= tms.index().pattern().num_cliques())
      throw std::invalid_argument("CliqueMomentView: clique out of range");
  }

  const Clique& clique() const { return tms_->index().pattern().cliques[static_cast<std::size_t>(clique_)]; }
  int clique_id() const { return clique_; }
  int max_degree() const { return 2 * tms_->index().k(); }
  const Tms& tms() const { return *tms_; }

  double value(const Exponent& e) const {
    if (e.degree() > max_degree())
      throw std::out_of_range("CliqueMomentView: degree beyond truncation");
    if (!e.supported_on(clique().vars))
      throw std::out_of_range("CliqueMomentView: power outside clique support");
    return (*tms_)[e];
  }

 private:
  const Tms* tms_;
  int clique_;
};

// Riesz functional <p, y_D> = sum_a p_a y_a
inline double riesz(const Polynomial& p, const CliqueMomentView& y) {
  double r = 0.0;
  for (const auto& [e, c] : p.terms()) r += c * y.value(e);
  return r;
}

// tms of the Dirac measure at u: y_a = u^a
inline Tms dirac_tms(std::span<const double> u, std::shared_ptr<const UnionIndex> index) {
  if (static_cast<int>(u.size()) != index->pattern().n)
    throw std::invalid_argument("dirac_tms: dimension mismatch");
  Eigen::VectorXd v(index->size());
  for (int i = 0; i < index->size(); ++i) v[i] = (*index)[i].eval(u);
  return Tms(std::move(index), std::move(v));
}

inline Tms dirac_tms(const std::vector<double>& u, std::shared_ptr<const UnionIndex> index) {
  return dirac_tms(std::span<const double>(u), std::move(index));
}

// Moment matrix M^{(t)}_D[y]: rows and columns indexed by N^D_t in graded
// lexicographic order, entry (a, b) = y_{a+b}.
inline Eigen::MatrixXd moment_matrix(const CliqueMomentView& y, int t) {
  if (2 * t > y.max_degree()) throw std::invalid_argument("moment_matrix: insufficient degree");
  PowerIndexSet basis(y.clique(), t);
  Eigen::MatrixXd m(basis.size(), basis.size());
  for (int a = 0; a < basis.size(); ++a)
    for (int b = a; b < basis.size(); ++b) {
      double v = y.value(basis[a].times(basis[b]));
      m(a, b) = v;
      m(b, a) = v;
    }
  return m;
}

// Block localizing matrix L^{(k)}_G[y]: an l-by-l grid of blocks, one per
// entry of G; block (s,t) applies the Riesz functional to
// (G)_st * [x]_{k2} [x]_{k2}^T with k2 = floor(k - deg(G)/2).
inline Eigen::MatrixXd localizing_matrix(const MatrixPolynomial& g, const CliqueMomentView& y, int k) {
  if (g.degree() > 2 * k) throw std::invalid_argument("localizing_matrix: degree overflow");
  if (2 * k > y.max_degree()) throw std::invalid_argument("localizing_matrix: order beyond truncation");
  const int k2 = (2 * k - g.degree()) / 2;
  PowerIndexSet basis(y.clique(), k2);
  const int nb = basis.size();
  const int l = g.size();
  Eigen::MatrixXd m(l * nb, l * nb);
  for (int s = 0; s < l; ++s)
    for (int t = s; t < l; ++t) {
      const Polynomial& p = g(s, t);
      for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) {
          if (s == t && b < a) continue;
          Exponent shift = basis[a].times(basis[b]);
          double v = 0.0;
          for (const auto& [e, c] : p.terms()) v += c * y.value(e.times(shift));
          m(s * nb + a, t * nb + b) = v;
          m(t * nb + b, s * nb + a) = v;
        }
    }
  return m;
}

// scalar localizing matrix (l = 1)
inline Eigen::MatrixXd localizing_matrix(const Polynomial& p, const CliqueMomentView& y, int k) {
  return localizing_matrix(MatrixPolynomial::from_scalar(p), y, k);
}

// G[y_D]: the matrix of Riesz values of the entries of G; equals the
// principal submatrix of the localizing matrix formed by the (1,1) entry
// of each block.
inline Eigen::MatrixXd gi_of_y(const MatrixPolynomial& g, const CliqueMomentView& y) {
  Eigen::MatrixXd m(g.size(), g.size());
  for (int s = 0; s < g.size(); ++s)
    for (int t = s; t < g.size(); ++t) {
      double v = riesz(g(s, t), y);
      m(s, t) = v;
      m(t, s) = v;
    }
  return m;
}

}  // namespace pmopt
