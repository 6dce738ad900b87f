#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <vector>

#include "pmopt/polynomial.hpp"

namespace pmopt {

// Symmetric matrix polynomial.  Only the upper triangle (s <= t) is stored;
// reads of (t, s) alias (s, t), so symmetry is structural.
class MatrixPolynomial {
 public:
  MatrixPolynomial() : size_(0), num_vars_(0) {}

  MatrixPolynomial(int size, int num_vars)
      : size_(size),
        num_vars_(num_vars),
        entries_(static_cast<std::size_t>(size) * (size + 1) / 2, Polynomial(num_vars)) {
    if (size < 1) throw std::invalid_argument("MatrixPolynomial: size must be >= 1");
  }

  static MatrixPolynomial identity(int size, int num_vars) {
    MatrixPolynomial m(size, num_vars);
    for (int i = 0; i < size; ++i) m.set(i, i, Polynomial::constant(num_vars, 1.0));
    return m;
  }

  static MatrixPolynomial from_scalar(const Polynomial& p) {
    MatrixPolynomial m(1, p.num_vars());
    m.set(0, 0, p);
    return m;
  }

  static MatrixPolynomial from_constant(const Eigen::MatrixXd& a, int num_vars) {
    if (a.rows() != a.cols()) throw std::invalid_argument("from_constant: not square");
    MatrixPolynomial m(static_cast<int>(a.rows()), num_vars);
    for (int s = 0; s < m.size(); ++s)
      for (int t = s; t < m.size(); ++t) {
        double v = 0.5 * (a(s, t) + a(t, s));
        if (v != 0.0) m.set(s, t, Polynomial::constant(num_vars, v));
      }
    return m;
  }

  static MatrixPolynomial block_diag(const std::vector<MatrixPolynomial>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("block_diag: empty");
    int n = blocks.front().num_vars();
    int size = 0;
    for (const auto& b : blocks) {
      if (b.num_vars() != n) throw std::invalid_argument("block_diag: num_vars mismatch");
      size += b.size();
    }
    MatrixPolynomial m(size, n);
    int off = 0;
    for (const auto& b : blocks) {
      for (int s = 0; s < b.size(); ++s)
        for (int t = s; t < b.size(); ++t) m.set(off + s, off + t, b(s, t));
      off += b.size();
    }
    return m;
  }

  int size() const { return size_; }
  int num_vars() const { return num_vars_; }

  const Polynomial& operator()(int s, int t) const {
    check(s, t);
    return entries_[index(std::min(s, t), std::max(s, t))];
  }

  void set(int s, int t, Polynomial p) {
    check(s, t);
    if (p.num_vars() != num_vars_) throw std::invalid_argument("MatrixPolynomial::set: num_vars mismatch");
    entries_[index(std::min(s, t), std::max(s, t))] = std::move(p);
  }

  int degree() const {
    int d = 0;
    for (const auto& p : entries_) d = std::max(d, p.degree());
    return d;
  }

  bool is_constant() const {
    for (const auto& p : entries_)
      if (p.degree() > 0) return false;
    return true;
  }

  MatrixPolynomial diff(int var) const {
    MatrixPolynomial out(size_, num_vars_);
    for (int s = 0; s < size_; ++s)
      for (int t = s; t < size_; ++t) out.set(s, t, (*this)(s, t).diff(var));
    return out;
  }

  Eigen::MatrixXd eval(std::span<const double> u) const {
    Eigen::MatrixXd m(size_, size_);
    for (int s = 0; s < size_; ++s)
      for (int t = s; t < size_; ++t) {
        double v = (*this)(s, t).eval(u);
        m(s, t) = v;
        m(t, s) = v;
      }
    return m;
  }

  Eigen::MatrixXd eval(const std::vector<double>& u) const { return eval(std::span<const double>(u)); }

  double min_eig(std::span<const double> u) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eval(u), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  double min_eig(const std::vector<double>& u) const { return min_eig(std::span<const double>(u)); }

  bool supported_on(std::span<const int> vars) const {
    for (const auto& p : entries_)
      if (!p.supported_on(vars)) return false;
    return true;
  }

  MatrixPolynomial remapped(std::span<const int> var_map, int new_num_vars) const {
    MatrixPolynomial out(size_, new_num_vars);
    for (int s = 0; s < size_; ++s)
      for (int t = s; t < size_; ++t) out.set(s, t, (*this)(s, t).remapped(var_map, new_num_vars));
    return out;
  }

  bool operator==(const MatrixPolynomial& other) const {
    return size_ == other.size_ && num_vars_ == other.num_vars_ && entries_ == other.entries_;
  }

 private:
  void check(int s, int t) const {
    if (s < 0 || t < 0 || s >= size_ || t >= size_)
      throw std::invalid_argument("MatrixPolynomial: index out of range");
  }

  // upper-triangle row-major offset for s <= t
  std::size_t index(int s, int t) const {
    return static_cast<std::size_t>(s) * size_ - static_cast<std::size_t>(s) * (s - 1) / 2 +
           static_cast<std::size_t>(t - s);
  }

  int size_;
  int num_vars_;
  std::vector<Polynomial> entries_;
};

// gradient as a vector of partials over all ambient variables
inline std::vector<Polynomial> gradient(const Polynomial& p) {
  std::vector<Polynomial> g;
  g.reserve(static_cast<std::size_t>(p.num_vars()));
  for (int v = 1; v <= p.num_vars(); ++v) g.push_back(p.diff(v));
  return g;
}

inline MatrixPolynomial hessian(const Polynomial& p) {
  const int n = p.num_vars();
  MatrixPolynomial h(n, n);
  for (int s = 1; s <= n; ++s) {
    Polynomial ds = p.diff(s);
    for (int t = s; t <= n; ++t) h.set(s - 1, t - 1, ds.diff(t));
  }
  return h;
}

}  // namespace pmopt
