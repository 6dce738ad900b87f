#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmopt/exponent.hpp"

namespace pmopt {

// Coefficients below this magnitude are dropped when normalizing after
// arithmetic.
inline constexpr double kCoeffPruneTol = 1e-14;

// Sparse multivariate polynomial with double coefficients over an ambient
// variable set x1..xn.  Terms are kept in graded lexicographic order and
// never store an exactly-zero coefficient.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, double, GrlexLess>;

  explicit Polynomial(int num_vars = 0) : num_vars_(num_vars) {
    if (num_vars < 0) throw std::invalid_argument("Polynomial: negative num_vars");
  }

  static Polynomial zero(int num_vars) { return Polynomial(num_vars); }

  static Polynomial constant(int num_vars, double c) {
    Polynomial p(num_vars);
    p.add_term(Exponent{}, c);
    return p;
  }

  static Polynomial variable(int num_vars, int var) {
    if (var < 1 || var > num_vars) throw std::invalid_argument("Polynomial: variable out of range");
    Polynomial p(num_vars);
    p.add_term(Exponent::unit(var), 1.0);
    return p;
  }

  static Polynomial monomial(int num_vars, const Exponent& e, double c) {
    Polynomial p(num_vars);
    p.add_term(e, c);
    return p;
  }

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }

  // degree of the zero polynomial is 0 by convention
  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
    return d;
  }

  double coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
  }

  void add_term(const Exponent& e, double c) {
    if (e.max_var() > num_vars_) throw std::invalid_argument("Polynomial: term variable out of range");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kCoeffPruneTol) terms_.erase(it);
  }

  double eval(std::span<const double> u) const {
    if (static_cast<int>(u.size()) != num_vars_)
      throw std::invalid_argument("Polynomial::eval: dimension mismatch");
    double r = 0.0;
    for (const auto& [e, c] : terms_) r += c * e.eval(u);
    return r;
  }

  double eval(const std::vector<double>& u) const { return eval(std::span<const double>(u)); }

  Polynomial diff(int var) const {
    if (var < 1 || var > num_vars_) throw std::invalid_argument("Polynomial::diff: index out of range");
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_) {
      int p = e.power(var);
      if (p == 0) continue;
      std::vector<std::pair<int, int>> powers = e.powers();
      for (auto& vp : powers)
        if (vp.first == var) vp.second -= 1;
      out.add_term(Exponent(std::move(powers)), c * p);
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& other) {
    check_same_vars(other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    check_same_vars(other);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
  }

  Polynomial operator+(const Polynomial& other) const {
    Polynomial out = *this;
    out += other;
    return out;
  }

  Polynomial operator-(const Polynomial& other) const {
    Polynomial out = *this;
    out -= other;
    return out;
  }

  Polynomial operator-() const { return scaled(-1.0); }

  Polynomial scaled(double s) const {
    Polynomial out(num_vars_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }

  Polynomial operator*(const Polynomial& other) const {
    check_same_vars(other);
    Polynomial out(num_vars_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : other.terms_) out.add_term(ea.times(eb), ca * cb);
    return out;
  }

  Polynomial operator*(double s) const { return scaled(s); }

  // substitute x <- x - c
  Polynomial compose_shift(std::span<const double> c) const {
    if (static_cast<int>(c.size()) != num_vars_)
      throw std::invalid_argument("compose_shift: dimension mismatch");
    Polynomial out(num_vars_);
    for (const auto& [e, coef] : terms_) {
      // expand prod_v (x_v - c_v)^{p_v} one variable at a time
      std::vector<std::pair<Exponent, double>> partial{{Exponent{}, coef}};
      for (const auto& [v, p] : e.powers()) {
        double cv = c[static_cast<std::size_t>(v - 1)];
        std::vector<std::pair<Exponent, double>> next;
        for (const auto& [pe, pc] : partial) {
          // (x_v - cv)^p = sum_j C(p,j) x_v^j (-cv)^{p-j}
          double binom = 1.0;
          for (int j = p; j >= 0; --j) {
            double w = pc * binom * std::pow(-cv, p - j);
            if (w != 0.0) next.emplace_back(pe.times(Exponent::unit(v, j)), w);
            if (j > 0) binom = binom * j / static_cast<double>(p - j + 1);
          }
        }
        partial = std::move(next);
      }
      for (const auto& [pe, pc] : partial) out.add_term(pe, pc);
    }
    return out;
  }

  Polynomial compose_shift(const std::vector<double>& c) const {
    return compose_shift(std::span<const double>(c));
  }

  bool supported_on(std::span<const int> vars) const {
    for (const auto& [e, c] : terms_)
      if (!e.supported_on(vars)) return false;
    return true;
  }

  // validated copy; throws if the polynomial uses a variable outside vars
  Polynomial restricted_to(std::span<const int> vars) const {
    if (!supported_on(vars)) throw std::invalid_argument("restrict_support: variable outside clique");
    return *this;
  }

  // relabel variables: var_map[old-1] = new index (1-based), into ambient new_num_vars
  Polynomial remapped(std::span<const int> var_map, int new_num_vars) const {
    if (static_cast<int>(var_map.size()) != num_vars_)
      throw std::invalid_argument("remapped: map size mismatch");
    Polynomial out(new_num_vars);
    for (const auto& [e, c] : terms_) {
      std::vector<std::pair<int, int>> powers;
      powers.reserve(e.powers().size());
      for (const auto& [v, p] : e.powers()) powers.emplace_back(var_map[static_cast<std::size_t>(v - 1)], p);
      out.add_term(Exponent(std::move(powers)), c);
    }
    return out;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6g", std::abs(c));
      if (s.empty()) {
        s += (c < 0 ? "-" : "");
      } else {
        s += (c < 0 ? " - " : " + ");
      }
      s += buf;
      if (!e.is_constant()) s += "*" + e.to_string();
    }
    return s;
  }

  bool operator==(const Polynomial& other) const {
    return num_vars_ == other.num_vars_ && terms_ == other.terms_;
  }

 private:
  void check_same_vars(const Polynomial& other) const {
    if (num_vars_ != other.num_vars_)
      throw std::invalid_argument("Polynomial: ambient dimension mismatch");
  }

  int num_vars_;
  TermMap terms_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p.scaled(s); }

}  // namespace pmopt
